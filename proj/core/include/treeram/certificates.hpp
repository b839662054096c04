#ifndef TREERAM_CERTIFICATES_HPP
#define TREERAM_CERTIFICATES_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace treeram {

struct Violation {
    std::string code;
    std::string message;
};

// Verifier output: violations are report entries, never exceptions.
struct CertificateReport {
    bool pass = true;
    std::vector<Violation> violations;
    nlohmann::json metrics = nlohmann::json::object();

    void add(const std::string& code, const std::string& message) {
        pass = false;
        violations.push_back({code, message});
    }
    bool has(const std::string& code) const {
        for (const auto& v : violations)
            if (v.code == code) return true;
        return false;
    }
};

inline nlohmann::json to_json(const CertificateReport& report) {
    nlohmann::json out;
    out["pass"] = report.pass;
    auto vs = nlohmann::json::array();
    for (const auto& v : report.violations) vs.push_back({{"code", v.code}, {"message", v.message}});
    out["violations"] = vs;
    out["metrics"] = report.metrics;
    return out;
}

} // namespace treeram

#endif
