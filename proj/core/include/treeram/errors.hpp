#ifndef TREERAM_ERRORS_HPP
#define TREERAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace treeram {

// Malformed input file. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A caller violated an operation's contract (bad arguments, inconsistent inputs).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An exhaustive mode was requested on an instance above its size guard.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A bounded search ran out of budget before producing a certified result.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller-supplied bound (e.g. a treewidth profile) was violated mid-run.
class CertificateFailure : public std::runtime_error {
public:
    CertificateFailure(const std::string& message, std::size_t subgraph_size = 0)
        : std::runtime_error(message), subgraph_size_(subgraph_size) {}
    std::size_t subgraph_size() const { return subgraph_size_; }

private:
    std::size_t subgraph_size_;
};

} // namespace treeram

#endif
