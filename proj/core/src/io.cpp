#include "treeram/io.hpp"

#include <fstream>
#include <sstream>

#include "treeram/errors.hpp"

namespace treeram {

namespace {

// Strips comments/whitespace; returns false for blank lines.
bool payload(const std::string& raw, std::string& out) {
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return false;
    std::size_t end = line.find_last_not_of(" \t\r");
    out = line.substr(begin, end - begin + 1);
    return true;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    return out;
}

} // namespace

Graph read_graph(std::istream& in) {
    std::string raw, line;
    int lineno = 0;
    long long n = -1;
    EdgeList edges;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!payload(raw, line)) continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n) || n < 0 || !(fields >> std::ws).eof())
                throw ParseError("malformed vertex count", lineno);
            continue;
        }
        long long u, v;
        if (!(fields >> u >> v) || !(fields >> std::ws).eof())
            throw ParseError("malformed edge line", lineno);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("endpoint out of range", lineno);
        if (u == v) throw ParseError("self-loop", lineno);
        auto lo = static_cast<Vertex>(std::min(u, v));
        auto hi = static_cast<Vertex>(std::max(u, v));
        edges.emplace_back(lo, hi);
    }
    if (n < 0) throw ParseError("missing vertex count");
    {
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError("duplicate edge");
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph read_graph_file(const std::string& path) {
    auto in = open_input(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

void write_graph_file(const std::string& path, const Graph& g) {
    auto out = open_output(path);
    write_graph(out, g);
}

EdgeColoring read_coloring(std::istream& in, const Graph& g) {
    std::string raw, line;
    int lineno = 0;
    EdgeColoring coloring;
    coloring.colors.assign(g.edge_count(), 0);
    std::vector<bool> seen(g.edge_count(), false);
    std::uint32_t max_color = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!payload(raw, line)) continue;
        std::istringstream fields(line);
        long long u, v, c;
        if (!(fields >> u >> v >> c) || !(fields >> std::ws).eof())
            throw ParseError("malformed coloring line", lineno);
        if (u < 0 || v < 0 || u >= static_cast<long long>(g.vertex_count()) ||
            v >= static_cast<long long>(g.vertex_count()))
            throw ParseError("endpoint out of range", lineno);
        std::size_t index = g.edge_index(static_cast<Vertex>(u), static_cast<Vertex>(v));
        if (index >= g.edge_count()) throw ParseError("edge not in graph", lineno);
        if (seen[index]) throw ParseError("edge colored twice", lineno);
        if (c < 0 || c > 255) throw ParseError("color out of range", lineno);
        seen[index] = true;
        coloring.colors[index] = static_cast<std::uint8_t>(c);
        max_color = std::max(max_color, static_cast<std::uint32_t>(c));
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw ParseError("edge {" + std::to_string(g.edges()[i].first) + "," +
                                       std::to_string(g.edges()[i].second) + "} is uncolored");
    coloring.k = max_color + 1;
    return coloring;
}

EdgeColoring read_coloring_file(const std::string& path, const Graph& g) {
    auto in = open_input(path);
    return read_coloring(in, g);
}

void write_coloring(std::ostream& out, const Graph& g, const EdgeColoring& coloring) {
    if (!coloring.valid_for(g)) throw InputError("write_coloring: coloring does not match graph");
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        out << g.edges()[i].first << " " << g.edges()[i].second << " "
            << static_cast<int>(coloring.colors[i]) << "\n";
}

void write_coloring_file(const std::string& path, const Graph& g, const EdgeColoring& coloring) {
    auto out = open_output(path);
    write_coloring(out, g, coloring);
}

std::string read_text_file(const std::string& path) {
    auto in = open_input(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_output(path);
    out << content;
}

} // namespace treeram
