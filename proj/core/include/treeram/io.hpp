#ifndef TREERAM_IO_HPP
#define TREERAM_IO_HPP

#include <iosfwd>
#include <string>

#include "treeram/coloring.hpp"
#include "treeram/graph.hpp"

namespace treeram {

// Edge-list text format: first non-comment line is the vertex count, then one
// "u v" pair per line, 0-indexed. '#' starts a comment, blank lines are
// skipped. Parse failures throw ParseError naming the line.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Coloring file: one "u v c" line per edge of the companion graph. Every edge
// must be colored exactly once.
EdgeColoring read_coloring(std::istream& in, const Graph& g);
EdgeColoring read_coloring_file(const std::string& path, const Graph& g);
void write_coloring(std::ostream& out, const Graph& g, const EdgeColoring& coloring);
void write_coloring_file(const std::string& path, const Graph& g, const EdgeColoring& coloring);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace treeram

#endif
