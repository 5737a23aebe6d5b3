#pragma once

// Text formats and the compact graph/code spec strings used by the CLI.
//
//   bipartite graph   "bipartite n d", then n lines of d "u:j" pairs
//   regular graph     "regular n d", then n lines of d neighbor ids
//   generator matrix  one row of '0'/'1' per line
//   received word     one line over {'0','1','?'}, indexed by edge id
//   list description  "list N a", the line of ell, then a lines (columns of L)
//   explicit pattern  whitespace-separated edge ids
//
// Malformed input raises std::invalid_argument.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "eec/erased_word.hpp"
#include "eec/expander_code.hpp"
#include "eec/graph.hpp"
#include "eec/inner_code.hpp"

namespace eec::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string format_bipartite(const BipartiteGraph& g);
BipartiteGraph parse_bipartite(std::istream& in);
std::string format_regular(const RegularGraph& g);
RegularGraph parse_regular(std::istream& in);

std::string format_generator(const LinearCode& code);
LinearCode parse_generator(std::istream& in, std::string name = "file");

std::string format_word(const ErasedWord& w);
std::string format_word(const BitVector& w);
ErasedWord parse_word(const std::string& text);

std::string format_list(const ListDescription& list);
ListDescription parse_list(std::istream& in);

std::vector<std::uint32_t> parse_pattern(std::istream& in);

/// A graph built from a spec; `base` is set when the bipartite graph is the
/// double cover of a regular graph.
struct GraphInstance {
  std::optional<RegularGraph> base;
  BipartiteGraph graph;
  std::string spec;
};

/// complete:N, complete_with_loops:N, cycle:N, random_regular:N:D,
/// complete_bipartite:N or file:PATH. Bracket forms such as
/// random_regular[64,8] are accepted too. Base graphs are double-covered.
GraphInstance make_graph(const std::string& spec, std::uint64_t seed);

/// parity:D, repetition:D, hamming74, full:D, random:D:K or file:PATH.
LinearCode make_code(const std::string& spec, std::uint64_t seed);

}  // namespace eec::io
