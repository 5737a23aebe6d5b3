#include "eec/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eec::io {

namespace {

std::size_t to_count(const std::string& token, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a non-negative integer for " + what + ", got '" + token + "'");
  }
  if (pos != token.size() || token.empty() || token[0] == '-')
    throw std::invalid_argument("expected a non-negative integer for " + what + ", got '" + token + "'");
  return static_cast<std::size_t>(v);
}

void expect_header(std::istream& in, const std::string& keyword, std::size_t& a, std::size_t& b) {
  std::string word;
  if (!(in >> word) || word != keyword) throw std::invalid_argument("expected header '" + keyword + "'");
  std::string ta, tb;
  if (!(in >> ta >> tb)) throw std::invalid_argument("truncated '" + keyword + "' header");
  a = to_count(ta, keyword + " header");
  b = to_count(tb, keyword + " header");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// "kind[a,b]" -> "kind:a:b"; "file:" paths are left alone.
std::vector<std::string> spec_parts(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return {"file", spec.substr(5)};
  std::string s = spec;
  std::replace(s.begin(), s.end(), '[', ':');
  std::replace(s.begin(), s.end(), ',', ':');
  s.erase(std::remove(s.begin(), s.end(), ']'), s.end());
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return split(s, ':');
}

void expect_arity(const std::vector<std::string>& parts, std::size_t lo, std::size_t hi, const std::string& spec) {
  const std::size_t args = parts.size() - 1;
  if (args < lo || args > hi) throw std::invalid_argument("wrong number of parameters in spec '" + spec + "'");
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string format_bipartite(const BipartiteGraph& g) {
  std::ostringstream out;
  out << "bipartite " << g.side_size() << ' ' << g.degree() << '\n';
  for (std::size_t v = 0; v < g.side_size(); ++v) {
    for (std::size_t i = 0; i < g.degree(); ++i) {
      const Port p = g.left_port(v, i);
      out << (i ? " " : "") << p.vertex << ':' << p.slot;
    }
    out << '\n';
  }
  return out.str();
}

BipartiteGraph parse_bipartite(std::istream& in) {
  std::size_t n = 0, d = 0;
  expect_header(in, "bipartite", n, d);
  std::vector<Port> ports;
  ports.reserve(n * d);
  for (std::size_t k = 0; k < n * d; ++k) {
    std::string token;
    if (!(in >> token)) throw std::invalid_argument("bipartite graph: expected " + std::to_string(n * d) + " ports");
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bipartite graph: malformed port '" + token + "'");
    const auto u = to_count(token.substr(0, colon), "port vertex");
    const auto j = to_count(token.substr(colon + 1), "port slot");
    ports.push_back(Port{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(j)});
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("bipartite graph: trailing data '" + extra + "'");
  return BipartiteGraph(n, d, std::move(ports));
}

std::string format_regular(const RegularGraph& g) {
  std::ostringstream out;
  out << "regular " << g.vertex_count() << ' ' << g.degree() << '\n';
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) out << (i ? " " : "") << nb[i];
    out << '\n';
  }
  return out.str();
}

RegularGraph parse_regular(std::istream& in) {
  std::size_t n = 0, d = 0;
  expect_header(in, "regular", n, d);
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < d; ++i) {
      std::string token;
      if (!(in >> token)) throw std::invalid_argument("regular graph: truncated adjacency");
      adj[v].push_back(static_cast<std::uint32_t>(to_count(token, "neighbor id")));
    }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("regular graph: trailing data '" + extra + "'");
  bool loops = false;
  for (std::size_t v = 0; v < n; ++v)
    for (auto u : adj[v]) loops = loops || u == v;
  return RegularGraph(n, d, std::move(adj), loops);
}

std::string format_generator(const LinearCode& code) {
  std::string out;
  for (const auto& row : code.generator().row_vectors()) out += row.to_string() + '\n';
  return out;
}

LinearCode parse_generator(std::istream& in, std::string name) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (!line.empty()) rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("generator matrix: no rows");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw std::invalid_argument("generator matrix: rows differ in length");
  return LinearCode::from_generator(BitMatrix::from_strings(rows), std::move(name));
}

std::string format_word(const ErasedWord& w) { return w.to_string() + '\n'; }
std::string format_word(const BitVector& w) { return w.to_string() + '\n'; }

ErasedWord parse_word(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return ErasedWord::from_string(s);
}

std::string format_list(const ListDescription& list) {
  std::ostringstream out;
  out << "list " << list.length() << ' ' << list.a() << '\n' << list.ell.to_string() << '\n';
  for (const auto& col : list.L.columns()) out << col.to_string() << '\n';
  return out.str();
}

ListDescription parse_list(std::istream& in) {
  std::size_t n = 0, a = 0;
  expect_header(in, "list", n, a);
  std::string token;
  if (!(in >> token)) throw std::invalid_argument("list: missing ell");
  BitVector ell = BitVector::from_string(token);
  if (ell.size() != n) throw std::invalid_argument("list: ell has the wrong length");
  std::vector<BitVector> cols;
  for (std::size_t j = 0; j < a; ++j) {
    if (!(in >> token)) throw std::invalid_argument("list: missing column");
    cols.push_back(BitVector::from_string(token));
    if (cols.back().size() != n) throw std::invalid_argument("list: column has the wrong length");
  }
  ListDescription out{BitMatrix::from_columns(cols, n), std::move(ell)};
  // Validates independence of the columns.
  (void)out.to_affine();
  return out;
}

std::vector<std::uint32_t> parse_pattern(std::istream& in) {
  std::vector<std::uint32_t> ids;
  std::string token;
  while (in >> token) ids.push_back(static_cast<std::uint32_t>(to_count(token, "edge id")));
  return ids;
}

GraphInstance make_graph(const std::string& spec, std::uint64_t seed) {
  const auto parts = spec_parts(spec);
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) { return to_count(parts[i], "graph spec '" + spec + "'"); };
  auto covered = [&](RegularGraph g) {
    BipartiteGraph b = double_cover(g);
    return GraphInstance{std::move(g), std::move(b), spec};
  };
  if (kind == "complete") {
    expect_arity(parts, 1, 1, spec);
    return covered(complete_graph(arg(1)));
  }
  if (kind == "complete_with_loops") {
    expect_arity(parts, 1, 1, spec);
    return covered(complete_with_loops(arg(1)));
  }
  if (kind == "cycle") {
    expect_arity(parts, 1, 1, spec);
    return covered(cycle_graph(arg(1)));
  }
  if (kind == "random_regular") {
    expect_arity(parts, 2, 3, spec);
    return covered(random_regular(arg(1), arg(2), parts.size() > 3 ? arg(3) : seed));
  }
  if (kind == "complete_bipartite") {
    expect_arity(parts, 1, 1, spec);
    return GraphInstance{std::nullopt, complete_bipartite(arg(1)), spec};
  }
  if (kind == "file") {
    std::istringstream in(read_file(parts[1]));
    std::string head;
    in >> head;
    in.seekg(0);
    if (head == "bipartite") return GraphInstance{std::nullopt, parse_bipartite(in), spec};
    if (head == "regular") return covered(parse_regular(in));
    throw std::invalid_argument("graph file '" + parts[1] + "' has an unknown header");
  }
  throw std::invalid_argument("unknown graph kind '" + kind + "'");
}

LinearCode make_code(const std::string& spec, std::uint64_t seed) {
  const auto parts = spec_parts(spec);
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) { return to_count(parts[i], "code spec '" + spec + "'"); };
  if (kind == "parity") {
    expect_arity(parts, 1, 1, spec);
    return parity_code(arg(1));
  }
  if (kind == "repetition") {
    expect_arity(parts, 1, 1, spec);
    return repetition_code(arg(1));
  }
  if (kind == "hamming74") {
    expect_arity(parts, 0, 0, spec);
    return hamming74();
  }
  if (kind == "full") {
    expect_arity(parts, 1, 1, spec);
    return full_code(arg(1));
  }
  if (kind == "random") {
    expect_arity(parts, 2, 3, spec);
    return random_code(arg(1), arg(2), parts.size() > 3 ? arg(3) : seed);
  }
  if (kind == "file") {
    std::istringstream in(read_file(parts[1]));
    return parse_generator(in, "file:" + parts[1]);
  }
  throw std::invalid_argument("unknown code kind '" + kind + "'");
}

}  // namespace eec::io
