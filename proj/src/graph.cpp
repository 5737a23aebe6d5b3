#include "eec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "eec/rng.hpp"

namespace eec {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t count() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
      if (find(i) == i) ++c;
    return c;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// ---------------------------------------------------------------- RegularGraph

RegularGraph::RegularGraph(std::size_t n, std::size_t d, std::vector<std::vector<std::uint32_t>> adjacency,
                           bool allow_loops)
    : n_(n), d_(d), adj_(std::move(adjacency)), loops_(false) {
  if (adj_.size() != n_) throw std::invalid_argument("RegularGraph: adjacency size != n");
  std::vector<std::map<std::uint32_t, int>> count(n_);
  for (std::size_t v = 0; v < n_; ++v) {
    if (adj_[v].size() != d_)
      throw std::invalid_argument("RegularGraph: vertex " + std::to_string(v) + " does not have degree d");
    for (auto u : adj_[v]) {
      if (u >= n_) throw std::invalid_argument("RegularGraph: neighbor out of range");
      if (u == v) {
        if (!allow_loops) throw std::invalid_argument("RegularGraph: self-loop not permitted");
        loops_ = true;
      }
      if (++count[v][u] > 1) throw std::invalid_argument("RegularGraph: multi-edge");
    }
  }
  for (std::size_t v = 0; v < n_; ++v)
    for (auto u : adj_[v])
      if (!count[u].contains(static_cast<std::uint32_t>(v)))
        throw std::invalid_argument("RegularGraph: adjacency is not symmetric");
}

std::size_t RegularGraph::component_count() const {
  DisjointSets ds(n_);
  for (std::size_t v = 0; v < n_; ++v)
    for (auto u : adj_[v]) ds.unite(v, u);
  return ds.count();
}

RegularGraph complete_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete_graph: n must be >= 2");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u)
      if (u != v) adj[v].push_back(static_cast<std::uint32_t>(u));
  return RegularGraph(n, n - 1, std::move(adj));
}

RegularGraph complete_with_loops(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete_with_loops: n must be >= 1");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u) adj[v].push_back(static_cast<std::uint32_t>(u));
  return RegularGraph(n, n, std::move(adj), true);
}

RegularGraph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be >= 3");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v)
    adj[v] = {static_cast<std::uint32_t>((v + n - 1) % n), static_cast<std::uint32_t>((v + 1) % n)};
  return RegularGraph(n, 2, std::move(adj));
}

RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_restarts) {
  if ((n * d) % 2 != 0) throw std::invalid_argument("random_regular: n * d must be even");
  if (d >= n) throw std::invalid_argument("random_regular: need d < n");
  SplitMix64 rng(seed);
  auto key = [n](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n + b;
  };
  for (std::size_t attempt = 0; attempt <= max_restarts; ++attempt) {
    std::unordered_set<std::uint64_t> present;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint32_t> stubs;
    stubs.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < d; ++i) stubs.push_back(static_cast<std::uint32_t>(v));
    bool failed = false;
    while (!stubs.empty()) {
      rng.shuffle(stubs);
      std::map<std::uint32_t, std::size_t> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        auto a = stubs[i], b = stubs[i + 1];
        if (a != b && !present.contains(key(a, b))) {
          present.insert(key(a, b));
          edges.emplace_back(a, b);
        } else {
          ++leftover[a];
          ++leftover[b];
        }
      }
      if (leftover.empty()) break;
      // Some pair of distinct leftover vertices must still be joinable.
      bool suitable = false;
      for (auto it = leftover.begin(); it != leftover.end() && !suitable; ++it)
        for (auto jt = std::next(it); jt != leftover.end(); ++jt)
          if (!present.contains(key(it->first, jt->first))) {
            suitable = true;
            break;
          }
      if (!suitable) {
        failed = true;
        break;
      }
      stubs.clear();
      for (auto [v, c] : leftover)
        for (std::size_t i = 0; i < c; ++i) stubs.push_back(v);
    }
    if (failed) continue;
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return RegularGraph(n, d, std::move(adj));
  }
  throw std::runtime_error("random_regular: pairing failed after " + std::to_string(max_restarts) + " restarts");
}

RegularGraph disjoint_union(const RegularGraph& a, const RegularGraph& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("disjoint_union: degree mismatch");
  auto adj = a.adjacency();
  const auto shift = static_cast<std::uint32_t>(a.vertex_count());
  for (const auto& row : b.adjacency()) {
    std::vector<std::uint32_t> shifted;
    for (auto u : row) shifted.push_back(u + shift);
    adj.push_back(std::move(shifted));
  }
  return RegularGraph(a.vertex_count() + b.vertex_count(), a.degree(), std::move(adj),
                      a.has_loops() || b.has_loops());
}

// ---------------------------------------------------------------- BipartiteGraph

BipartiteGraph::BipartiteGraph(std::size_t n, std::size_t d, std::vector<Port> left_ports)
    : n_(n), d_(d), left_(std::move(left_ports)), right_(n * d, Port{UINT32_MAX, UINT32_MAX}) {
  if (left_.size() != n_ * d_) throw std::invalid_argument("BipartiteGraph: expected n * d ports");
  for (std::size_t v = 0; v < n_; ++v) {
    for (std::size_t i = 0; i < d_; ++i) {
      const Port p = left_[v * d_ + i];
      if (p.vertex >= n_ || p.slot >= d_) throw std::invalid_argument("BipartiteGraph: port out of range");
      Port& back = right_[p.vertex * d_ + p.slot];
      if (back.vertex != UINT32_MAX) throw std::invalid_argument("BipartiteGraph: right slot used twice");
      back = Port{static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(i)};
    }
  }
}

bool BipartiteGraph::ports_consistent() const {
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t i = 0; i < d_; ++i) {
      const Port p = left_[v * d_ + i];
      const Port q = right_[p.vertex * d_ + p.slot];
      if (q.vertex != v || q.slot != i) return false;
    }
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t j = 0; j < d_; ++j) {
      const Port q = right_[u * d_ + j];
      const Port p = left_[q.vertex * d_ + q.slot];
      if (p.vertex != u || p.slot != j) return false;
    }
  return true;
}

std::size_t BipartiteGraph::component_count() const {
  DisjointSets ds(2 * n_);
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t i = 0; i < d_; ++i) ds.unite(v, n_ + left_[v * d_ + i].vertex);
  return ds.count();
}

std::vector<std::vector<int>> BipartiteGraph::biadjacency() const {
  std::vector<std::vector<int>> b(n_, std::vector<int>(n_, 0));
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t i = 0; i < d_; ++i) ++b[v][left_[v * d_ + i].vertex];
  return b;
}

BipartiteGraph double_cover(const RegularGraph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t d = g.degree();
  // slot_of[u][v] = position of v in u's neighbor list.
  std::vector<std::map<std::uint32_t, std::uint32_t>> slot_of(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 0; j < d; ++j) slot_of[u][g.neighbors(u)[j]] = static_cast<std::uint32_t>(j);
  std::vector<Port> ports(n * d);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < d; ++i) {
      const auto u = g.neighbors(v)[i];
      ports[v * d + i] = Port{u, slot_of[u].at(static_cast<std::uint32_t>(v))};
    }
  return BipartiteGraph(n, d, std::move(ports));
}

BipartiteGraph complete_bipartite(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete_bipartite: n must be >= 1");
  std::vector<Port> ports(n * n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < n; ++i)
      ports[v * n + i] = Port{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(v)};
  return BipartiteGraph(n, n, std::move(ports));
}

// ---------------------------------------------------------------- mixing

MixingCheck mixing_check(const BipartiteGraph& g, const std::vector<std::uint32_t>& left,
                         const std::vector<std::uint32_t>& right, double lambda) {
  const std::size_t n = g.side_size();
  const std::size_t d = g.degree();
  std::vector<char> in_s(n, 0), in_t(n, 0);
  for (auto v : left) {
    if (v >= n) throw std::out_of_range("mixing_check: left vertex out of range");
    in_s[v] = 1;
  }
  for (auto u : right) {
    if (u >= n) throw std::out_of_range("mixing_check: right vertex out of range");
    in_t[u] = 1;
  }
  const auto s = static_cast<double>(std::count(in_s.begin(), in_s.end(), 1));
  const auto t = static_cast<double>(std::count(in_t.begin(), in_t.end(), 1));
  std::size_t edges = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_s[v]) continue;
    for (std::size_t i = 0; i < d; ++i)
      if (in_t[g.left_port(v, i).vertex]) ++edges;
  }
  MixingCheck out;
  out.lhs = std::abs(static_cast<double>(edges) - static_cast<double>(d) / static_cast<double>(n) * s * t);
  out.rhs = lambda * std::sqrt(s * t);
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

}  // namespace eec
