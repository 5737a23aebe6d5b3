#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace eec {

/// d-regular undirected graph with a fixed neighbor order per vertex.
///
/// Self-loops appear once in the loop vertex's list and are only accepted when
/// `allow_loops` is set (complete_with_loops). Multi-edges are rejected.
class RegularGraph {
 public:
  RegularGraph(std::size_t n, std::size_t d, std::vector<std::vector<std::uint32_t>> adjacency,
               bool allow_loops = false);

  std::size_t vertex_count() const { return n_; }
  std::size_t degree() const { return d_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const { return adj_[v]; }
  const std::vector<std::vector<std::uint32_t>>& adjacency() const { return adj_; }
  bool has_loops() const { return loops_; }

  std::size_t component_count() const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<std::vector<std::uint32_t>> adj_;
  bool loops_;
};

/// Endpoint of an edge at one vertex: neighbor id on the other side and the
/// slot the edge occupies at that neighbor.
struct Port {
  std::uint32_t vertex;
  std::uint32_t slot;
  friend bool operator==(const Port&, const Port&) = default;
};

/// d-regular bipartite graph with n vertices per side.
///
/// Left vertex v, slot i is connected to `left_port(v, i) = (u, j)`, meaning
/// right vertex u, slot j; the right side stores the inverse map. The edge
/// (v, i) has global id v * d + i, so ids run over [0, n * d).
class BipartiteGraph {
 public:
  /// `left_ports` has n * d entries indexed v * d + i. Throws
  /// std::invalid_argument unless the map is a bijection onto right slots.
  BipartiteGraph(std::size_t n, std::size_t d, std::vector<Port> left_ports);

  std::size_t side_size() const { return n_; }
  std::size_t degree() const { return d_; }
  std::size_t edge_count() const { return n_ * d_; }

  Port left_port(std::size_t v, std::size_t i) const { return left_[v * d_ + i]; }
  Port right_port(std::size_t u, std::size_t j) const { return right_[u * d_ + j]; }

  std::size_t left_edge(std::size_t v, std::size_t i) const { return v * d_ + i; }
  std::size_t right_edge(std::size_t u, std::size_t j) const {
    const Port p = right_[u * d_ + j];
    return p.vertex * d_ + p.slot;
  }

  const std::vector<Port>& left_ports() const { return left_; }
  const std::vector<Port>& right_ports() const { return right_; }

  /// Checks the involution left(v,i) = (u,j) <=> right(u,j) = (v,i).
  bool ports_consistent() const;

  /// Number of connected components of the whole bipartite graph.
  std::size_t component_count() const;

  /// Dense biadjacency counts B[v][u] = number of edges between left v and right u.
  std::vector<std::vector<int>> biadjacency() const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<Port> left_;
  std::vector<Port> right_;
};

RegularGraph complete_graph(std::size_t n);
/// Complete graph plus a loop at every vertex (d = n); its double cover is K_{n,n}.
RegularGraph complete_with_loops(std::size_t n);
RegularGraph cycle_graph(std::size_t n);
/// Uniform-ish simple d-regular graph via stub pairing that rejects loops and
/// repeated edges, restarting when the remaining stubs cannot be paired.
RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_restarts = 1000);
/// Disjoint union, second graph's vertices shifted by the first's count.
RegularGraph disjoint_union(const RegularGraph& a, const RegularGraph& b);

BipartiteGraph double_cover(const RegularGraph& g);
BipartiteGraph complete_bipartite(std::size_t n);

// ---------------------------------------------------------------- spectra

struct SpectralOptions {
  /// Largest symmetric matrix handled by the dense Jacobi eigensolver.
  std::size_t dense_cap = 512;
  std::size_t max_iterations = 100000;
  double tolerance = 1e-6;
};

struct LambdaEstimate {
  double value = 0.0;
  /// True for the dense eigensolve path.
  bool exact = false;
  std::size_t iterations = 0;
  double residual = 0.0;
};

class LambdaEstimationError : public std::runtime_error {
 public:
  LambdaEstimationError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi, descending.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a);

/// max(lambda_2, |lambda_n|) of the adjacency spectrum.
LambdaEstimate expansion_lambda(const RegularGraph& g, const SpectralOptions& options = {});
/// Second singular value of the biadjacency matrix.
LambdaEstimate bipartite_lambda(const BipartiteGraph& g, const SpectralOptions& options = {});

struct MixingCheck {
  double lhs;
  double rhs;
  bool holds;
};

/// |E(S,T) - (d/n)|S||T|| <= lambda * sqrt(|S||T|), with E(S,T) counted exactly.
/// `left` and `right` are vertex ids on the respective sides (duplicates ignored).
MixingCheck mixing_check(const BipartiteGraph& g, const std::vector<std::uint32_t>& left,
                         const std::vector<std::uint32_t>& right, double lambda);

}  // namespace eec
