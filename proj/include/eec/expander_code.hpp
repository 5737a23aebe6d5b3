#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "eec/erased_word.hpp"
#include "eec/gf2.hpp"
#include "eec/graph.hpp"
#include "eec/inner_code.hpp"
#include "eec/rational.hpp"

namespace eec {

/// Vertex ids used by the decoders: left vertices are 0..n-1, right vertex u
/// is n + u.
using VertexId = std::uint32_t;

/// Expander code C(G, C0): labelings of the edges of G whose view at every
/// vertex is a codeword of C0.
///
/// Parity rows are indexed left side first, vertex-major, inner-parity-row
/// minor: row = vertex * (d - k0) + j with the vertex ids above.
class ExpanderCode {
 public:
  /// Throws std::invalid_argument when inner.length() != graph.degree().
  ExpanderCode(BipartiteGraph graph, LinearCode inner);

  const BipartiteGraph& graph() const { return graph_; }
  const LinearCode& inner() const { return inner_; }

  std::size_t side_size() const { return graph_.side_size(); }
  std::size_t degree() const { return graph_.degree(); }
  std::size_t vertex_count() const { return 2 * graph_.side_size(); }
  /// N = n * d.
  std::size_t block_length() const { return graph_.edge_count(); }

  /// Global edge id of slot i at vertex v.
  std::uint32_t edge_at(VertexId v, std::size_t slot) const { return incidence_[v * degree() + slot]; }
  /// Endpoint of edge e on the opposite side from v.
  VertexId other_end(std::uint32_t e, VertexId v) const;
  /// Slot occupied by edge e at its left (side 0) or right (side 1) endpoint.
  std::size_t slot_at(std::uint32_t e, int side) const;
  VertexId left_end(std::uint32_t e) const { return static_cast<VertexId>(e / degree()); }
  VertexId right_end(std::uint32_t e) const;

  std::size_t parity_row_count() const { return vertex_count() * (degree() - inner_.dimension()); }
  /// Entry of the parity-check matrix H in O(1).
  bool parity_entry(std::size_t row, std::size_t col) const;
  /// Edge ids in the support of parity row `row`, in slot order.
  std::vector<std::uint32_t> parity_row_support(std::size_t row) const;
  /// Dense H; intended for small N.
  BitMatrix parity_matrix() const;

  /// Restriction of y to the d edges at vertex v, in slot order.
  BitVector local_view(const BitVector& y, VertexId v) const;
  ErasedWord local_view(const ErasedWord& z, VertexId v) const;

  bool is_codeword(const BitVector& y) const;

  /// Kernel of H as columns (N x dim). Computed once and shared by copies.
  const BitMatrix& codeword_basis() const;
  std::size_t dimension() const { return codeword_basis().cols(); }

  /// Uniform codeword from the kernel basis.
  BitVector sample_codeword(std::uint64_t seed) const;
  /// All codewords; requires dimension() <= 20.
  std::vector<BitVector> enumerate_codewords() const;

  /// Erase `count` coordinates chosen uniformly.
  ErasedWord erase_count(const BitVector& c, std::size_t count, std::uint64_t seed) const;
  /// Erase each coordinate independently with probability p.
  ErasedWord erase_rate(const BitVector& c, double p, std::uint64_t seed) const;
  ErasedWord erase_explicit(const BitVector& c, const std::vector<std::uint32_t>& ids) const;

  /// List_C(z) by direct elimination over the erased coordinates.
  AffineSpace oracle_list_decode(const ErasedWord& z) const;

  /// Second relative generalized distance of C by pruned pair enumeration;
  /// requires 2 <= dimension() <= 20.
  Rational second_generalized_distance() const;

 private:
  struct Cache;

  BipartiteGraph graph_;
  LinearCode inner_;
  std::vector<std::uint32_t> incidence_;
  std::shared_ptr<Cache> cache_;
};

/// Affine description {L x + ell} of a list of codewords.
struct ListDescription {
  BitMatrix L;
  BitVector ell;

  std::size_t a() const { return L.cols(); }
  std::size_t length() const { return ell.size(); }
  AffineSpace to_affine() const { return AffineSpace(ell, L); }
  static ListDescription from_affine(const AffineSpace& space);
};

}  // namespace eec
