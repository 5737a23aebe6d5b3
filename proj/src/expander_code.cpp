#include "eec/expander_code.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "eec/rng.hpp"

namespace eec {

struct ExpanderCode::Cache {
  std::once_flag basis_once;
  BitMatrix basis;
};

ExpanderCode::ExpanderCode(BipartiteGraph graph, LinearCode inner)
    : graph_(std::move(graph)), inner_(std::move(inner)), cache_(std::make_shared<Cache>()) {
  if (inner_.length() != graph_.degree())
    throw std::invalid_argument("ExpanderCode: inner code length " + std::to_string(inner_.length()) +
                                " does not match graph degree " + std::to_string(graph_.degree()));
  const std::size_t n = side_size();
  const std::size_t d = degree();
  incidence_.resize(2 * n * d);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < d; ++i) incidence_[v * d + i] = static_cast<std::uint32_t>(graph_.left_edge(v, i));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 0; j < d; ++j)
      incidence_[(n + u) * d + j] = static_cast<std::uint32_t>(graph_.right_edge(u, j));
}

VertexId ExpanderCode::right_end(std::uint32_t e) const {
  return static_cast<VertexId>(side_size() + graph_.left_port(e / degree(), e % degree()).vertex);
}

VertexId ExpanderCode::other_end(std::uint32_t e, VertexId v) const {
  return v < side_size() ? right_end(e) : left_end(e);
}

std::size_t ExpanderCode::slot_at(std::uint32_t e, int side) const {
  if (side == 0) return e % degree();
  return graph_.left_port(e / degree(), e % degree()).slot;
}

bool ExpanderCode::parity_entry(std::size_t row, std::size_t col) const {
  const std::size_t m = degree() - inner_.dimension();
  if (row >= parity_row_count() || col >= block_length())
    throw std::out_of_range("parity_entry: index out of range");
  const auto v = static_cast<VertexId>(row / m);
  const std::size_t j = row % m;
  const auto e = static_cast<std::uint32_t>(col);
  std::size_t slot;
  if (v < side_size()) {
    if (left_end(e) != v) return false;
    slot = slot_at(e, 0);
  } else {
    if (right_end(e) != v) return false;
    slot = slot_at(e, 1);
  }
  return inner_.parity().get(j, slot);
}

std::vector<std::uint32_t> ExpanderCode::parity_row_support(std::size_t row) const {
  const std::size_t m = degree() - inner_.dimension();
  if (row >= parity_row_count()) throw std::out_of_range("parity_row_support: row out of range");
  const auto v = static_cast<VertexId>(row / m);
  const std::size_t j = row % m;
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < degree(); ++i)
    if (inner_.parity().get(j, i)) out.push_back(edge_at(v, i));
  return out;
}

BitMatrix ExpanderCode::parity_matrix() const {
  BitMatrix h(parity_row_count(), block_length());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (auto e : parity_row_support(r)) h.set(r, e);
  return h;
}

BitVector ExpanderCode::local_view(const BitVector& y, VertexId v) const {
  BitVector out(degree());
  for (std::size_t i = 0; i < degree(); ++i)
    if (y.get(edge_at(v, i))) out.set(i);
  return out;
}

ErasedWord ExpanderCode::local_view(const ErasedWord& z, VertexId v) const {
  ErasedWord out(degree());
  for (std::size_t i = 0; i < degree(); ++i) out.set_symbol(i, z.symbol(edge_at(v, i)));
  return out;
}

bool ExpanderCode::is_codeword(const BitVector& y) const {
  if (y.size() != block_length()) throw std::invalid_argument("is_codeword: length mismatch");
  for (VertexId v = 0; v < vertex_count(); ++v)
    if (!inner_.contains(local_view(y, v))) return false;
  return true;
}

const BitMatrix& ExpanderCode::codeword_basis() const {
  std::call_once(cache_->basis_once, [this] { cache_->basis = kernel_basis(parity_matrix()); });
  return cache_->basis;
}

BitVector ExpanderCode::sample_codeword(std::uint64_t seed) const {
  const BitMatrix& basis = codeword_basis();
  SplitMix64 rng(seed);
  BitVector coeffs(basis.cols());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (rng() >> 63) coeffs.set(i);
  return basis * coeffs;
}

std::vector<BitVector> ExpanderCode::enumerate_codewords() const {
  const BitMatrix& basis = codeword_basis();
  if (basis.cols() > 20) throw DimensionTooLarge("enumerate_codewords: dimension above 20");
  return AffineSpace(BitVector(block_length()), basis).enumerate(20);
}

ErasedWord ExpanderCode::erase_count(const BitVector& c, std::size_t count, std::uint64_t seed) const {
  const std::size_t n = block_length();
  if (count > n) throw std::invalid_argument("erase_count: more erasures than coordinates");
  if (c.size() != n) throw std::invalid_argument("erase_count: length mismatch");
  // Partial Fisher-Yates: the first `count` entries are a uniform subset.
  std::vector<std::uint32_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::uint32_t>(i);
  SplitMix64 rng(seed);
  BitVector mask(n);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(ids[i], ids[j]);
    mask.set(ids[i]);
  }
  return ErasedWord::with_erasures(c, mask);
}

ErasedWord ExpanderCode::erase_rate(const BitVector& c, double p, std::uint64_t seed) const {
  if (c.size() != block_length()) throw std::invalid_argument("erase_rate: length mismatch");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erase_rate: p must lie in [0, 1]");
  SplitMix64 rng(seed);
  BitVector mask(block_length());
  for (std::size_t i = 0; i < block_length(); ++i)
    if (rng.bernoulli(p)) mask.set(i);
  return ErasedWord::with_erasures(c, mask);
}

ErasedWord ExpanderCode::erase_explicit(const BitVector& c, const std::vector<std::uint32_t>& ids) const {
  if (c.size() != block_length()) throw std::invalid_argument("erase_explicit: length mismatch");
  BitVector mask(block_length());
  for (auto e : ids) {
    if (e >= block_length()) throw std::out_of_range("erase_explicit: edge id out of range");
    mask.set(e);
  }
  return ErasedWord::with_erasures(c, mask);
}

AffineSpace ExpanderCode::oracle_list_decode(const ErasedWord& z) const {
  const std::size_t n = block_length();
  if (z.size() != n) throw std::invalid_argument("oracle_list_decode: length mismatch");
  std::vector<std::uint32_t> erased;
  std::vector<std::int64_t> column(n, -1);
  for (std::size_t e = 0; e < n; ++e)
    if (z.is_erased(e)) {
      column[e] = static_cast<std::int64_t>(erased.size());
      erased.push_back(static_cast<std::uint32_t>(e));
    }
  // H_erased y = H_known z_known.
  EchelonBasis system(erased.size());
  for (std::size_t r = 0; r < parity_row_count(); ++r) {
    BitVector row(erased.size());
    bool rhs = false;
    for (auto e : parity_row_support(r)) {
      if (column[e] >= 0)
        row.flip(static_cast<std::size_t>(column[e]));
      else
        rhs ^= z.values().get(e);
    }
    if (system.insert(std::move(row), rhs) == EchelonBasis::Insert::Inconsistent) return AffineSpace::empty_set(n);
  }
  const AffineSpace local = system.solve();
  if (local.is_empty()) return AffineSpace::empty_set(n);
  BitVector offset = z.values();
  for (std::size_t i = 0; i < erased.size(); ++i)
    if (local.offset().get(i)) offset.set(erased[i]);
  std::vector<BitVector> cols;
  for (const auto& k : local.basis().columns()) {
    BitVector col(n);
    for (std::size_t i = 0; i < erased.size(); ++i)
      if (k.get(i)) col.set(erased[i]);
    cols.push_back(std::move(col));
  }
  return AffineSpace(std::move(offset), BitMatrix::from_columns(cols, n)).canonical();
}

Rational ExpanderCode::second_generalized_distance() const {
  const std::size_t k = dimension();
  if (k < 2) throw std::out_of_range("second_generalized_distance: code dimension below 2");
  if (k > 20) throw DimensionTooLarge("second_generalized_distance: dimension above 20");
  std::vector<std::pair<std::size_t, BitVector>> words;
  for (auto& w : enumerate_codewords())
    if (w.any()) words.emplace_back(w.popcount(), std::move(w));
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // Any two distinct nonzero words are independent; the union support is at
  // least the larger weight, so both loops stop once that reaches the best.
  std::size_t best = block_length();
  for (std::size_t i = 0; i < words.size() && words[i].first < best; ++i)
    for (std::size_t j = i + 1; j < words.size() && words[j].first < best; ++j) {
      const std::size_t both = (words[i].second & words[j].second).popcount();
      best = std::min(best, words[i].first + words[j].first - both);
    }
  return Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(block_length()));
}

ListDescription ListDescription::from_affine(const AffineSpace& space) {
  if (space.is_empty()) throw std::invalid_argument("ListDescription: empty space has no description");
  return ListDescription{space.basis(), space.offset()};
}

}  // namespace eec
