#include <doctest.h>

#include <set>

#include "eec/gf2.hpp"
#include "eec/rng.hpp"
#include "oracles.hpp"

using namespace eec;

namespace {

BitVector random_vector(SplitMix64& rng, std::size_t n, double p = 0.5) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.bernoulli(p));
  return v;
}

BitMatrix random_matrix(SplitMix64& rng, std::size_t r, std::size_t c, double p = 0.5) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) m.row(i) = random_vector(rng, c, p);
  return m;
}

// Every x in F2^n with M x = y, by enumeration.
std::vector<BitVector> brute_solutions(const BitMatrix& m, const BitVector& y) {
  std::vector<BitVector> out;
  for (std::uint64_t x = 0; x < (1ULL << m.cols()); ++x) {
    bool ok = true;
    for (std::size_t r = 0; r < m.rows() && ok; ++r) {
      const int dot = std::popcount(oracle::mask_of(m.row(r)) & x) & 1;
      ok = dot == static_cast<int>(y.get(r));
    }
    if (ok) out.push_back(BitVector::from_mask(x, m.cols()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("bit vector basics") {
  BitVector v = BitVector::from_string("1011000000000000000000000000000000000000000000000000000000000000011");
  CHECK(v.size() == 67);
  CHECK(v.popcount() == 5);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
  CHECK(v.get(66));
  CHECK(v.find_first() == 0);
  CHECK(v.find_next(4) == 65);
  CHECK(v.to_string().size() == 67);
  CHECK(BitVector::from_string(v.to_string()) == v);
  v.flip(66);
  CHECK(v.popcount() == 4);
  CHECK(BitVector::ones(70).popcount() == 70);
  CHECK(BitVector(70).none());
  CHECK_THROWS_AS(BitVector::from_string("10x"), std::invalid_argument);
}

TEST_CASE("matrix products agree with dot products") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = 1 + rng.below(70), c = 1 + rng.below(70), k = 1 + rng.below(10);
    BitMatrix a = random_matrix(rng, r, c);
    BitMatrix b = random_matrix(rng, c, k);
    BitMatrix ab = a * b;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j) CHECK(ab.get(i, j) == a.row(i).dot(b.column(j)));
    BitVector x = random_vector(rng, c);
    BitVector y = a * x;
    for (std::size_t i = 0; i < r; ++i) CHECK(y.get(i) == a.row(i).dot(x));
    BitVector z = random_vector(rng, r);
    CHECK(a.left_multiply(z) == a.transposed() * z);
    CHECK(a.transposed().transposed() == a);
  }
}

TEST_CASE("rank and kernel on random matrices") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = 1 + rng.below(12), c = 1 + rng.below(12);
    BitMatrix m = random_matrix(rng, r, c, trial % 3 == 0 ? 0.15 : 0.5);
    const auto k = kernel_basis(m);
    CHECK(k.rows() == c);
    CHECK(rank(m) + k.cols() == c);
    CHECK((m * k).is_zero());
    // Number of kernel vectors counted by brute force.
    CHECK(brute_solutions(m, BitVector(r)).size() == (1ULL << k.cols()));
    const auto rr = rref(m);
    CHECK(rr.rank == rank(m));
    CHECK(rref(rr.reduced).reduced == rr.reduced);
  }
}

TEST_CASE("solve_affine matches enumeration") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = 1 + rng.below(10), c = 1 + rng.below(11);
    BitMatrix m = random_matrix(rng, r, c);
    BitVector y = random_vector(rng, r);
    const auto s = solve_affine(m, y);
    CHECK(oracle::elements(s) == brute_solutions(m, y));
    if (!s.is_empty()) {
      CHECK(s.contains(s.offset()));
      CHECK(affine_equal(s, s.canonical()));
    }
  }
}

TEST_CASE("echelon basis streaming matches solve_affine") {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = 1 + rng.below(14), c = rng.below(10);
    BitMatrix m = random_matrix(rng, r, c);
    BitVector y = random_vector(rng, r);
    EchelonBasis eb(c);
    for (std::size_t i = 0; i < r; ++i) eb.insert(m.row(i), y.get(i));
    const auto s = eb.solve();
    CHECK(oracle::elements(s) == brute_solutions(m, y));
    CHECK(eb.inconsistent() == s.is_empty());
  }
  EchelonBasis zero(0);
  CHECK(zero.insert(BitVector(0), false) == EchelonBasis::Insert::Redundant);
  CHECK(zero.insert(BitVector(0), true) == EchelonBasis::Insert::Inconsistent);
}

TEST_CASE("affine equality is set equality") {
  SplitMix64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + rng.below(9);
    const auto k = rng.below(n + 1);
    BitMatrix basis = kernel_basis(random_matrix(rng, n - k, n));
    AffineSpace a(random_vector(rng, n), basis);
    // Same set with a different offset and a mixed basis.
    BitVector off = a.element(rng());
    std::vector<BitVector> cols = basis.columns();
    for (std::size_t i = 1; i < cols.size(); ++i)
      if (rng() & 1) cols[i] ^= cols[i - 1];
    AffineSpace b(off, BitMatrix::from_columns(cols, n));
    CHECK(affine_equal(a, b));
    CHECK(oracle::elements(a) == oracle::elements(b));
    AffineSpace c(random_vector(rng, n), basis);
    const bool same = oracle::elements(a) == oracle::elements(c);
    CHECK(affine_equal(a, c) == same);
    CHECK(a.canonical().offset() == b.canonical().offset());
    CHECK(a.canonical().basis() == b.canonical().basis());
  }
  CHECK(affine_equal(AffineSpace::empty_set(3), AffineSpace::empty_set(3)));
  CHECK_FALSE(affine_equal(AffineSpace::empty_set(3), AffineSpace::whole(3)));
  CHECK(AffineSpace::whole(4).enumerate().size() == 16);
}
