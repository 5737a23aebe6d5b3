#include <doctest.h>

#include <numeric>

#include "eec/graph.hpp"
#include "eec/list_decode.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace eec;

namespace {

DecoderParams params_for(const ExpanderCode& code, std::size_t r = 2, Rational eps = Rational(1, 2)) {
  DecoderParams p;
  p.r = std::min(r, code.inner().dimension());
  p.epsilon = eps;
  return p;
}

ExpanderCode flagship() { return ExpanderCode(complete_bipartite(3), parity_code(3)); }

}  // namespace

TEST_CASE("derived thresholds on a hand-worked instance") {
  // K_{7,7} + hamming74, r = 2, eps = 1/2: delta = 3/7, delta_2 = 5/7.
  const ExpanderCode code(complete_bipartite(7), hamming74());
  const auto t = derive_thresholds(code, params_for(code));
  CHECK(t.delta == Rational(3, 7));
  CHECK(t.delta_r == Rational(5, 7));
  // (1/4)(9/49) 7 / 32 = 9/896
  CHECK(t.heavy == Rational(9, 896));
  // 2^11 / ((1/16)(81/2401))
  CHECK(t.class_count_bound == Rational(2048 * 16 * 2401, 81));
  CHECK(t.class_size_bound == Rational(81 * 49, 2401 * 16 * 2048));
  CHECK(t.erasure_budget == Rational(1, 2) * Rational(3, 7) * Rational(5, 7) * Rational(49));
  CHECK(t.regime_ratio == Rational(9, 49 * 4 * 64));
  DecoderParams bad = params_for(code);
  bad.r = 5;
  CHECK_THROWS_AS(derive_thresholds(code, bad), std::invalid_argument);
  bad.r = 1;
  bad.epsilon = Rational(0);
  CHECK_THROWS_AS(derive_thresholds(code, bad), std::invalid_argument);
}

TEST_CASE("regime flag") {
  const ExpanderCode code(complete_bipartite(7), hamming74());
  auto p = params_for(code);
  CHECK_FALSE(in_regime(code, p));
  p.lambda = 0.0;
  CHECK(in_regime(code, p));
  p.lambda = 1.0;
  CHECK_FALSE(in_regime(code, p));
}

TEST_CASE("inner list bank matches per-vertex enumeration") {
  for (const auto& inst : battery::generate(80, 31)) {
    const auto p = params_for(inst.code);
    const auto bank = build_inner_lists(inst.code, inst.received, p);
    REQUIRE_FALSE(bank.inconsistent);
    const Rational dr = inst.code.inner().generalized_distance(p.r);
    for (VertexId v = 0; v < inst.code.vertex_count(); ++v) {
      const auto view = inst.code.local_view(inst.received, v);
      const bool bad = Rational(static_cast<std::int64_t>(view.erasure_count())) >
                       dr * Rational(static_cast<std::int64_t>(inst.code.degree()));
      CHECK(static_cast<bool>(bank.bad[v]) == bad);
      if (bad) continue;
      std::vector<BitVector> expect;
      for (auto m : oracle::inner_list(inst.code.inner(), view))
        expect.push_back(BitVector::from_mask(m, inst.code.degree()));
      std::sort(expect.begin(), expect.end());
      CHECK(oracle::elements(bank.lists[v]) == expect);
      // Below delta_r d erasures the list holds at most 2^(r-1) words; at the
      // boundary it may double.
      const bool strict = Rational(static_cast<std::int64_t>(view.erasure_count())) <
                          dr * Rational(static_cast<std::int64_t>(inst.code.degree()));
      CHECK_MESSAGE(expect.size() <= (1ULL << (strict ? p.r - 1 : p.r)),
                    inst.label << " v=" << v << " e_v=" << view.erasure_count());
    }
  }
}

TEST_CASE("inconsistent local view is detected") {
  const auto code = flagship();
  auto z = ErasedWord::from_bits(BitVector(9));
  z.set_symbol(0, true);
  const auto bank = build_inner_lists(code, z, params_for(code));
  CHECK(bank.inconsistent);
  CHECK(list_decode_fast(code, z, params_for(code)).status == ListStatus::Inconsistent);
}

TEST_CASE("heavy edge filter reaches the reference fixed point") {
  for (const auto& inst : battery::generate(150, 32)) {
    for (const Rational& thr : {Rational(0), Rational(1), Rational(3, 2), Rational(2)}) {
      const auto bank = build_inner_lists(inst.code, inst.received, params_for(inst.code));
      const auto keep = find_heavy_edges(inst.code, bank, thr);
      CHECK_MESSAGE(keep == oracle::heavy_edges_reference(inst.code, bank.bad, bank.rows, thr), inst.label);
    }
  }
}

TEST_CASE("global classes respect every list member") {
  for (const auto& inst : battery::generate(200, 33)) {
    if (inst.received.erasure_count() > 16) continue;
    const auto p = params_for(inst.code);
    const auto bank = build_inner_lists(inst.code, inst.received, p);
    const auto st = global_classes(inst.code, bank, find_heavy_edges(inst.code, bank, Rational(1)));
    // Class sizes, representatives and membership are coherent.
    std::vector<std::size_t> sizes(st.class_count(), 0);
    for (std::uint32_t e = 0; e < inst.code.block_length(); ++e) {
      CHECK((st.class_of[e] >= 0) == static_cast<bool>(st.in_e_prime[e]));
      if (st.class_of[e] < 0) continue;
      const auto c = static_cast<std::size_t>(st.class_of[e]);
      ++sizes[c];
      CHECK(st.representatives[c] <= e);
    }
    CHECK(sizes == st.class_sizes);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == st.e_prime_size);
    for (std::size_t c = 0; c < st.class_count(); ++c) CHECK_FALSE(st.offset[st.representatives[c]]);
    // Every codeword in the list satisfies c_e = c_rep + offset[e].
    for (const auto& w : oracle::expander_list(inst.code, inst.received))
      for (std::uint32_t e = 0; e < inst.code.block_length(); ++e) {
        if (st.class_of[e] < 0) continue;
        const auto rep = st.representatives[static_cast<std::size_t>(st.class_of[e])];
        CHECK(w.get(e) == (w.get(rep) ^ static_cast<bool>(st.offset[e])));
      }
    // B' is recomputed from its definition.
    const Rational delta_d = inst.code.inner().min_distance() * Rational(static_cast<std::int64_t>(inst.code.degree()));
    std::size_t touching = 0;
    for (std::uint32_t e = 0; e < inst.code.block_length(); ++e)
      touching += st.b_prime[inst.code.left_end(e)] || st.b_prime[inst.code.right_end(e)];
    CHECK(touching == st.e_b_prime);
    for (VertexId v = 0; v < inst.code.vertex_count(); ++v) {
      std::int64_t outside = 0;
      for (std::size_t s = 0; s < inst.code.degree(); ++s) outside += !st.in_e_prime[inst.code.edge_at(v, s)];
      CHECK(static_cast<bool>(st.b_prime[v]) == (Rational(outside) > delta_d));
    }
  }
}

TEST_CASE("flagship square decodes to {0, w}") {
  const auto code = flagship();
  const auto z = code.erase_explicit(BitVector(9), {0, 1, 3, 4});
  const auto p = params_for(code, 1);
  const auto fast = list_decode_fast(code, z, p);
  REQUIRE(fast.status == ListStatus::Ok);
  CHECK(fast.list.a() == 1);
  const auto words = oracle::elements(fast.list.to_affine());
  REQUIRE(words.size() == 2);
  CHECK(words[0].none());
  CHECK(words[1] == BitVector::from_string("110110000"));
  const auto slow = list_decode_slow(code, z, p);
  REQUIRE(slow.status == ListStatus::Ok);
  CHECK(slow.words == words);
  CHECK(slow.report.a == 1);
}

TEST_CASE("fast decoder agrees with the completion oracle") {
  std::size_t ok = 0;
  for (const auto& inst : battery::generate(250, 34)) {
    const auto p = params_for(inst.code, 1 + inst.code.block_length() % 2);
    const auto fast = list_decode_fast(inst.code, inst.received, p);
    if (fast.status != ListStatus::Ok) {
      CHECK(fast.status == ListStatus::Stuck);
      continue;
    }
    ++ok;
    CHECK_MESSAGE(affine_equal(fast.list.to_affine(), inst.code.oracle_list_decode(inst.received)), inst.label);
    if (inst.received.erasure_count() <= 14)
      CHECK(oracle::elements(fast.list.to_affine()) == oracle::expander_list(inst.code, inst.received));
    CHECK(fast.report.a == fast.list.a());
    CHECK(fast.report.a <= fast.report.a_unrestricted);
  }
  CHECK(ok > 100);
}

TEST_CASE("slow decoder agrees with the fast decoder") {
  std::size_t compared = 0;
  for (const auto& inst : battery::generate(250, 35)) {
    auto p = params_for(inst.code, 1 + inst.code.block_length() % 2);
    p.s_cap = 12;
    const auto fast = list_decode_fast(inst.code, inst.received, p);
    SlowDecodeResult slow;
    try {
      slow = list_decode_slow(inst.code, inst.received, p);
    } catch (const AdviceTooLarge& e) {
      CHECK(e.classes() > 12);
      continue;
    }
    CHECK(slow.status == fast.status);
    if (slow.status != ListStatus::Ok || fast.status != ListStatus::Ok) continue;
    ++compared;
    CHECK_MESSAGE(slow.words == oracle::elements(fast.list.to_affine()), inst.label);
  }
  CHECK(compared > 50);
}

TEST_CASE("slow decoder is independent of the thread count") {
  for (const auto& inst : battery::generate(40, 36)) {
    auto p = params_for(inst.code, 1);
    try {
      const auto one = list_decode_slow(inst.code, inst.received, p);
      p.threads = 4;
      const auto four = list_decode_slow(inst.code, inst.received, p);
      CHECK(one.status == four.status);
      CHECK(one.words == four.words);
      CHECK(one.report.advice_rejected == four.report.advice_rejected);
    } catch (const AdviceTooLarge&) {
    }
  }
}

TEST_CASE("corrupted symbols give an empty list") {
  std::size_t empties = 0;
  SplitMix64 rng(9);
  for (const auto& inst : battery::generate(120, 37)) {
    ErasedWord z = inst.received;
    for (std::size_t e = 0; e < z.size(); ++e)
      if (!z.is_erased(e) && rng.bernoulli(0.05)) z.set_symbol(e, !*z.symbol(e));
    const auto oracle_list = inst.code.oracle_list_decode(z);
    const auto fast = list_decode_fast(inst.code, z, params_for(inst.code, 1));
    if (fast.status == ListStatus::Ok) {
      CHECK(affine_equal(fast.list.to_affine(), oracle_list));
    } else if (fast.status == ListStatus::EmptyList || fast.status == ListStatus::Inconsistent) {
      ++empties;
      CHECK(oracle_list.is_empty());
    }
  }
  CHECK(empties > 0);
}

TEST_CASE("advice cap") {
  const ExpanderCode code(double_cover(random_regular(32, 3, 4)), parity_code(3));
  const auto z = code.erase_count(BitVector(code.block_length()), 40, 1);
  auto p = params_for(code, 1);
  p.s_cap = 0;
  CHECK_THROWS_AS(list_decode_slow(code, z, p), AdviceTooLarge);
}

TEST_CASE("status names") {
  CHECK(to_string(ListStatus::Ok) == "ok");
  CHECK(to_string(ListStatus::Stuck) == "stuck");
  CHECK(to_string(ListStatus::EmptyList) == "empty_list");
  CHECK(to_string(ListStatus::Inconsistent) == "inconsistent");
}
