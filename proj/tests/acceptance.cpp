// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eec/graph.hpp"
#include "eec/list_decode.hpp"
#include "eec/unique_decode.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace eec;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr std::size_t kBatterySize = 600;
constexpr std::uint64_t kBatterySeed = 0xACCE97;
constexpr double kBatterySeconds = 300.0;
constexpr std::size_t kSlowCap = 12;
constexpr std::size_t kUniqueTrials = 1000;
constexpr std::size_t kUniqueErasures = 6;
constexpr std::size_t kFuzzInstances = 200;
constexpr double kScalingSpread = 2.0;
constexpr double kScalingSeconds = 60.0;
constexpr std::size_t kScalingReps = 5;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Rational q(std::size_t x) { return Rational(static_cast<std::int64_t>(x)); }

int failures = 0;

void verdict(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %d: %s  %s (%s)\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

DecoderParams params(std::size_t r, Rational eps, std::optional<double> lambda = std::nullopt) {
  DecoderParams p;
  p.r = r;
  p.epsilon = eps;
  p.s_cap = kSlowCap;
  p.lambda = lambda;
  return p;
}

// r cycles through 1..min(3, k0) across the battery.
std::size_t battery_r(std::size_t i, const ExpanderCode& code) {
  return 1 + i % std::min<std::size_t>(3, code.inner().dimension());
}

// ---------------------------------------------------------------- 1 and 3

void battery_criteria() {
  const auto t0 = Clock::now();
  const auto instances = battery::generate(kBatterySize, kBatterySeed, 1000);
  std::size_t completed = 0, fast_fail = 0, stuck = 0;
  std::size_t compared = 0, slow_fail = 0, too_large = 0;
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const auto p = params(battery_r(i, inst.code), Rational(1, 2), inst.lambda);
    const auto fast = list_decode_fast(inst.code, inst.received, p);
    const AffineSpace truth = inst.code.oracle_list_decode(inst.received);
    if (fast.status == ListStatus::Ok) {
      ++completed;
      if (!affine_equal(fast.list.to_affine(), truth)) {
        ++fast_fail;
        if (notes.size() < 3) notes.push_back(inst.label);
      }
    } else {
      ++stuck;
    }
    if (fast.report.s_actual > kSlowCap) {
      ++too_large;
      continue;
    }
    const auto slow = list_decode_slow(inst.code, inst.received, p);
    if (fast.status != ListStatus::Ok || slow.status != ListStatus::Ok) continue;
    ++compared;
    if (slow.words != oracle::elements(fast.list.to_affine())) ++slow_fail;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d1;
  d1 << instances.size() << " instances, " << completed << " completed, " << stuck << " not completed, " << fast_fail
     << " mismatches, " << secs << " s";
  for (const auto& n : notes) d1 << "; " << n;
  verdict(1, instances.size() >= 500 && completed > 0 && fast_fail == 0 && secs < kBatterySeconds,
          "fast decoder equals the elimination oracle", d1.str());
  std::ostringstream d3;
  d3 << compared << " compared, " << slow_fail << " mismatches, " << too_large << " above the advice cap";
  verdict(3, compared > 0 && slow_fail == 0, "slow and fast decoders agree", d3.str());
}

// ---------------------------------------------------------------- 2

void flagship() {
  const ExpanderCode code(complete_bipartite(3), parity_code(3));
  const auto z = code.erase_explicit(BitVector(9), {0, 1, 3, 4});
  const BitVector w = BitVector::from_string("110110000");
  const std::vector<BitVector> expected = {BitVector(9), w};
  bool ok = true;
  std::ostringstream d;
  for (std::size_t r : {1, 2}) {
    const auto p = params(r, Rational(1, 2), 0.0);
    const auto fast = list_decode_fast(code, z, p);
    const auto slow = list_decode_slow(code, z, p);
    const bool f = fast.status == ListStatus::Ok && fast.list.a() == 1 &&
                   oracle::elements(fast.list.to_affine()) == expected;
    const bool s = slow.status == ListStatus::Ok && slow.words == expected;
    d << "r=" << r << " fast a=" << (fast.status == ListStatus::Ok ? std::to_string(fast.list.a()) : to_string(fast.status))
      << " slow |list|=" << slow.words.size() << "; ";
    ok = ok && f && s;
  }
  d << "w=" << w.to_string();
  verdict(2, ok, "2x2 square in K33 + parity[3] gives {0, w}", d.str());
}

// ---------------------------------------------------------------- 4

void unique_guarantee() {
  const RegularGraph k8 = complete_graph(8);
  const ExpanderCode code(double_cover(k8), hamming74());
  const Rational eps(1, 10);
  const double lambda = expansion_lambda(k8).value;
  const auto g = max_guaranteed_erasures(code, approximate_rational(lambda), eps);
  SplitMix64 rng(0x4444);
  std::size_t decoded = 0, decay_ok = 0;
  const BitVector zero(code.block_length());
  for (std::size_t t = 0; t < kUniqueTrials; ++t) {
    const auto z = code.erase_count(zero, kUniqueErasures, rng());
    const auto res = unique_decode(code, z);
    if (res.status == UniqueStatus::Complete && res.codeword == zero) ++decoded;
    // |P_{t+1}| (1 + eps)^2 <= |P_t| for t >= 2, checked here directly.
    bool decay = true;
    const auto& f = res.schedule.frontier;
    for (std::size_t s = 2; s + 1 < f.size(); ++s)
      decay = decay && (Rational(1) + eps).pow(2) * q(f[s + 1]) <= q(f[s]);
    if (decay && frontier_decay_holds(res.schedule, eps)) ++decay_ok;
  }
  std::ostringstream d;
  d << "lambda=" << lambda << " bound=" << g.count << " hypothesis=" << g.hypothesis_holds << "; " << decoded << "/"
    << kUniqueTrials << " decoded, decay held on " << decay_ok << "/" << kUniqueTrials;
  verdict(4, g.count == kUniqueErasures && g.hypothesis_holds && decoded == kUniqueTrials && decay_ok == kUniqueTrials,
          "unique decoding of 6 erasures in K8 cover + hamming74", d.str());
}

// ---------------------------------------------------------------- 5

// Largest list over all patterns of e erasures: the number of codewords
// supported inside the pattern, maximized.
std::size_t largest_list(const std::vector<std::uint64_t>& words, std::size_t len, std::size_t e) {
  std::size_t best = 0;
  for (std::uint64_t pat = 0; pat < (1ULL << len); ++pat) {
    if (static_cast<std::size_t>(std::popcount(pat)) != e) continue;
    std::size_t size = 0;
    for (auto w : words) size += (w & ~pat) == 0;
    best = std::max(best, size);
  }
  return best;
}

// List size <= L for every pattern of e erasures iff delta_r N > e, where
// r = 1 + floor(log2 L).
bool list_size_iff(const LinearCode& c, std::size_t& checks) {
  const auto words = oracle::codewords(c);
  const std::size_t len = c.length();
  bool ok = true;
  for (std::size_t e = 0; e <= len; ++e) {
    const std::size_t big = largest_list(words, len, e);
    for (std::size_t L = 1; L < (1ULL << c.dimension()); ++L) {
      const std::size_t r = 1 + static_cast<std::size_t>(std::bit_width(L) - 1);
      const bool decodable = big <= L;
      const bool distance = c.generalized_distance(r) * q(len) > q(e);
      ok = ok && decodable == distance;
      ++checks;
    }
  }
  return ok;
}

void generalized_distances() {
  bool ok = true;
  std::ostringstream d;
  const auto h = hamming74();
  const Rational expect[] = {Rational(3, 7), Rational(5, 7), Rational(6, 7), Rational(1)};
  for (std::size_t r = 1; r <= 4; ++r) {
    const Rational lib = h.generalized_distance(r);
    const Rational brute(static_cast<std::int64_t>(oracle::generalized_weight(h, r)), 7);
    ok = ok && lib == expect[r - 1] && brute == expect[r - 1];
    d << (r > 1 ? "," : "hamming74 ") << lib;
  }
  const Rational p2 = parity_code(3).generalized_distance(2);
  ok = ok && p2 == Rational(1) && oracle::generalized_weight(parity_code(3), 2) == 3;
  d << "; parity[3] delta_2=" << p2;

  std::vector<LinearCode> codes = {hamming74()};
  for (std::size_t deg = 3; deg <= 8; ++deg) {
    codes.push_back(parity_code(deg));
    codes.push_back(repetition_code(deg));
  }
  // Small tensor codes as codes of length N <= 16.
  for (auto [n, c0] : {std::pair<std::size_t, LinearCode>{3, parity_code(3)},
                       std::pair<std::size_t, LinearCode>{4, parity_code(4)},
                       std::pair<std::size_t, LinearCode>{4, repetition_code(4)}}) {
    const ExpanderCode code(complete_bipartite(n), c0);
    codes.push_back(LinearCode::from_generator(code.codeword_basis().transposed(), "tensor"));
  }
  std::size_t checks = 0, bad_codes = 0;
  for (const auto& c : codes)
    if (!list_size_iff(c, checks)) ++bad_codes;
  ok = ok && bad_codes == 0;
  d << "; iff check over " << codes.size() << " codes, " << checks << " (e, L) pairs, " << bad_codes << " failing codes";
  verdict(5, ok, "generalized distances and the list-size characterization", d.str());
}

// ---------------------------------------------------------------- 6

// Codewords of C0 (x) C0 on K_{n,n}, as masks over edge v * n + i, built as
// G0^T X G0 for every k0 x k0 message X.
std::vector<std::uint64_t> tensor_words(const LinearCode& c0) {
  const auto rows = oracle::codewords(c0);
  std::vector<std::uint64_t> gen;
  for (const auto& r : c0.generator().row_vectors()) gen.push_back(oracle::mask_of(r));
  const std::size_t k = gen.size(), n = c0.length();
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (1ULL << (k * k)); ++x) {
    // Row a of X selects a combination of generator rows; left vertex v's
    // view is sum_a G0[a][v] * (X_a G0).
    std::vector<std::uint64_t> xr(k, 0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if ((x >> (a * k + b)) & 1) xr[a] ^= gen[b];
    std::uint64_t word = 0;
    for (std::size_t v = 0; v < n; ++v) {
      std::uint64_t row = 0;
      for (std::size_t a = 0; a < k; ++a)
        if ((gen[a] >> v) & 1) row ^= xr[a];
      word |= row << (v * n);
    }
    out.push_back(word);
  }
  (void)rows;
  return out;
}

std::size_t min_pair_union(std::vector<std::uint64_t> words) {
  words.erase(std::remove(words.begin(), words.end(), 0ULL), words.end());
  std::sort(words.begin(), words.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  std::size_t best = 64;
  for (std::size_t i = 0; i < words.size() && static_cast<std::size_t>(std::popcount(words[i])) < best; ++i)
    for (std::size_t j = i + 1; j < words.size() && static_cast<std::size_t>(std::popcount(words[j])) < best; ++j)
      best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(words[i] | words[j])));
  return best;
}

void second_distance() {
  const Rational eps(1, 100);
  bool ok = true;
  std::ostringstream d;
  struct Case {
    std::size_t n;
    LinearCode c0;
    Rational expected;
  };
  for (const auto& c : {Case{3, parity_code(3), Rational(2, 3)}, Case{7, hamming74(), Rational(15, 49)}}) {
    const ExpanderCode code(complete_bipartite(c.n), c.c0);
    const double lambda = bipartite_lambda(code.graph()).value;
    const Rational delta = c.c0.min_distance(), delta2 = c.c0.generalized_distance(2);
    const Rational m = std::min(delta2, Rational(2) * delta);
    const Rational bound = (Rational(1) - eps) * delta * m;
    const Rational lib = code.second_generalized_distance();
    const Rational brute(static_cast<std::int64_t>(min_pair_union(tensor_words(c.c0))),
                         static_cast<std::int64_t>(code.block_length()));
    const bool hyp = lambda < 1e-9;  // lambda/d = 0 <= delta_2 delta^2 eps^2 / 16
    ok = ok && hyp && lib == brute && lib == c.expected && lib >= bound;
    d << c.c0.name() << " K" << c.n << c.n << ": delta2(C)=" << lib << " oracle=" << brute << " bound=" << bound << "; ";
    if (c.n == 3) {
      const bool tight = lib == delta * m;
      ok = ok && tight;
      d << "equality at eps->0: " << (tight ? "yes" : "no") << "; ";
    }
  }
  verdict(6, ok, "second generalized distance bound on tensor instances", d.str());
}

// ---------------------------------------------------------------- 7

void structural_bounds() {
  std::size_t runs = 0, violations = 0, in_budget = 0;
  SplitMix64 rng(0x7777);
  std::vector<std::pair<std::size_t, LinearCode>> cases;
  for (std::size_t n = 3; n <= 8; ++n) {
    cases.emplace_back(n, parity_code(n));
    cases.emplace_back(n, repetition_code(n));
  }
  cases.emplace_back(7, hamming74());
  cases.emplace_back(8, random_code(8, 4, 3));
  cases.emplace_back(6, random_code(6, 3, 5));
  const Rational epss[] = {Rational(1, 2), Rational(1, 4), Rational(1, 10)};
  for (const auto& [n, c0] : cases) {
    const ExpanderCode code(complete_bipartite(n), c0);
    const double lambda = bipartite_lambda(code.graph()).value;
    for (const auto& eps : epss)
      for (std::size_t r = 1; r <= std::min<std::size_t>(3, c0.dimension()); ++r) {
        const auto p = params(r, eps, lambda);
        const auto t = derive_thresholds(code, p);
        const Rational delta = c0.min_distance(), delta_r = c0.generalized_distance(r);
        const Rational budget = (Rational(1) - eps) * delta * delta_r * q(code.block_length());
        for (int trial = 0; trial < 8; ++trial) {
          const auto e = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(budget.floor()) + 1));
          const auto z = code.erase_count(code.sample_codeword(rng()), e, rng());
          const auto res = list_decode_fast(code, z, p);
          ++runs;
          if (!res.report.regime || !res.report.within_budget) continue;
          ++in_budget;
          const auto bank = build_inner_lists(code, z, p);
          const auto st = global_classes(code, bank, find_heavy_edges(code, bank, t.heavy));
          const Rational pow4 = eps.pow(4) * delta.pow(4);
          const Rational size_bound = pow4 * q(code.degree()) * q(n) / Rational(1LL << (2 * r + 7));
          const Rational count_bound = Rational(1LL << (2 * r + 7)) / pow4;
          const Rational eb_bound = (Rational(1) - eps / Rational(4)) * delta * delta * q(code.block_length());
          bool v = false;
          for (auto s : st.class_sizes) v = v || q(s) < size_bound;
          v = v || q(st.class_count()) > count_bound;
          v = v || q(st.e_b_prime) > eb_bound;
          v = v || st.class_count() != res.report.s_actual || st.e_b_prime != res.report.e_b_prime;
          v = v || res.report.class_size_ok != std::optional<bool>(true) ||
              res.report.class_count_ok != std::optional<bool>(true) ||
              res.report.e_b_prime_ok != std::optional<bool>(true);
          violations += v;
        }
      }
  }
  std::ostringstream d;
  d << runs << " runs, " << in_budget << " in regime and budget, " << violations << " violations";
  verdict(7, in_budget > 0 && violations == 0, "class size, class count and E(B') bounds at lambda = 0", d.str());
}

// ---------------------------------------------------------------- 8

void heavy_edge_fuzz() {
  SplitMix64 rng(0x8888);
  struct Source {
    std::function<BipartiteGraph(std::uint64_t)> graph;
    LinearCode c0;
    Rational eps;
  };
  const std::vector<Source> sources = {
      {[](std::uint64_t) { return complete_bipartite(24); }, repetition_code(24), Rational(9, 10)},
      {[](std::uint64_t s) { return double_cover(random_regular(40, 32, s)); }, repetition_code(32), Rational(9, 10)},
      {[](std::uint64_t s) { return double_cover(random_regular(30, 24, s)); }, repetition_code(24), Rational(9, 10)},
      {[](std::uint64_t s) { return double_cover(random_regular(20, 8, s)); }, parity_code(8), Rational(9, 10)},
      {[](std::uint64_t s) { return double_cover(random_regular(16, 7, s)); }, hamming74(), Rational(1, 2)},
      {[](std::uint64_t) { return complete_bipartite(16); }, random_code(16, 3, 11), Rational(1)},
  };
  std::size_t instances = 0, violations = 0, removed_total = 0;
  for (std::size_t i = 0; i < kFuzzInstances; ++i) {
    const auto& src = sources[i % sources.size()];
    const ExpanderCode code(src.graph(rng()), src.c0);
    const double rate = 0.05 + 0.6 * rng.uniform();
    const auto z = code.erase_rate(code.sample_codeword(rng()), rate, rng());
    const std::size_t r = 1 + rng.below(std::min<std::size_t>(2, src.c0.dimension()));
    const auto p = params(r, src.eps);
    const auto t = derive_thresholds(code, p);
    const auto bank = build_inner_lists(code, z, p);
    if (bank.inconsistent) continue;
    ++instances;
    const auto keep = find_heavy_edges(code, bank, t.heavy);
    bool v = false;
    for (std::uint32_t e = 0; e < code.block_length(); ++e) {
      if (!keep[e]) {
        ++removed_total;
        continue;
      }
      v = v || bank.bad[code.left_end(e)] || bank.bad[code.right_end(e)];
    }
    for (VertexId u = 0; u < code.vertex_count(); ++u) {
      if (bank.bad[u]) continue;
      for (std::size_t s = 0; s < code.degree(); ++s) {
        if (!keep[code.edge_at(u, s)]) continue;
        std::size_t size = 0;
        for (std::size_t j = 0; j < code.degree(); ++j)
          size += keep[code.edge_at(u, j)] && bank.rows[u][j] == bank.rows[u][s];
        v = v || !(q(size) > t.heavy);
      }
    }
    // The surviving set is also the largest one with that property.
    v = v || keep != oracle::heavy_edges_reference(code, bank.bad, bank.rows, t.heavy);
    violations += v;
  }
  std::ostringstream d;
  d << instances << " instances, " << removed_total << " edges removed in total, " << violations << " violations";
  verdict(8, instances >= kFuzzInstances * 9 / 10 && violations == 0, "heavy-edge postcondition", d.str());
}

// ---------------------------------------------------------------- 9

void scaling() {
  const auto t0 = Clock::now();
  std::vector<double> per_edge;
  std::ostringstream d;
  bool all_ok = true;
  for (std::size_t n : {1024, 2048, 4096, 8192}) {
    const ExpanderCode code(double_cover(random_regular(n, 8, 0x5CA1E + n)), parity_code(8));
    // Zero word: sampling a codeword needs the full kernel basis.
    const auto z = code.erase_rate(BitVector(code.block_length()), 0.01, n + 1);
    const auto p = params(2, Rational(1, 2));
    double best = 1e300;
    ListStatus status = ListStatus::Ok;
    for (std::size_t rep = 0; rep < kScalingReps; ++rep) {
      const auto s = Clock::now();
      const auto res = list_decode_fast(code, z, p);
      best = std::min(best, seconds_since(s));
      status = res.status;
    }
    all_ok = all_ok && status == ListStatus::Ok;
    per_edge.push_back(best / static_cast<double>(code.block_length()) * 1e9);
    d << "n=" << n << ": " << per_edge.back() << " ns/edge " << to_string(status) << "; ";
  }
  const double spread = *std::max_element(per_edge.begin(), per_edge.end()) /
                        *std::min_element(per_edge.begin(), per_edge.end());
  const double secs = seconds_since(t0);
  d << "spread " << spread << ", total " << secs << " s";
  verdict(9, all_ok && spread <= kScalingSpread && secs < kScalingSeconds, "linear-time scaling of the fast decoder",
          d.str());
}

}  // namespace

int main() {
  battery_criteria();
  flagship();
  unique_guarantee();
  generalized_distances();
  second_distance();
  structural_bounds();
  heavy_edge_fuzz();
  scaling();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
