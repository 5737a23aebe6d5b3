#include "eec/list_decode.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <queue>
#include <thread>
#include <tuple>

#include "peeling.hpp"

namespace eec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Rational pow2(std::size_t e) {
  if (e > 62) throw std::overflow_error("pow2: exponent too large");
  return Rational(static_cast<std::int64_t>(1) << e);
}

Rational count(std::size_t x) { return Rational(static_cast<std::int64_t>(x)); }

bool bit(std::uint64_t mask, std::size_t i) { return (mask >> i) & 1ULL; }

}  // namespace

std::string to_string(ListStatus status) {
  switch (status) {
    case ListStatus::Ok: return "ok";
    case ListStatus::Stuck: return "stuck";
    case ListStatus::EmptyList: return "empty_list";
    case ListStatus::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

DerivedThresholds derive_thresholds(const ExpanderCode& code, const DecoderParams& params) {
  const LinearCode& c0 = code.inner();
  if (params.r < 1 || params.r > c0.dimension())
    throw std::invalid_argument("decoder: r must satisfy 1 <= r <= k0 (k0 = " + std::to_string(c0.dimension()) + ")");
  if (params.r > 24) throw std::invalid_argument("decoder: r above 24 is not supported");
  if (!(params.epsilon > Rational(0) && params.epsilon <= Rational(1)))
    throw std::invalid_argument("decoder: epsilon must lie in (0, 1]");
  DerivedThresholds t;
  t.delta = c0.min_distance();
  t.delta_r = c0.generalized_distance(params.r);
  const Rational& eps = params.epsilon;
  const Rational e2d2 = eps.pow(2) * t.delta.pow(2);
  const Rational e4d4 = e2d2 * e2d2;
  const Rational d = count(code.degree());
  t.heavy = e2d2 * d / pow2(params.r + 3);
  t.class_count_bound = pow2(2 * params.r + 7) / e4d4;
  t.class_size_bound = e4d4 * d * count(code.side_size()) / pow2(2 * params.r + 7);
  t.erasure_budget = (Rational(1) - eps) * t.delta * t.delta_r * count(code.block_length());
  t.regime_ratio = e2d2 / pow2(params.r + 4);
  return t;
}

bool in_regime(const ExpanderCode& code, const DecoderParams& params) {
  if (!params.lambda) return false;
  const DerivedThresholds t = derive_thresholds(code, params);
  // Eigensolver noise on lambda = 0 instances is far below this slack.
  return *params.lambda / static_cast<double>(code.degree()) <= t.regime_ratio.to_double() + 1e-12;
}

// ---------------------------------------------------------------- inner lists

std::size_t InnerListBank::bad_count() const { return static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1)); }

InnerListBank build_inner_lists(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params) {
  const LinearCode& c0 = code.inner();
  if (params.r < 1 || params.r > c0.dimension())
    throw std::invalid_argument("build_inner_lists: r must satisfy 1 <= r <= k0");
  const Rational delta_r = c0.generalized_distance(params.r);
  const std::size_t d = code.degree();
  const std::size_t vertices = code.vertex_count();
  InnerListBank bank;
  bank.bad.assign(vertices, 0);
  bank.lists.assign(vertices, AffineSpace::empty_set(d));
  bank.rows.assign(vertices, {});
  bank.offsets.assign(vertices, 0);
  for (VertexId v = 0; v < vertices; ++v) {
    ErasedWord view = code.local_view(z, v);
    const auto erasures = static_cast<std::int64_t>(view.erasure_count());
    // More than delta_r d erasures, compared exactly.
    if (erasures * delta_r.den() > delta_r.num() * static_cast<std::int64_t>(d)) {
      bank.bad[v] = 1;
      continue;
    }
    AffineSpace list = erasures == 0 ? (c0.contains(view.values()) ? AffineSpace::point(view.values())
                                                                     : AffineSpace::empty_set(d))
                                     : erasure_list_decode_inner(c0, view);
    if (list.is_empty()) {
      bank.inconsistent = true;
      bank.inconsistent_vertex = v;
      return bank;
    }
    std::vector<std::uint64_t> rows(d, 0);
    const BitMatrix& basis = list.basis();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j)
        if (basis.get(i, j)) rows[i] |= 1ULL << j;
    bank.rows[v] = std::move(rows);
    bank.offsets[v] = list.offset().to_mask();
    bank.lists[v] = std::move(list);
  }
  return bank;
}

// ---------------------------------------------------------------- heavy edges

std::size_t local_class_size(const ExpanderCode& code, const InnerListBank& bank, const std::vector<char>& keep,
                             VertexId v, std::size_t slot) {
  const auto& rows = bank.rows[v];
  std::size_t size = 0;
  for (std::size_t i = 0; i < code.degree(); ++i)
    if (keep[code.edge_at(v, i)] && rows[i] == rows[slot]) ++size;
  return size;
}

std::vector<char> find_heavy_edges(const ExpanderCode& code, const InnerListBank& bank, const Rational& threshold) {
  const std::size_t d = code.degree();
  const std::size_t vertices = code.vertex_count();
  std::vector<char> keep(code.block_length(), 1);
  for (std::uint32_t e = 0; e < keep.size(); ++e)
    if (bank.bad[code.left_end(e)] || bank.bad[code.right_end(e)]) keep[e] = 0;

  auto small = [&](std::size_t size) { return size > 0 && count(size) <= threshold; };
  // Smallest surviving edge id of the class of `slot` at v.
  auto class_key = [&](VertexId v, std::size_t slot) {
    std::uint32_t best = UINT32_MAX;
    for (std::size_t i = 0; i < d; ++i) {
      const auto e = code.edge_at(v, i);
      if (keep[e] && bank.rows[v][i] == bank.rows[v][slot]) best = std::min(best, e);
    }
    return best;
  };
  using Item = std::tuple<std::uint32_t, VertexId, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (VertexId v = 0; v < vertices; ++v) {
    if (bank.bad[v]) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (!keep[code.edge_at(v, i)]) continue;
      if (small(local_class_size(code, bank, keep, v, i))) queue.emplace(class_key(v, i), v, i);
    }
  }
  // Class sizes only shrink, so a queued class stays removable until it is
  // empty; stale entries are skipped.
  while (!queue.empty()) {
    auto [key, v, slot] = queue.top();
    queue.pop();
    if (!keep[code.edge_at(v, slot)]) continue;
    const std::uint64_t row = bank.rows[v][slot];
    std::vector<std::uint32_t> removed;
    for (std::size_t i = 0; i < d; ++i) {
      const auto e = code.edge_at(v, i);
      if (keep[e] && bank.rows[v][i] == row) {
        keep[e] = 0;
        removed.push_back(e);
      }
    }
    for (auto e : removed) {
      const VertexId w = code.other_end(e, v);
      const std::size_t ws = code.slot_at(e, w < code.side_size() ? 0 : 1);
      // Any surviving edge of the same class at w now sits in a smaller class.
      for (std::size_t i = 0; i < d; ++i) {
        const auto f = code.edge_at(w, i);
        if (keep[f] && bank.rows[w][i] == bank.rows[w][ws]) {
          if (small(local_class_size(code, bank, keep, w, i))) queue.emplace(class_key(w, i), w, i);
          break;
        }
      }
    }
  }
  return keep;
}

// ---------------------------------------------------------------- global classes

EquivalenceState global_classes(const ExpanderCode& code, const InnerListBank& bank, std::vector<char> in_e_prime) {
  const std::size_t d = code.degree();
  const std::size_t n_edges = code.block_length();
  EquivalenceState st;
  st.in_e_prime = std::move(in_e_prime);
  st.class_of.assign(n_edges, -1);
  st.offset.assign(n_edges, 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t e = 0; e < n_edges; ++e) {
    if (!st.in_e_prime[e]) continue;
    ++st.e_prime_size;
    if (st.class_of[e] >= 0) continue;
    const auto c = static_cast<std::int32_t>(st.representatives.size());
    st.representatives.push_back(e);
    st.class_of[e] = c;
    std::size_t size = 0;
    queue.assign(1, e);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t f = queue[head];
      ++size;
      for (int side = 0; side < 2; ++side) {
        const VertexId v = side == 0 ? code.left_end(f) : code.right_end(f);
        const std::size_t s = code.slot_at(f, side);
        const auto& rows = bank.rows[v];
        const std::uint64_t b = bank.offsets[v];
        for (std::size_t i = 0; i < d; ++i) {
          const auto g = code.edge_at(v, i);
          if (!st.in_e_prime[g] || st.class_of[g] >= 0 || rows[i] != rows[s]) continue;
          // Same row of G_v: c_g + b_v[i] = c_f + b_v[s].
          st.class_of[g] = c;
          st.offset[g] = static_cast<char>(st.offset[f] ^ bit(b, s) ^ bit(b, i));
          queue.push_back(g);
        }
      }
    }
    st.class_sizes.push_back(size);
  }

  const Rational delta = code.inner().min_distance();
  st.b_prime.assign(code.vertex_count(), 0);
  for (VertexId v = 0; v < code.vertex_count(); ++v) {
    std::int64_t outside = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (!st.in_e_prime[code.edge_at(v, i)]) ++outside;
    if (outside * delta.den() > delta.num() * static_cast<std::int64_t>(d)) {
      st.b_prime[v] = 1;
      ++st.b_prime_count;
    }
  }
  for (std::uint32_t e = 0; e < n_edges; ++e)
    if (st.b_prime[code.left_end(e)] || st.b_prime[code.right_end(e)]) ++st.e_b_prime;
  return st;
}

// ---------------------------------------------------------------- shared program

namespace {

// Everything the two list decoders derive from the classes: edges completed
// locally at vertices outside B', then the iterative decoder's schedule.
struct Program {
  std::vector<detail::Derivation> local;
  std::vector<detail::Check> local_checks;
  detail::PeelOutcome peeled;
};

Program build_program(const ExpanderCode& code, const InnerListBank& bank, const EquivalenceState& st,
                      bool reverse_order) {
  const std::size_t d = code.degree();
  Program prog;
  std::vector<char> labeled = st.in_e_prime;
  for (VertexId v = 0; v < code.vertex_count(); ++v) {
    if (st.b_prime[v] || bank.bad[v]) continue;
    const auto& rows = bank.rows[v];
    const std::uint64_t b = bank.offsets[v];
    // Echelon basis of the rows at E' slots, each with the slot combination
    // that produces it.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> basis;
    auto reduce = [&](std::uint64_t row, std::uint64_t combo) {
      for (const auto& [brow, bcombo] : basis)
        if (row & (brow & (~brow + 1))) {
          row ^= brow;
          combo ^= bcombo;
        }
      return std::pair{row, combo};
    };
    auto edges_of = [&](std::uint64_t combo) {
      std::vector<std::uint32_t> out;
      for (; combo != 0; combo &= combo - 1) out.push_back(code.edge_at(v, static_cast<std::size_t>(std::countr_zero(combo))));
      return out;
    };
    auto parity = [&](std::uint64_t combo) { return (std::popcount(b & combo) & 1) != 0; };
    bool any_open = false;
    for (std::size_t i = 0; i < d; ++i) {
      const auto e = code.edge_at(v, i);
      if (!st.in_e_prime[e]) {
        any_open = any_open || !labeled[e];
        continue;
      }
      auto [row, combo] = reduce(rows[i], 1ULL << i);
      if (row != 0) {
        // Keep the basis sorted by pivot so reduce() clears pivots in order.
        basis.emplace_back(row, combo);
        std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) {
          return std::countr_zero(x.first) < std::countr_zero(y.first);
        });
      } else {
        // Dependent row: sum over combo of (c_k + b_v[k]) = 0.
        prog.local_checks.push_back(detail::Check{edges_of(combo), parity(combo)});
      }
    }
    if (!any_open) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const auto e = code.edge_at(v, i);
      if (labeled[e]) continue;
      auto [row, combo] = reduce(rows[i], 0);
      if (row != 0) continue;
      // c_e = b_v[i] + sum over combo of (c_k + b_v[k]).
      prog.local.push_back(detail::Derivation{e, edges_of(combo), static_cast<bool>(parity(combo) ^ bit(b, i))});
      labeled[e] = 1;
    }
  }
  detail::LocalSolver solver(code.inner());
  prog.peeled = detail::peel(code, labeled, solver, reverse_order);
  return prog;
}

struct Prepared {
  InnerListBank bank;
  EquivalenceState state;
  DecodeReport report;
  bool regime = false;
};

// Stages shared by both decoders: inner lists, heavy edges, classes.
Prepared prepare(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params) {
  if (z.size() != code.block_length()) throw std::invalid_argument("list decoder: received word length mismatch");
  if (code.degree() > 64) throw std::length_error("list decoder: inner code length must be <= 64");
  Prepared p;
  DecodeReport& rep = p.report;
  rep.thresholds = derive_thresholds(code, params);
  rep.erasures = z.erasure_count();
  rep.regime = in_regime(code, params);
  rep.within_budget = count(rep.erasures) <= rep.thresholds.erasure_budget;

  auto start = Clock::now();
  p.bank = build_inner_lists(code, z, params);
  rep.timings["inner_lists"] = seconds_since(start);
  rep.bad = p.bank.bad_count();
  if (p.bank.inconsistent) {
    rep.status = ListStatus::Inconsistent;
    return p;
  }
  start = Clock::now();
  auto keep = find_heavy_edges(code, p.bank, rep.thresholds.heavy);
  rep.timings["heavy_edges"] = seconds_since(start);
  start = Clock::now();
  p.state = global_classes(code, p.bank, std::move(keep));
  rep.timings["classes"] = seconds_since(start);
  rep.e_prime = p.state.e_prime_size;
  rep.b_prime = p.state.b_prime_count;
  rep.e_b_prime = p.state.e_b_prime;
  rep.s_actual = p.state.class_count();
  rep.smallest_class =
      p.state.class_sizes.empty() ? 0 : *std::min_element(p.state.class_sizes.begin(), p.state.class_sizes.end());
  p.regime = rep.regime && rep.within_budget;
  if (p.regime) {
    const DerivedThresholds& t = rep.thresholds;
    rep.class_size_ok = std::all_of(p.state.class_sizes.begin(), p.state.class_sizes.end(),
                                    [&](std::size_t s) { return count(s) >= t.class_size_bound; });
    rep.class_count_ok = count(rep.s_actual) <= t.class_count_bound;
    const Rational lambda = approximate_rational(*params.lambda);
    const Rational d = count(code.degree());
    const Rational bound = (Rational(1) - params.epsilon / Rational(4)) * (t.delta - lambda / d) * t.delta *
                           count(code.block_length());
    rep.e_b_prime_ok = count(rep.e_b_prime) <= bound;
  }
  return p;
}

void record_schedule(DecodeReport& rep, const DecodeSchedule& s) {
  rep.frontier = s.frontier;
  rep.inner_decodes = s.inner_decodes;
}

}  // namespace

// ---------------------------------------------------------------- fast path

CandidateResult find_candidates(const ExpanderCode& code, const InnerListBank& bank, const EquivalenceState& st,
                                bool reverse_order) {
  const std::size_t n_edges = code.block_length();
  const std::size_t s = st.class_count();
  Program prog = build_program(code, bank, st, reverse_order);
  CandidateResult out;
  CandidateSystem& sys = out.system;
  sys.schedule = prog.peeled.schedule;
  if (sys.schedule.status == ScheduleStatus::Stuck) {
    out.status = ListStatus::Stuck;
    return out;
  }

  // A^(0), b^(0): one unit row per E' edge.
  sys.A.assign(n_edges, BitVector(s));
  sys.b = BitVector(n_edges);
  for (std::uint32_t e = 0; e < n_edges; ++e) {
    if (st.class_of[e] < 0) continue;
    sys.A[e].set(static_cast<std::size_t>(st.class_of[e]));
    sys.b.set(e, st.offset[e]);
  }
  auto apply = [&](const detail::Derivation& step) {
    BitVector row(s);
    bool rhs = step.constant;
    for (auto src : step.sources) {
      row ^= sys.A[src];
      rhs ^= sys.b.get(src);
    }
    sys.A[step.edge] = std::move(row);
    sys.b.set(step.edge, rhs);
  };
  for (const auto& step : prog.local) apply(step);
  for (const auto& step : prog.peeled.derivations) apply(step);

  // Rows of HA streamed into a row basis together with Hb.
  auto parity_row = [&](std::size_t r, BitVector& row, bool& rhs) {
    row = BitVector(s);
    rhs = false;
    for (auto e : code.parity_row_support(r)) {
      row ^= sys.A[e];
      rhs ^= sys.b.get(e);
    }
  };
  EchelonBasis basis(s);
  BitVector row;
  bool rhs = false;
  for (std::size_t r = 0; r < code.parity_row_count(); ++r) {
    parity_row(r, row, rhs);
    if (basis.insert(row, rhs) == EchelonBasis::Insert::Inconsistent) {
      out.status = ListStatus::EmptyList;
      return out;
    }
  }
  const AffineSpace w = basis.solve();
  sys.A_hat = w.basis();
  sys.b_hat = w.offset();
  for (std::size_t r = 0; r < code.parity_row_count(); ++r) {
    parity_row(r, row, rhs);
    if (row.dot(sys.b_hat) != rhs) {
      out.status = ListStatus::EmptyList;
      return out;
    }
  }
  out.status = ListStatus::Ok;
  return out;
}

FastDecodeResult list_decode_fast(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params) {
  FastDecodeResult result;
  Prepared p = prepare(code, z, params);
  DecodeReport& rep = p.report;
  if (rep.status == ListStatus::Inconsistent) {
    result.status = rep.status;
    result.report = std::move(rep);
    return result;
  }
  auto start = Clock::now();
  CandidateResult cand = find_candidates(code, p.bank, p.state);
  rep.timings["find_candidates"] = seconds_since(start);
  record_schedule(rep, cand.system.schedule);
  if (cand.status != ListStatus::Ok) {
    rep.status = cand.status;
    result.status = cand.status;
    result.report = std::move(rep);
    return result;
  }

  start = Clock::now();
  const CandidateSystem& sys = cand.system;
  const std::size_t n_edges = code.block_length();
  const std::size_t a1 = sys.A_hat.cols();
  rep.a_unrestricted = a1;
  const std::vector<BitVector> hat_cols = sys.A_hat.columns();
  // L = A A_hat and ell = A b_hat + b, row by row.
  std::vector<BitVector> l_rows(n_edges, BitVector(a1));
  BitVector ell(n_edges);
  for (std::size_t e = 0; e < n_edges; ++e) {
    for (std::size_t j = 0; j < a1; ++j)
      if (sys.A[e].dot(hat_cols[j])) l_rows[e].set(j);
    ell.set(e, sys.A[e].dot(sys.b_hat) ^ sys.b.get(e));
  }
  // Agreement with z on every unerased coordinate.
  EchelonBasis agree(a1);
  for (std::size_t e = 0; e < n_edges; ++e) {
    if (z.is_erased(e)) continue;
    if (agree.insert(l_rows[e], z.values().get(e) ^ ell.get(e)) == EchelonBasis::Insert::Inconsistent) {
      rep.timings["assemble"] = seconds_since(start);
      rep.status = ListStatus::EmptyList;
      result.status = rep.status;
      result.report = std::move(rep);
      return result;
    }
  }
  const AffineSpace restricted = agree.solve();
  const std::vector<BitVector> k_cols = restricted.basis().columns();
  const std::size_t a = k_cols.size();
  BitMatrix final_l(n_edges, a);
  BitVector final_ell(n_edges);
  for (std::size_t e = 0; e < n_edges; ++e) {
    for (std::size_t j = 0; j < a; ++j)
      if (l_rows[e].dot(k_cols[j])) final_l.set(e, j);
    final_ell.set(e, l_rows[e].dot(restricted.offset()) ^ ell.get(e));
  }
  result.list = ListDescription::from_affine(AffineSpace(std::move(final_ell), std::move(final_l)).canonical());
  rep.timings["assemble"] = seconds_since(start);
  rep.a = a;
  if (p.regime) rep.list_dimension_ok = count(a) <= rep.thresholds.class_count_bound;
  rep.status = ListStatus::Ok;
  result.status = ListStatus::Ok;
  result.report = std::move(rep);
  return result;
}

// ---------------------------------------------------------------- slow path

SlowDecodeResult list_decode_slow(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params) {
  SlowDecodeResult result;
  Prepared p = prepare(code, z, params);
  DecodeReport& rep = p.report;
  auto finish = [&](ListStatus status) {
    rep.status = status;
    result.status = status;
    result.report = std::move(rep);
    return std::move(result);
  };
  if (rep.status == ListStatus::Inconsistent) return finish(rep.status);
  const std::size_t s = p.state.class_count();
  if (s > params.s_cap || s > 30) throw AdviceTooLarge(s, params.s_cap);

  auto start = Clock::now();
  const Program prog = build_program(code, p.bank, p.state, false);
  record_schedule(rep, prog.peeled.schedule);
  if (prog.peeled.schedule.status == ScheduleStatus::Stuck) {
    rep.timings["advice"] = seconds_since(start);
    return finish(ListStatus::Stuck);
  }

  const std::size_t n_edges = code.block_length();
  std::vector<std::uint32_t> e_prime;
  for (std::uint32_t e = 0; e < n_edges; ++e)
    if (p.state.class_of[e] >= 0) e_prime.push_back(e);

  // Completes one advice string; empty optional when it is rejected.
  auto evaluate = [&](std::uint64_t advice) -> std::optional<BitVector> {
    BitVector y(n_edges);
    for (auto e : e_prime)
      y.set(e, bit(advice, static_cast<std::size_t>(p.state.class_of[e])) ^ (p.state.offset[e] != 0));
    auto holds = [&](const detail::Check& c) {
      bool v = c.constant;
      for (auto src : c.sources) v ^= y.get(src);
      return !v;
    };
    auto derive = [&](const detail::Derivation& step) {
      bool v = step.constant;
      for (auto src : step.sources) v ^= y.get(src);
      y.set(step.edge, v);
    };
    for (const auto& c : prog.local_checks)
      if (!holds(c)) return std::nullopt;
    for (const auto& step : prog.local) derive(step);
    for (const auto& step : prog.peeled.derivations) derive(step);
    for (const auto& c : prog.peeled.checks)
      if (!holds(c)) return std::nullopt;
    if (!z.agrees_with(y) || !code.is_codeword(y)) return std::nullopt;
    return y;
  };

  const std::uint64_t total = 1ULL << s;
  std::vector<std::optional<BitVector>> found(total);
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(params.threads, total));
  if (threads == 1) {
    for (std::uint64_t x = 0; x < total; ++x) found[x] = evaluate(x);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t x = t; x < total; x += threads) found[x] = evaluate(x);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& w : found) {
    if (w)
      result.words.push_back(std::move(*w));
    else
      ++rep.advice_rejected;
  }
  std::sort(result.words.begin(), result.words.end());
  result.words.erase(std::unique(result.words.begin(), result.words.end()), result.words.end());
  rep.timings["advice"] = seconds_since(start);
  // A nonempty list is an affine space, so its size is a power of two.
  if (!result.words.empty()) rep.a = static_cast<std::size_t>(std::countr_zero(result.words.size()));
  return finish(result.words.empty() ? ListStatus::EmptyList : ListStatus::Ok);
}

}  // namespace eec
