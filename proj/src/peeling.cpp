#include "peeling.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace eec::detail {

LocalSolver::LocalSolver(const LinearCode& code) : d_(code.length()) {
  if (d_ > 64) throw std::length_error("decoders require inner code length <= 64");
  parity_ = code.parity_masks();
}

const LocalSolution& LocalSolver::solve(std::uint64_t unknown) {
  if (auto it = cache_.find(unknown); it != cache_.end()) return it->second;
  std::vector<std::uint64_t> rows = parity_;
  std::vector<std::pair<std::uint32_t, std::size_t>> pivots;
  std::size_t next = 0;
  LocalSolution out;
  for (std::uint64_t rest = unknown; rest != 0; rest &= rest - 1) {
    const int u = std::countr_zero(rest);
    const std::uint64_t bit = 1ULL << u;
    std::size_t p = next;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) {
      out.determined = false;
      continue;
    }
    std::swap(rows[p], rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != next && (rows[r] & bit)) rows[r] ^= rows[next];
    pivots.emplace_back(static_cast<std::uint32_t>(u), next);
    ++next;
  }
  for (auto [u, r] : pivots) out.assignments.emplace_back(u, rows[r] & ~unknown);
  for (std::size_t r = next; r < rows.size(); ++r)
    if (rows[r] != 0) out.checks.push_back(rows[r]);
  return cache_.emplace(unknown, std::move(out)).first->second;
}

namespace {

std::vector<std::uint32_t> edges_of_mask(const ExpanderCode& code, VertexId v, std::uint64_t mask) {
  std::vector<std::uint32_t> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(code.edge_at(v, static_cast<std::size_t>(std::countr_zero(mask))));
  return out;
}

}  // namespace

PeelOutcome peel(const ExpanderCode& code, const std::vector<char>& labeled_in, LocalSolver& solver,
                 bool reverse_order) {
  const std::size_t n = code.side_size();
  const std::size_t d = code.degree();
  const Rational delta = code.inner().min_distance();
  // labeled > (1 - delta) d  <=>  labeled * den > (den - num) * d.
  const auto den = static_cast<std::size_t>(delta.den());
  const auto slack = static_cast<std::size_t>(delta.den() - delta.num()) * d;

  std::vector<char> labeled = labeled_in;
  PeelOutcome out;
  DecodeSchedule& sched = out.schedule;

  ScheduleRound first;
  first.t = 1;
  for (std::size_t e = 0; e < labeled.size(); ++e)
    if (labeled[e]) first.edges.push_back(static_cast<std::uint32_t>(e));
  sched.rounds.push_back(std::move(first));

  // P_0 on the right, P_1 on the left.
  std::vector<VertexId> p0, p1;
  for (VertexId v = 0; v < 2 * n; ++v) {
    bool touches = false;
    for (std::size_t i = 0; i < d && !touches; ++i) touches = !labeled[code.edge_at(v, i)];
    if (touches) (v < n ? p1 : p0).push_back(v);
  }
  sched.frontier = {p0.size(), p1.size()};

  std::vector<char> mark(2 * n, 0);
  std::vector<VertexId> current = std::move(p1);
  bool previous_progress = true;
  for (std::size_t t = 2;; ++t) {
    if (current.empty()) {
      if (std::find(labeled.begin(), labeled.end(), 0) != labeled.end())
        throw std::logic_error("peel: empty frontier with unlabeled edges");
      sched.status = ScheduleStatus::Complete;
      break;
    }
    if (reverse_order) std::reverse(current.begin(), current.end());
    ScheduleRound round;
    round.t = t;
    std::vector<VertexId> remaining;
    for (VertexId v : current) {
      std::uint64_t unknown = 0;
      std::size_t known = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (labeled[code.edge_at(v, i)])
          ++known;
        else
          unknown |= 1ULL << i;
      }
      // Vertices on one side share no edges, so labeling here does not change
      // the counts of the others in this round.
      if (known * den > slack) {
        const LocalSolution& sol = solver.solve(unknown);
        if (!sol.determined) throw std::logic_error("peel: local system underdetermined above threshold");
        for (const auto& [slot, mask] : sol.assignments) {
          const auto e = code.edge_at(v, slot);
          out.derivations.push_back(Derivation{e, edges_of_mask(code, v, mask), false});
          labeled[e] = 1;
          round.edges.push_back(e);
          round.solvers.push_back(v);
        }
        for (auto mask : sol.checks) out.checks.push_back(Check{edges_of_mask(code, v, mask), false});
        ++sched.inner_decodes;
      } else {
        remaining.push_back(v);
      }
    }
    std::vector<VertexId> next;
    for (VertexId v : remaining)
      for (std::size_t i = 0; i < d; ++i) {
        const auto e = code.edge_at(v, i);
        if (labeled[e]) continue;
        const VertexId u = code.other_end(e, v);
        if (!mark[u]) {
          mark[u] = 1;
          next.push_back(u);
        }
      }
    for (VertexId u : next) mark[u] = 0;
    std::sort(next.begin(), next.end());
    sched.frontier.push_back(next.size());
    const bool progress = !round.edges.empty();
    sched.rounds.push_back(std::move(round));
    if (!progress && !previous_progress) {
      sched.status = ScheduleStatus::Stuck;
      std::vector<VertexId> stuck = remaining;
      stuck.insert(stuck.end(), next.begin(), next.end());
      std::sort(stuck.begin(), stuck.end());
      stuck.erase(std::unique(stuck.begin(), stuck.end()), stuck.end());
      sched.stuck_frontier = std::move(stuck);
      break;
    }
    previous_progress = progress;
    current = std::move(next);
  }
  return out;
}

}  // namespace eec::detail
