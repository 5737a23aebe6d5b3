#include "eec/unique_decode.hpp"

#include "peeling.hpp"

namespace eec {

std::size_t DecodeSchedule::solving_rounds() const {
  std::size_t count = 0;
  for (const auto& r : rounds)
    if (r.t >= 2 && !r.edges.empty()) ++count;
  return count;
}

std::size_t DecodeSchedule::labeled_edges() const {
  std::size_t count = 0;
  for (const auto& r : rounds) count += r.edges.size();
  return count;
}

bool frontier_decay_holds(const DecodeSchedule& schedule, const Rational& epsilon) {
  const Rational factor = (Rational(1) + epsilon).pow(2);
  for (std::size_t t = 2; t + 1 < schedule.frontier.size(); ++t)
    if (factor * Rational(static_cast<std::int64_t>(schedule.frontier[t + 1])) >
        Rational(static_cast<std::int64_t>(schedule.frontier[t])))
      return false;
  return true;
}

UniqueDecodeResult unique_decode(const ExpanderCode& code, const ErasedWord& z, const UniqueDecodeOptions& options) {
  if (z.size() != code.block_length()) throw std::invalid_argument("unique_decode: length mismatch");
  std::vector<char> labeled(code.block_length());
  for (std::size_t e = 0; e < labeled.size(); ++e) labeled[e] = !z.is_erased(e);

  detail::LocalSolver solver(code.inner());
  detail::PeelOutcome peeled = detail::peel(code, labeled, solver, options.reverse_order);

  UniqueDecodeResult result;
  BitVector values = z.values();
  for (const auto& step : peeled.derivations) {
    bool v = step.constant;
    for (auto s : step.sources) v ^= values.get(s);
    values.set(step.edge, v);
  }
  result.schedule = std::move(peeled.schedule);
  for (const auto& check : peeled.checks) {
    bool v = check.constant;
    for (auto s : check.sources) v ^= values.get(s);
    if (v) {
      result.status = UniqueStatus::Inconsistent;
      return result;
    }
  }
  if (result.schedule.status == ScheduleStatus::Stuck) {
    result.status = UniqueStatus::Stuck;
    return result;
  }
  // Vertices that were fully labeled from the start are never decoded, so
  // their views are only verified here.
  if (!code.is_codeword(values)) {
    result.status = UniqueStatus::Inconsistent;
    return result;
  }
  result.status = UniqueStatus::Complete;
  result.codeword = std::move(values);
  return result;
}

ErasureGuarantee max_guaranteed_erasures(const ExpanderCode& code, const Rational& lambda, const Rational& epsilon) {
  const Rational delta = code.inner().min_distance();
  const Rational d(static_cast<std::int64_t>(code.degree()));
  const Rational ratio = lambda / d;
  ErasureGuarantee g;
  g.hypothesis_holds = ratio < delta / Rational(2);
  const Rational bound = (Rational(1) - epsilon) * delta * (delta - ratio) *
                         Rational(static_cast<std::int64_t>(code.block_length()));
  g.count = bound > Rational(0) ? static_cast<std::size_t>(bound.floor()) : 0;
  return g;
}

}  // namespace eec
