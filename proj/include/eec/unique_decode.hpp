#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eec/expander_code.hpp"
#include "eec/rational.hpp"

namespace eec {

enum class ScheduleStatus { Complete, Stuck };

/// One round of the iterative decoder. Round t = 1 is the initially labeled
/// set; for t >= 2, `solvers[i]` is the vertex whose local decode labeled
/// `edges[i]`.
struct ScheduleRound {
  std::size_t t = 0;
  std::vector<std::uint32_t> edges;
  std::vector<VertexId> solvers;
};

struct DecodeSchedule {
  std::vector<ScheduleRound> rounds;
  /// frontier[t] = |P_t|, starting at t = 0.
  std::vector<std::size_t> frontier;
  ScheduleStatus status = ScheduleStatus::Complete;
  /// Vertices still touching unlabeled edges when the decoder got stuck.
  std::vector<VertexId> stuck_frontier;
  std::size_t inner_decodes = 0;

  /// Rounds t >= 2 that labeled at least one edge.
  std::size_t solving_rounds() const;
  std::size_t labeled_edges() const;
};

/// |P_{t+1}| * (1 + eps)^2 <= |P_t| for every t >= 2 recorded in the schedule.
bool frontier_decay_holds(const DecodeSchedule& schedule, const Rational& epsilon);

enum class UniqueStatus { Complete, Stuck, Inconsistent };

struct UniqueDecodeResult {
  UniqueStatus status = UniqueStatus::Complete;
  /// The decoded codeword when status == Complete.
  BitVector codeword;
  DecodeSchedule schedule;
};

struct UniqueDecodeOptions {
  /// Process the frontier in descending vertex order instead of ascending.
  bool reverse_order = false;
};

/// Iterative erasure decoder: repeatedly completes the local view of every
/// frontier vertex with more than (1 - delta) d labeled edges, alternating
/// sides. Requires d <= 64.
UniqueDecodeResult unique_decode(const ExpanderCode& code, const ErasedWord& z, const UniqueDecodeOptions& options = {});

struct ErasureGuarantee {
  /// floor((1 - eps) delta (delta - lambda/d) N), clamped at 0.
  std::size_t count = 0;
  /// Whether lambda/d < delta/2.
  bool hypothesis_holds = false;
};

ErasureGuarantee max_guaranteed_erasures(const ExpanderCode& code, const Rational& lambda, const Rational& epsilon);

}  // namespace eec
