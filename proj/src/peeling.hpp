#pragma once

// Structural peeling shared by the unique decoder and both list decoders.
// The schedule depends only on which edges are labeled, never on values, so
// it is computed once and replayed either on bits or on affine rows.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "eec/expander_code.hpp"
#include "eec/unique_decode.hpp"

namespace eec::detail {

/// value(edge) = constant ^ XOR of value(sources).
struct Derivation {
  std::uint32_t edge;
  std::vector<std::uint32_t> sources;
  bool constant = false;
};

/// XOR of value(sources) must equal `constant`.
struct Check {
  std::vector<std::uint32_t> sources;
  bool constant = false;
};

struct LocalSolution {
  bool determined = true;
  /// (slot, mask over known slots) for every unknown slot.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> assignments;
  /// Masks over known slots whose XOR must vanish.
  std::vector<std::uint64_t> checks;
};

/// Completes a local view of C0 from the known slots, cached per erasure mask.
class LocalSolver {
 public:
  explicit LocalSolver(const LinearCode& code);
  const LocalSolution& solve(std::uint64_t unknown);

 private:
  std::size_t d_;
  std::vector<std::uint64_t> parity_;
  std::unordered_map<std::uint64_t, LocalSolution> cache_;
};

struct PeelOutcome {
  DecodeSchedule schedule;
  std::vector<Derivation> derivations;
  std::vector<Check> checks;
};

/// Runs the alternating-sides decoder on the labeled set. `labeled` has one
/// entry per edge and is not modified.
PeelOutcome peel(const ExpanderCode& code, const std::vector<char>& labeled, LocalSolver& solver,
                 bool reverse_order = false);

inline std::uint64_t low_mask(std::size_t bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1); }

}  // namespace eec::detail
