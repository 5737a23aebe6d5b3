#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eec/expander_code.hpp"
#include "eec/rational.hpp"
#include "eec/unique_decode.hpp"

namespace eec {

struct DecoderParams {
  /// List-size exponent; must satisfy 1 <= r <= k0.
  std::size_t r = 2;
  /// In (0, 1].
  Rational epsilon{1, 2};
  /// Largest class count the slow decoder will exhaust over.
  std::size_t s_cap = 12;
  /// Expansion of the graph, if known; only used for regime checks.
  std::optional<double> lambda;
  /// Worker threads for the slow decoder's advice loop.
  std::size_t threads = 1;
};

/// Thresholds derived from the parameters, all exact.
struct DerivedThresholds {
  Rational delta;
  Rational delta_r;
  /// eps^2 delta^2 d / 2^(r+3).
  Rational heavy;
  /// 2^(2r+7) / (eps^4 delta^4).
  Rational class_count_bound;
  /// eps^4 delta^4 d n / 2^(2r+7).
  Rational class_size_bound;
  /// (1 - eps) delta delta_r N.
  Rational erasure_budget;
  /// eps^2 delta^2 / 2^(r+4), compared against lambda / d.
  Rational regime_ratio;
};

DerivedThresholds derive_thresholds(const ExpanderCode& code, const DecoderParams& params);
/// lambda / d <= eps^2 delta^2 / 2^(r+4); false when lambda is unknown.
bool in_regime(const ExpanderCode& code, const DecoderParams& params);

/// Per-vertex inner lists. Vertex ids follow ExpanderCode (left 0..n-1,
/// right n..2n-1).
struct InnerListBank {
  std::vector<char> bad;
  /// Canonical L_v for v not in B; empty_set placeholder for v in B.
  std::vector<AffineSpace> lists;
  /// rows[v][i] = row i of G_v as a mask over its r_v columns.
  std::vector<std::vector<std::uint64_t>> rows;
  /// b_v as a mask over slots.
  std::vector<std::uint64_t> offsets;
  bool inconsistent = false;
  /// First vertex with an empty list when inconsistent.
  VertexId inconsistent_vertex = 0;

  std::size_t bad_count() const;
  std::size_t dimension(VertexId v) const { return lists[v].dimension(); }
};

/// Bad vertices (more than delta_r d erasures, strict) and the canonical
/// inner lists elsewhere.
InnerListBank build_inner_lists(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params);

/// Heavy-edge filter: drops every edge at a bad vertex, then repeatedly drops
/// local classes of size <= threshold within the surviving set. Returns the
/// membership flag per edge of E'.
std::vector<char> find_heavy_edges(const ExpanderCode& code, const InnerListBank& bank, const Rational& threshold);

struct EquivalenceState {
  std::vector<char> in_e_prime;
  std::size_t e_prime_size = 0;
  /// Global class per edge, -1 outside E'.
  std::vector<std::int32_t> class_of;
  /// Smallest edge id of each class.
  std::vector<std::uint32_t> representatives;
  std::vector<std::size_t> class_sizes;
  /// c_e = c_rep + offset[e] for every list member c.
  std::vector<char> offset;
  /// Vertices with more than delta d incident edges outside E'.
  std::vector<char> b_prime;
  std::size_t b_prime_count = 0;
  /// Number of edges touching B'.
  std::size_t e_b_prime = 0;

  std::size_t class_count() const { return representatives.size(); }
};

/// Partition of E' by breadth-first search over shared local classes, plus
/// B'. `in_e_prime` normally comes from find_heavy_edges.
EquivalenceState global_classes(const ExpanderCode& code, const InnerListBank& bank, std::vector<char> in_e_prime);

/// Size of the local class of edge e at vertex v among edges with keep[] set.
std::size_t local_class_size(const ExpanderCode& code, const InnerListBank& bank, const std::vector<char>& keep,
                             VertexId v, std::size_t slot);

enum class ListStatus { Ok, Stuck, EmptyList, Inconsistent };

std::string to_string(ListStatus status);

class AdviceTooLarge : public std::runtime_error {
 public:
  AdviceTooLarge(std::size_t classes, std::size_t cap)
      : std::runtime_error("slow list decoder: " + std::to_string(classes) + " classes exceed the advice cap of " +
                           std::to_string(cap)),
        classes_(classes) {}
  std::size_t classes() const { return classes_; }

 private:
  std::size_t classes_;
};

struct DecodeReport {
  ListStatus status = ListStatus::Ok;
  std::size_t erasures = 0;
  bool regime = false;
  /// Erasure count within (1 - eps) delta delta_r N.
  bool within_budget = false;
  std::size_t bad = 0;
  std::size_t e_prime = 0;
  std::size_t b_prime = 0;
  std::size_t e_b_prime = 0;
  std::size_t s_actual = 0;
  /// Dimension after the parity system, before the agreement restriction.
  std::size_t a_unrestricted = 0;
  std::size_t a = 0;
  std::size_t smallest_class = 0;
  std::vector<std::size_t> frontier;
  std::size_t inner_decodes = 0;
  /// Advice assignments rejected as inconsistent (slow decoder).
  std::size_t advice_rejected = 0;
  DerivedThresholds thresholds;
  /// Bound checks; only evaluated for in-regime runs within budget.
  std::optional<bool> class_size_ok;
  std::optional<bool> class_count_ok;
  std::optional<bool> e_b_prime_ok;
  std::optional<bool> list_dimension_ok;
  /// Seconds per stage.
  std::map<std::string, double> timings;
};

/// Affine system c = A x + b over the class representatives x, with the
/// admissible x forming {A_hat y + b_hat}.
struct CandidateSystem {
  /// Row e of A, width s_actual.
  std::vector<BitVector> A;
  BitVector b;
  BitMatrix A_hat;
  BitVector b_hat;
  DecodeSchedule schedule;
};

struct CandidateResult {
  ListStatus status = ListStatus::Ok;
  CandidateSystem system;
};

CandidateResult find_candidates(const ExpanderCode& code, const InnerListBank& bank, const EquivalenceState& state,
                                bool reverse_order = false);

struct FastDecodeResult {
  ListStatus status = ListStatus::Ok;
  /// Canonical description; set when status == Ok.
  ListDescription list;
  DecodeReport report;
};

/// Returns List_C(z) as {L x + ell}, or a status explaining why not.
FastDecodeResult list_decode_fast(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params);

struct SlowDecodeResult {
  ListStatus status = ListStatus::Ok;
  /// Sorted, without duplicates.
  std::vector<BitVector> words;
  DecodeReport report;
};

/// Exhausts over all 2^s assignments to the class representatives. Throws
/// AdviceTooLarge when s exceeds params.s_cap.
SlowDecodeResult list_decode_slow(const ExpanderCode& code, const ErasedWord& z, const DecoderParams& params);

}  // namespace eec
