// search.hpp: exhaustive enumeration of instruction sequences of a fixed length.
//
// The unpruned mode visits every candidate of the search space and is the
// ground truth. Each PruneRule is an opt-in acceleration whose soundness is
// checked against the unpruned verdicts in the test suite:
//
//   drop_jump0            A computing program never reaches #0, so every #0 can
//                         be replaced by ! at equal length.
//   drop_jump1            strip_skips yields an equivalent shorter #1-free program;
//                         prepending plain out.set:f pads it back to the same length.
//   drop_plain_input_get  A plain in:i.get behaves as #1; same argument.
//   canonical_overshoot   All jumps from position p that leave the program are
//                         equivalent; only offset L-p+1 is kept.
//   frontier_memo         Prefixes are evaluated on all inputs; once some execution
//                         has resolved wrongly the subtree is abandoned, and once
//                         all have resolved correctly the subtree is counted whole.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regseq/functions.hpp"
#include "regseq/isa.hpp"

namespace regseq {

enum class PruneRule : std::uint8_t {
  drop_jump0,
  drop_jump1,
  drop_plain_input_get,
  canonical_overshoot,
  frontier_memo,
};

inline constexpr PruneRule kAllPruneRules[] = {
    PruneRule::drop_jump0, PruneRule::drop_jump1, PruneRule::drop_plain_input_get,
    PruneRule::canonical_overshoot, PruneRule::frontier_memo};

std::string_view prune_rule_name(PruneRule rule) noexcept;
std::optional<PruneRule> prune_rule_from_name(std::string_view name) noexcept;

class PruneRules {
 public:
  PruneRules() = default;
  PruneRules(std::initializer_list<PruneRule> rules) {
    for (auto r : rules) insert(r);
  }
  static PruneRules all();
  /// Comma-separated rule names; empty string or "none" gives the empty set.
  static PruneRules parse(std::string_view list);

  void insert(PruneRule r) noexcept { bits_ |= mask(r); }
  bool has(PruneRule r) const noexcept { return (bits_ & mask(r)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::vector<PruneRule> list() const;

  bool operator==(const PruneRules&) const = default;

 private:
  static std::uint8_t mask(PruneRule r) noexcept {
    return static_cast<std::uint8_t>(1U << static_cast<unsigned>(r));
  }
  std::uint8_t bits_ = 0;
};

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000'000ULL;

struct SearchConstraints {
  std::uint32_t n_inputs = 0;
  std::uint32_t k_aux = 0;
  bool allow_neg = true;
  bool allow_aux_set = true;
  std::uint32_t max_len = 1;
  PruneRules pruning;

  bool operator==(const SearchConstraints&) const = default;
};

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t step_budget = kDefaultStepBudget;
  /// Shards handed out per worker; only affects load balance.
  unsigned shards_per_worker = 8;
};

/// The step budget ran out before the search finished.
class SearchAborted : public std::runtime_error {
 public:
  explicit SearchAborted(std::uint64_t budget);
};

/// Symbols allowed at each position of a fixed-length candidate, as indices
/// into `alphabet.symbols`, in canonical order.
struct SearchSpace {
  Alphabet alphabet;
  std::size_t length = 0;
  std::vector<std::vector<std::uint16_t>> positions;

  /// Product of the per-position symbol counts.
  std::uint64_t candidates() const;
  std::uint64_t candidates_from(std::size_t depth) const;
};

/// Alphabet over in:1..n, out, aux:1..k with jumps #0..#length, filtered by the
/// alphabet-shaping prune rules.
SearchSpace make_search_space(const SearchConstraints& c, std::size_t length);
SearchSpace make_search_space(Alphabet alphabet, std::size_t length, const PruneRules& pruning);

/// A contiguous range of leading-symbol prefixes of the given depth, numbered
/// in mixed radix with position 1 most significant.
struct Shard {
  std::size_t prefix_depth = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  bool operator==(const Shard&) const = default;
};

std::vector<Shard> partition(const SearchSpace& space, std::size_t shard_count);
std::vector<Shard> partition(std::size_t length, const Alphabet& alphabet, std::size_t shard_count);

struct LengthStats {
  std::size_t length = 0;
  std::size_t alphabet_size = 0;  // symbols allowed at position 1
  std::uint64_t candidates = 0;  // size of the (rule-filtered) space
  std::uint64_t evaluated = 0;   // candidates run to the last position
  std::uint64_t computing = 0;   // candidates computing the target
  bool exists = false;

  bool operator==(const LengthStats&) const = default;
};

struct Witness {
  InstructionSequence sequence;
  ComputeVerdict verdict;
};

struct ExistsResult {
  std::optional<Witness> witness;  // lexicographically first in alphabet order
  LengthStats stats;
  std::uint64_t vm_steps = 0;
};

/// Enumerates `space` against `target`. The environment has target.arity()
/// inputs and `env_aux` auxiliaries; symbols naming other registers resolve as
/// invalid accesses.
ExistsResult search_space(const TruthTable& target, const SearchSpace& space, std::uint32_t env_aux,
                          bool frontier_memo, const SearchOptions& options = {});

/// Decides whether some sequence of exactly `length` instructions computes
/// `target` under the constraints.
ExistsResult exists_program(const TruthTable& target, std::size_t length, const SearchConstraints& c,
                            const SearchOptions& options = {});

struct MinimalityProfile {
  TruthTable target;
  std::string target_id;
  SearchConstraints constraints;
  std::vector<LengthStats> lengths;
  std::optional<std::size_t> minimal_length;
  std::optional<InstructionSequence> witness;
  // Run-dependent fields.
  double wall_time_seconds = 0;
  unsigned workers = 1;
  std::uint64_t vm_steps = 0;
};

/// Iterative deepening over lengths 1..c.max_len; stops at the first length
/// with a witness.
MinimalityProfile minimal_length(const TruthTable& target, const SearchConstraints& c,
                                 const SearchOptions& options = {}, std::string target_id = {});

}  // namespace regseq
