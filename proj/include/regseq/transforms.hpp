// transforms.hpp: semantics-preserving rewrites and the input-complement and
// input-elimination constructions.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "regseq/isa.hpp"

namespace regseq {

/// Old position (1-based) -> new position, or nullopt when the instruction was removed.
struct RelocationMap {
  std::vector<std::optional<std::size_t>> new_position;  // indexed by old position - 1
  std::size_t new_length = 0;

  /// Image of an old control-flow target: the first surviving position at or
  /// after `old_target`, or nullopt when control would run past the end.
  std::optional<std::size_t> image(std::size_t old_target) const;
};

struct StripPass {
  InstructionSequence result;
  RelocationMap map;
};

/// One deletion pass: removes every #1, retargets surviving jumps and
/// canonicalises overshooting jumps. A test directly followed by a removed #1
/// becomes plain, since both of its branches reach the same successor.
StripPass strip_skips_pass(const InstructionSequence& program);

/// Repeats strip_skips_pass until no #1 remains.
InstructionSequence strip_skips(const InstructionSequence& program);

/// For an input-complemented parity: flips + and - on tests of in:1..n when n
/// is odd, only on tests of in:1 when n is even. Requires n >= 1 and no
/// auxiliary registers.
InstructionSequence complement_transform(const InstructionSequence& program, std::uint32_t n);

/// Specialises the program to in:i = value, removes in:i, and renumbers the
/// inputs above i down by one.
InstructionSequence eliminate_input(const InstructionSequence& program, std::uint32_t input,
                                    bool value);

/// Per position: whether some execution over the 2^n inputs visits it (k = max aux index).
std::vector<bool> reachable_positions(const InstructionSequence& program, unsigned n);

/// Replaces every unreachable position by `!`.
InstructionSequence mask_unreachable(const InstructionSequence& program, unsigned n);

}  // namespace regseq
