// generators.hpp: the two parity program families.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "regseq/isa.hpp"

namespace regseq {

enum class Variant { pis0, pis1 };

std::optional<Variant> variant_from_name(std::string_view name) noexcept;
std::string_view variant_name(Variant v) noexcept;

/// Parity without auxiliary registers; 5n-2 instructions for n >= 1.
InstructionSequence pis0(std::uint32_t n);
/// Parity with one auxiliary register toggled by aux:1.neg; 2n+3 instructions for n >= 1.
InstructionSequence pis1(std::uint32_t n);

InstructionSequence generate(Variant v, std::uint32_t n);

/// Block structure the generators emit: head, `blocks` copies of a fixed-size
/// block, tail. generate(v, n) is assembled from exactly this layout.
struct FamilyLayout {
  std::size_t head = 0;
  std::size_t block = 0;
  std::size_t blocks = 0;
  std::size_t tail = 0;

  std::size_t total() const noexcept { return head + block * blocks + tail; }
};

FamilyLayout layout(Variant v, std::uint32_t n) noexcept;

}  // namespace regseq
