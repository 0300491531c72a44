#include "regseq/generators.hpp"

#include <vector>

namespace regseq {

namespace {

BasicInstruction in_get(std::uint32_t i) { return {RegisterName::input(i), Command::get}; }

const BasicInstruction kOutSetTrue{RegisterName::output(), Command::set_true};

void append_pis0_block(std::vector<Instruction>& out, std::uint32_t i) {
  out.push_back(Instruction::jump(4));
  out.push_back(Instruction::pos_test(in_get(i)));
  out.push_back(Instruction::jump(3));
  out.push_back(Instruction::jump(3));
  out.push_back(Instruction::neg_test(in_get(i)));
}

void append_pis1_block(std::vector<Instruction>& out, std::uint32_t i) {
  out.push_back(Instruction::pos_test(in_get(i)));
  out.push_back(Instruction::plain({RegisterName::aux(1), Command::neg}));
}

}  // namespace

std::optional<Variant> variant_from_name(std::string_view name) noexcept {
  if (name == "pis0") return Variant::pis0;
  if (name == "pis1") return Variant::pis1;
  return std::nullopt;
}

std::string_view variant_name(Variant v) noexcept { return v == Variant::pis0 ? "pis0" : "pis1"; }

FamilyLayout layout(Variant v, std::uint32_t n) noexcept {
  if (n == 0) return {0, 0, 0, 1};
  if (v == Variant::pis0) {
    if (n == 1) return {1, 0, 0, 2};
    return {1, 5, n - 1, 2};
  }
  return {0, 2, n, 3};
}

InstructionSequence pis0(std::uint32_t n) {
  if (n == 0) return InstructionSequence({Instruction::halt()});
  std::vector<Instruction> out;
  out.reserve(layout(Variant::pis0, n).total());
  out.push_back(Instruction::pos_test(in_get(1)));
  for (std::uint32_t i = 2; i <= n; ++i) append_pis0_block(out, i);
  out.push_back(Instruction::plain(kOutSetTrue));
  out.push_back(Instruction::halt());
  return InstructionSequence(std::move(out));
}

InstructionSequence pis1(std::uint32_t n) {
  if (n == 0) return InstructionSequence({Instruction::halt()});
  std::vector<Instruction> out;
  out.reserve(layout(Variant::pis1, n).total());
  for (std::uint32_t i = 1; i <= n; ++i) append_pis1_block(out, i);
  out.push_back(Instruction::pos_test({RegisterName::aux(1), Command::get}));
  out.push_back(Instruction::plain(kOutSetTrue));
  out.push_back(Instruction::halt());
  return InstructionSequence(std::move(out));
}

InstructionSequence generate(Variant v, std::uint32_t n) {
  return v == Variant::pis0 ? pis0(n) : pis1(n);
}

}  // namespace regseq
