#include "regseq/transforms.hpp"

#include <algorithm>
#include <stdexcept>

#include "regseq/functions.hpp"
#include "regseq/machine.hpp"

namespace regseq {

std::optional<std::size_t> RelocationMap::image(std::size_t old_target) const {
  for (std::size_t pos = old_target; pos <= new_position.size(); ++pos)
    if (new_position[pos - 1]) return new_position[pos - 1];
  return std::nullopt;
}

namespace {

bool is_skip(const Instruction& instr) {
  return instr.kind() == InstrKind::jump && instr.offset() == 1;
}

Instruction as_plain(const Instruction& instr) {
  return instr.is_test() ? Instruction::plain(instr.basic()) : instr;
}

Instruction flip_test(const Instruction& instr) {
  if (instr.kind() == InstrKind::pos_test) return Instruction::neg_test(instr.basic());
  if (instr.kind() == InstrKind::neg_test) return Instruction::pos_test(instr.basic());
  return instr;
}

bool is_input_get(const Instruction& instr, std::uint32_t i) {
  return instr.is_basic() && instr.basic().reg.kind == RegisterKind::input &&
         instr.basic().reg.index == i;
}

}  // namespace

StripPass strip_skips_pass(const InstructionSequence& program) {
  const std::size_t len = program.size();
  RelocationMap map;
  map.new_position.resize(len);
  for (std::size_t pos = 1; pos <= len; ++pos)
    if (!is_skip(program.at_position(pos))) map.new_position[pos - 1] = ++map.new_length;

  if (map.new_length == 0) {
    // Only skips: every run falls off the end.
    return {InstructionSequence({Instruction::jump(0)}), std::move(map)};
  }

  std::vector<Instruction> out;
  out.reserve(map.new_length);
  for (std::size_t pos = 1; pos <= len; ++pos) {
    if (!map.new_position[pos - 1]) continue;
    const std::size_t new_pos = *map.new_position[pos - 1];
    const Instruction& instr = program.at_position(pos);

    if (instr.kind() == InstrKind::jump && instr.offset() != 0) {
      const std::size_t old_target = pos + instr.offset();
      auto target = old_target <= len ? map.image(old_target) : std::nullopt;
      const std::size_t offset = target ? *target - new_pos : map.new_length - new_pos + 1;
      out.push_back(Instruction::jump(static_cast<std::uint32_t>(offset)));
    } else if (instr.is_test() && pos < len && is_skip(program.at_position(pos + 1))) {
      out.push_back(as_plain(instr));
    } else {
      out.push_back(instr);
    }
  }
  return {InstructionSequence(std::move(out)), std::move(map)};
}

InstructionSequence strip_skips(const InstructionSequence& program) {
  InstructionSequence current = strip_skips_pass(program).result;
  while (std::any_of(current.begin(), current.end(), is_skip))
    current = strip_skips_pass(current).result;
  return current;
}

InstructionSequence complement_transform(const InstructionSequence& program, std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("complement_transform requires n >= 1");
  if (max_register_indices(program).max_aux != 0)
    throw std::invalid_argument("complement_transform requires a program without auxiliary registers");
  const std::uint32_t last_flipped = (n % 2 == 1) ? n : 1;
  std::vector<Instruction> out;
  out.reserve(program.size());
  for (const auto& instr : program) {
    bool flip = instr.is_test() && instr.basic().reg.kind == RegisterKind::input &&
                instr.basic().reg.index <= last_flipped;
    out.push_back(flip ? flip_test(instr) : instr);
  }
  return InstructionSequence(std::move(out));
}

InstructionSequence eliminate_input(const InstructionSequence& program, std::uint32_t input,
                                    bool value) {
  if (input == 0) throw std::invalid_argument("input index must be >= 1");
  std::vector<Instruction> replaced;
  replaced.reserve(program.size());
  for (const auto& instr : program) {
    if (!is_input_get(instr, input)) {
      replaced.push_back(instr);
      continue;
    }
    // Under in:i = value a test proceeds (#1) or skips (#2).
    bool proceeds = instr.kind() == InstrKind::plain ||
                    (instr.kind() == InstrKind::pos_test) == value;
    replaced.push_back(Instruction::jump(proceeds ? 1 : 2));
  }

  InstructionSequence stripped = strip_skips(InstructionSequence(std::move(replaced)));
  std::vector<Instruction> out;
  out.reserve(stripped.size());
  for (const auto& instr : stripped) {
    if (instr.is_basic() && instr.basic().reg.kind == RegisterKind::input &&
        instr.basic().reg.index > input) {
      BasicInstruction b = instr.basic();
      b.reg.index -= 1;
      switch (instr.kind()) {
        case InstrKind::pos_test:
          out.push_back(Instruction::pos_test(b));
          break;
        case InstrKind::neg_test:
          out.push_back(Instruction::neg_test(b));
          break;
        default:
          out.push_back(Instruction::plain(b));
          break;
      }
    } else {
      out.push_back(instr);
    }
  }
  return InstructionSequence(std::move(out));
}

std::vector<bool> reachable_positions(const InstructionSequence& program, unsigned n) {
  if (n > kDefaultArityCap) throw ArityCapExceeded(n, kDefaultArityCap);
  const std::size_t k = max_register_indices(program).max_aux;
  std::vector<bool> seen(program.size(), false);
  const std::size_t rows = std::size_t{1} << n;
  for (std::size_t row = 0; row < rows; ++row) {
    Trace t = trace(program, Environment::fresh_from_index(row, n, k));
    for (const auto& e : t.entries) seen[e.position - 1] = true;
  }
  return seen;
}

InstructionSequence mask_unreachable(const InstructionSequence& program, unsigned n) {
  std::vector<bool> seen = reachable_positions(program, n);
  std::vector<Instruction> out(program.begin(), program.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!seen[i]) out[i] = Instruction::halt();
  return InstructionSequence(std::move(out));
}

}  // namespace regseq
