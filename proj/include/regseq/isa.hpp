// isa.hpp: instructions, instruction sequences, program text and search alphabets.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regseq {

enum class RegisterKind : std::uint8_t { input, output, auxiliary };

/// A Boolean register name: in:i, out or aux:i. The output register carries index 0.
struct RegisterName {
  RegisterKind kind = RegisterKind::output;
  std::uint32_t index = 0;

  static RegisterName input(std::uint32_t i);
  static RegisterName output() { return {}; }
  static RegisterName aux(std::uint32_t i);

  auto operator<=>(const RegisterName&) const = default;
};

enum class Command : std::uint8_t { get, set_false, set_true, neg };

struct BasicInstruction {
  RegisterName reg;
  Command command = Command::get;

  auto operator<=>(const BasicInstruction&) const = default;
};

/// Inputs admit only get, out admits only set, auxiliaries admit everything.
bool is_legal(const BasicInstruction& basic) noexcept;

enum class InstrKind : std::uint8_t { plain, pos_test, neg_test, jump, halt };

/// One primitive instruction. `basic` is meaningful for plain/test kinds,
/// `offset` only for jumps; both are zeroed otherwise so that equality is structural.
class Instruction {
 public:
  static Instruction plain(BasicInstruction basic);
  static Instruction pos_test(BasicInstruction basic);
  static Instruction neg_test(BasicInstruction basic);
  static Instruction jump(std::uint32_t offset);
  static Instruction halt();

  InstrKind kind() const noexcept { return kind_; }
  const BasicInstruction& basic() const noexcept { return basic_; }
  std::uint32_t offset() const noexcept { return offset_; }

  bool is_basic() const noexcept { return kind_ <= InstrKind::neg_test; }
  bool is_test() const noexcept {
    return kind_ == InstrKind::pos_test || kind_ == InstrKind::neg_test;
  }

  bool operator==(const Instruction&) const = default;

 private:
  Instruction(InstrKind kind, BasicInstruction basic, std::uint32_t offset)
      : kind_(kind), basic_(basic), offset_(offset) {}

  InstrKind kind_;
  BasicInstruction basic_;
  std::uint32_t offset_;
};

/// A finite, non-empty instruction sequence. Positions are 1-based in the
/// machine; the container itself is indexed from 0.
class InstructionSequence {
 public:
  explicit InstructionSequence(std::vector<Instruction> items);

  std::size_t size() const noexcept { return items_.size(); }
  const Instruction& operator[](std::size_t i) const { return items_[i]; }
  /// 1-based access matching machine positions.
  const Instruction& at_position(std::size_t pos) const { return items_.at(pos - 1); }
  std::span<const Instruction> items() const noexcept { return items_; }

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool operator==(const InstructionSequence&) const = default;

 private:
  std::vector<Instruction> items_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  /// Byte offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class LegalityError : public ParseError {
 public:
  LegalityError(const std::string& token, std::size_t position);
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

InstructionSequence parse(std::string_view text);
Instruction parse_instruction(std::string_view token);

std::string render(const RegisterName& reg);
std::string render(const BasicInstruction& basic);
std::string render(const Instruction& instr);
std::string render(const InstructionSequence& seq);

std::size_t psize(const InstructionSequence& seq) noexcept;

struct RegisterIndices {
  std::uint32_t max_input = 0;
  std::uint32_t max_aux = 0;

  bool operator==(const RegisterIndices&) const = default;
};

RegisterIndices max_register_indices(const InstructionSequence& seq) noexcept;

struct AlphabetFlags {
  bool allow_neg = true;
  bool allow_aux_set = true;
  bool allow_jump0 = true;
  bool allow_jump1 = true;
  bool allow_plain_input_get = true;

  bool operator==(const AlphabetFlags&) const = default;
};

/// Search alphabet in canonical symbol order: basic forms ordered by register
/// (in:1..n, out, aux:1..k), then command (get, set:f, set:t, neg), then mode
/// (plain, +, -); then jumps by ascending offset; then `!`.
struct Alphabet {
  std::uint32_t n_inputs = 0;
  std::uint32_t k_aux = 0;
  std::uint32_t max_jump = 0;
  AlphabetFlags flags;
  std::vector<Instruction> symbols;

  std::size_t size() const noexcept { return symbols.size(); }
};

Alphabet build_alphabet(std::uint32_t n_inputs, std::uint32_t k_aux, std::uint32_t max_jump,
                        const AlphabetFlags& flags = {});

/// Closed-form symbol count for build_alphabet.
std::size_t alphabet_size(std::uint32_t n_inputs, std::uint32_t k_aux, std::uint32_t max_jump,
                          const AlphabetFlags& flags = {}) noexcept;

}  // namespace regseq
