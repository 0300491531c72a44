// machine.hpp: execution of instruction sequences over Boolean registers.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "regseq/isa.hpp"

namespace regseq {

struct Environment {
  std::vector<bool> inputs;
  bool output = false;
  std::vector<bool> aux;

  /// Start state: given inputs, out = false, k auxiliaries all false.
  static Environment fresh(std::vector<bool> inputs, std::size_t k_aux);
  /// Inputs taken from the low bits of `index` (bit 0 is in:1).
  static Environment fresh_from_index(std::uint64_t index, std::size_t n, std::size_t k_aux);

  bool operator==(const Environment&) const = default;
};

struct MachineState {
  Environment env;
  std::size_t pc = 1;

  bool operator==(const MachineState&) const = default;
};

struct Terminated {
  Environment env;
  bool operator==(const Terminated&) const = default;
};

struct Inaction {
  bool operator==(const Inaction&) const = default;
};

/// An instruction named a register that the environment does not have.
struct InvalidAccess {
  std::size_t position = 0;
  RegisterName reg;
  bool operator==(const InvalidAccess&) const = default;
};

using Outcome = std::variant<Terminated, Inaction, InvalidAccess>;
using StepResult = std::variant<MachineState, Outcome>;

/// Executes the instruction at state.pc. Requires 1 <= pc <= psize(program).
StepResult step(const MachineState& state, const InstructionSequence& program);

/// Reference interpreter: iterates `step` from pc = 1.
Outcome execute(const InstructionSequence& program, Environment env);

struct TraceEntry {
  std::size_t position = 0;
  Instruction instruction = Instruction::halt();
  std::optional<bool> reply;

  bool operator==(const TraceEntry&) const = default;
};

struct Trace {
  std::vector<TraceEntry> entries;
  Outcome outcome;

  bool operator==(const Trace&) const = default;
};

Trace trace(const InstructionSequence& program, Environment env);

bool is_terminated(const Outcome& outcome) noexcept;

/// Flat-array interpreter specialised to a fixed register file shape
/// (n inputs, k auxiliaries). Registers are packed into machine words.
class CompiledProgram {
 public:
  static constexpr std::size_t kMaxInputs = 64;
  static constexpr std::size_t kMaxAux = 63;

  CompiledProgram(const InstructionSequence& program, std::size_t n_inputs, std::size_t k_aux);

  std::size_t n_inputs() const noexcept { return n_inputs_; }
  std::size_t k_aux() const noexcept { return k_aux_; }

  /// Packed result of a run from a fresh environment.
  struct Result {
    enum class Status : std::uint8_t { terminated, inaction, invalid_access };
    Status status = Status::inaction;
    bool output = false;
    std::uint64_t aux = 0;         // bit j-1 holds aux:j
    std::uint32_t position = 0;    // failing position for invalid_access
  };

  /// Runs from a fresh environment; bit i-1 of `inputs` holds in:i.
  Result run(std::uint64_t inputs) const noexcept;

  /// Runs and converts back to the library Outcome type.
  Outcome execute(const Environment& env) const;

 private:
  enum class Op : std::uint8_t { basic, jump, halt, inaction, invalid };
  struct Code {
    Op op;
    InstrKind mode;
    Command command;
    bool is_input;         // else out/aux register word
    std::uint8_t bit;      // input bit, or 0 = out, j = aux:j in the register word
    std::uint32_t target;  // absolute 1-based target for jumps
  };

  InstructionSequence source_;
  std::vector<Code> code_;
  std::size_t n_inputs_;
  std::size_t k_aux_;
};

}  // namespace regseq
