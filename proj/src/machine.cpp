#include "regseq/machine.hpp"

#include <memory>
#include <stdexcept>

namespace regseq {

Environment Environment::fresh(std::vector<bool> inputs, std::size_t k_aux) {
  return Environment{std::move(inputs), false, std::vector<bool>(k_aux, false)};
}

Environment Environment::fresh_from_index(std::uint64_t index, std::size_t n, std::size_t k_aux) {
  std::vector<bool> inputs(n);
  for (std::size_t i = 0; i < n; ++i) inputs[i] = ((index >> i) & 1U) != 0;
  return fresh(std::move(inputs), k_aux);
}

bool is_terminated(const Outcome& outcome) noexcept {
  return std::holds_alternative<Terminated>(outcome);
}

namespace {

struct Access {
  bool present = false;
  bool value = false;
};

Access read(const Environment& env, const RegisterName& reg) {
  switch (reg.kind) {
    case RegisterKind::input:
      if (reg.index == 0 || reg.index > env.inputs.size()) return {};
      return {true, env.inputs[reg.index - 1]};
    case RegisterKind::auxiliary:
      if (reg.index == 0 || reg.index > env.aux.size()) return {};
      return {true, env.aux[reg.index - 1]};
    case RegisterKind::output:
      return {true, env.output};
  }
  return {};
}

void write(Environment& env, const RegisterName& reg, bool value) {
  switch (reg.kind) {
    case RegisterKind::input:
      env.inputs[reg.index - 1] = value;
      break;
    case RegisterKind::auxiliary:
      env.aux[reg.index - 1] = value;
      break;
    case RegisterKind::output:
      env.output = value;
      break;
  }
}

}  // namespace

StepResult step(const MachineState& state, const InstructionSequence& program) {
  const std::size_t len = program.size();
  if (state.pc < 1 || state.pc > len) throw std::out_of_range("program counter outside program");
  // One heap-allocated state per step (reference path).
  auto next = std::make_unique<MachineState>(state);
  const Instruction& instr = program.at_position(state.pc);

  auto advance = [&](std::size_t by) -> StepResult {
    next->pc = state.pc + by;
    if (next->pc > len) return Outcome{Inaction{}};
    return *next;
  };

  switch (instr.kind()) {
    case InstrKind::halt:
      return Outcome{Terminated{next->env}};
    case InstrKind::jump:
      if (instr.offset() == 0) return Outcome{Inaction{}};
      return advance(instr.offset());
    case InstrKind::plain:
    case InstrKind::pos_test:
    case InstrKind::neg_test:
      break;
  }

  const BasicInstruction& basic = instr.basic();
  Access current = read(next->env, basic.reg);
  if (!current.present) return Outcome{InvalidAccess{state.pc, basic.reg}};

  bool reply = current.value;
  switch (basic.command) {
    case Command::get:
      break;
    case Command::set_false:
      reply = false;
      write(next->env, basic.reg, false);
      break;
    case Command::set_true:
      reply = true;
      write(next->env, basic.reg, true);
      break;
    case Command::neg:
      reply = !current.value;
      write(next->env, basic.reg, reply);
      break;
  }

  bool proceed = true;
  if (instr.kind() == InstrKind::pos_test) proceed = reply;
  if (instr.kind() == InstrKind::neg_test) proceed = !reply;
  return advance(proceed ? 1 : 2);
}

Outcome execute(const InstructionSequence& program, Environment env) {
  StepResult current = MachineState{std::move(env), 1};
  while (auto* state = std::get_if<MachineState>(&current)) current = step(*state, program);
  return std::get<Outcome>(std::move(current));
}

Trace trace(const InstructionSequence& program, Environment env) {
  Trace t{{}, Inaction{}};
  MachineState state{std::move(env), 1};
  while (true) {
    const Instruction& instr = program.at_position(state.pc);
    TraceEntry entry{state.pc, instr, std::nullopt};
    StepResult r = step(state, program);
    if (instr.is_basic()) {
      // Replay the command to recover the reply; step() only exposes its effect.
      Access before = read(state.env, instr.basic().reg);
      if (before.present) {
        switch (instr.basic().command) {
          case Command::get:
            entry.reply = before.value;
            break;
          case Command::set_false:
            entry.reply = false;
            break;
          case Command::set_true:
            entry.reply = true;
            break;
          case Command::neg:
            entry.reply = !before.value;
            break;
        }
      }
    }
    t.entries.push_back(entry);
    if (auto* outcome = std::get_if<Outcome>(&r)) {
      t.outcome = std::move(*outcome);
      return t;
    }
    state = std::get<MachineState>(std::move(r));
  }
}

// ---------------------------------------------------------------------------
// Compiled interpreter

CompiledProgram::CompiledProgram(const InstructionSequence& program, std::size_t n_inputs,
                                 std::size_t k_aux)
    : source_(program), n_inputs_(n_inputs), k_aux_(k_aux) {
  if (n_inputs > kMaxInputs || k_aux > kMaxAux)
    throw std::length_error("register file too large for the compiled interpreter");
  const std::size_t len = program.size();
  code_.reserve(len + 1);
  // Slot 0 is unused so that code_[pc] addresses position pc.
  code_.push_back({Op::inaction, InstrKind::halt, Command::get, false, 0, 0});
  for (std::size_t pos = 1; pos <= len; ++pos) {
    const Instruction& instr = program.at_position(pos);
    Code c{Op::halt, instr.kind(), Command::get, false, 0, 0};
    switch (instr.kind()) {
      case InstrKind::halt:
        break;
      case InstrKind::jump:
        if (instr.offset() == 0 || pos + instr.offset() > len) {
          c.op = Op::inaction;
        } else {
          c.op = Op::jump;
          c.target = static_cast<std::uint32_t>(pos + instr.offset());
        }
        break;
      default: {
        const auto& reg = instr.basic().reg;
        c.op = Op::basic;
        c.command = instr.basic().command;
        if (reg.kind == RegisterKind::input) {
          c.is_input = true;
          if (reg.index > n_inputs) c.op = Op::invalid;
          else c.bit = static_cast<std::uint8_t>(reg.index - 1);
        } else if (reg.kind == RegisterKind::auxiliary) {
          if (reg.index > k_aux) c.op = Op::invalid;
          else c.bit = static_cast<std::uint8_t>(reg.index);
        }
        break;
      }
    }
    code_.push_back(c);
  }
}

CompiledProgram::Result CompiledProgram::run(std::uint64_t inputs) const noexcept {
  using Status = Result::Status;
  const std::size_t len = code_.size() - 1;
  std::uint64_t regs = 0;  // bit 0: out, bit j: aux:j
  std::size_t pc = 1;
  while (pc <= len) {
    const Code& c = code_[pc];
    switch (c.op) {
      case Op::halt:
        return {Status::terminated, (regs & 1U) != 0, regs >> 1, 0};
      case Op::inaction:
        return {};
      case Op::invalid:
        return {Status::invalid_access, false, 0, static_cast<std::uint32_t>(pc)};
      case Op::jump:
        pc = c.target;
        continue;
      case Op::basic:
        break;
    }
    bool reply;
    if (c.is_input) {
      reply = ((inputs >> c.bit) & 1U) != 0;
    } else {
      const std::uint64_t mask = std::uint64_t{1} << c.bit;
      switch (c.command) {
        case Command::get:
          reply = (regs & mask) != 0;
          break;
        case Command::set_false:
          regs &= ~mask;
          reply = false;
          break;
        case Command::set_true:
          regs |= mask;
          reply = true;
          break;
        default:
          regs ^= mask;
          reply = (regs & mask) != 0;
          break;
      }
    }
    const bool proceed = c.mode == InstrKind::plain || (c.mode == InstrKind::pos_test) == reply;
    pc += proceed ? 1 : 2;
  }
  return {};
}

Outcome CompiledProgram::execute(const Environment& env) const {
  if (env.inputs.size() != n_inputs_ || env.aux.size() != k_aux_ || env.output)
    throw std::invalid_argument("compiled interpreter requires a fresh environment of its shape");
  std::uint64_t inputs = 0;
  for (std::size_t i = 0; i < env.inputs.size(); ++i)
    if (env.inputs[i]) inputs |= std::uint64_t{1} << i;
  for (bool a : env.aux)
    if (a) throw std::invalid_argument("compiled interpreter requires a fresh environment");

  const Result r = run(inputs);
  switch (r.status) {
    case Result::Status::terminated: {
      Environment out = env;
      out.output = r.output;
      for (std::size_t j = 0; j < k_aux_; ++j) out.aux[j] = ((r.aux >> j) & 1U) != 0;
      return Terminated{std::move(out)};
    }
    case Result::Status::invalid_access:
      return InvalidAccess{r.position, source_.at_position(r.position).basic().reg};
    case Result::Status::inaction:
      break;
  }
  return Inaction{};
}

}  // namespace regseq
