// Test-only generators and oracles. Nothing here calls into the library's
// interpreter, so these serve as independent references.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "regseq/isa.hpp"

namespace regseq::testing {

using Rng = std::mt19937_64;

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

/// Registers in:1..max_in, out, aux:1..max_aux with a legal command and mode,
/// or a jump in 0..max_jump, or halt.
inline Instruction random_instruction(Rng& rng, std::uint32_t max_in, std::uint32_t max_aux,
                                      std::uint32_t max_jump) {
  const std::uint32_t pick = uniform(rng, 0, 9);
  if (pick == 0) return Instruction::halt();
  if (pick <= 2) return Instruction::jump(uniform(rng, 0, max_jump));

  const std::uint32_t regs = max_in + 1 + max_aux;
  const std::uint32_t r = uniform(rng, 0, regs - 1);
  BasicInstruction b;
  if (r < max_in) {
    b = {RegisterName::input(r + 1), Command::get};
  } else if (r == max_in) {
    b = {RegisterName::output(), uniform(rng, 0, 1) ? Command::set_true : Command::set_false};
  } else {
    b = {RegisterName::aux(r - max_in), static_cast<Command>(uniform(rng, 0, 3))};
  }
  switch (uniform(rng, 0, 2)) {
    case 0: return Instruction::plain(b);
    case 1: return Instruction::pos_test(b);
    default: return Instruction::neg_test(b);
  }
}

inline InstructionSequence random_program(Rng& rng, std::size_t length, std::uint32_t max_in,
                                          std::uint32_t max_aux) {
  std::vector<Instruction> v;
  v.reserve(length);
  const auto max_jump = static_cast<std::uint32_t>(length + 1);
  for (std::size_t i = 0; i < length; ++i) v.push_back(random_instruction(rng, max_in, max_aux, max_jump));
  return InstructionSequence(std::move(v));
}

// ---------------------------------------------------------------------------
// Oracle interpreter: a direct transcription of the step rules.

enum class OracleStatus { terminated, inaction, invalid_access };

struct OracleResult {
  OracleStatus status = OracleStatus::inaction;
  bool output = false;
  std::vector<bool> aux;
  std::size_t position = 0;     // for invalid_access
  std::vector<std::size_t> visited;

  bool operator==(const OracleResult&) const = default;
};

inline OracleResult oracle_run(const InstructionSequence& x, const std::vector<bool>& in, std::size_t k) {
  OracleResult r;
  r.aux.assign(k, false);
  std::size_t pc = 1;
  while (pc >= 1 && pc <= x.size()) {
    r.visited.push_back(pc);
    const Instruction& ins = x[pc - 1];
    if (ins.kind() == InstrKind::halt) {
      r.status = OracleStatus::terminated;
      return r;
    }
    if (ins.kind() == InstrKind::jump) {
      if (ins.offset() == 0) return r;
      pc += ins.offset();
      continue;
    }
    const auto& b = ins.basic();
    bool reply = false;
    if (b.reg.kind == RegisterKind::input) {
      if (b.reg.index > in.size()) {
        r.status = OracleStatus::invalid_access;
        r.position = pc;
        return r;
      }
      reply = in[b.reg.index - 1];
    } else if (b.reg.kind == RegisterKind::output) {
      r.output = b.command == Command::set_true;
      reply = r.output;
    } else {
      if (b.reg.index > k) {
        r.status = OracleStatus::invalid_access;
        r.position = pc;
        return r;
      }
      auto ref = r.aux[b.reg.index - 1];
      if (b.command == Command::set_false) ref = false;
      if (b.command == Command::set_true) ref = true;
      if (b.command == Command::neg) ref = !ref;
      reply = ref;
    }
    if (ins.kind() == InstrKind::plain) pc += 1;
    else if (ins.kind() == InstrKind::pos_test) pc += reply ? 1 : 2;
    else pc += reply ? 2 : 1;
  }
  return r;
}

inline std::vector<bool> oracle_inputs(std::size_t row, unsigned n) {
  std::vector<bool> v(n);
  for (unsigned j = 0; j < n; ++j) v[j] = ((row >> j) & 1U) != 0;
  return v;
}

inline bool oracle_parity(std::size_t row) { return (std::popcount(row) & 1) != 0; }

inline std::uint32_t oracle_max_aux(const InstructionSequence& x) {
  std::uint32_t k = 0;
  for (const auto& ins : x)
    if (ins.is_basic() && ins.basic().reg.kind == RegisterKind::auxiliary) k = std::max(k, ins.basic().reg.index);
  return k;
}

/// Output bits in row order, or nullopt when some row does not terminate.
inline std::optional<std::string> oracle_table(const InstructionSequence& x, unsigned n, std::size_t k) {
  std::string bits;
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    auto r = oracle_run(x, oracle_inputs(row, n), k);
    if (r.status != OracleStatus::terminated) return std::nullopt;
    bits.push_back(r.output ? '1' : '0');
  }
  return bits;
}

// ---------------------------------------------------------------------------
// Brute-force search oracle: odometer over symbol indices (last position
// fastest), every candidate run on every input.

struct BruteForceEntry {
  std::uint64_t count = 0;
  std::string witness;  // first in odometer order
};

struct BruteForce {
  std::uint64_t candidates = 0;
  std::map<std::string, BruteForceEntry> by_table;  // computed truth table bits -> entry
};

inline BruteForce brute_force(const std::vector<Instruction>& symbols, std::size_t length, unsigned n,
                              std::size_t env_aux) {
  BruteForce bf;
  std::vector<std::size_t> digit(length, 0);
  std::vector<Instruction> items(length, symbols.front());
  while (true) {
    for (std::size_t i = 0; i < length; ++i) items[i] = symbols[digit[i]];
    InstructionSequence x(items);
    ++bf.candidates;
    if (auto t = oracle_table(x, n, env_aux)) {
      auto& e = bf.by_table[*t];
      if (e.count == 0) e.witness = render(x);
      ++e.count;
    }
    std::size_t p = length;
    while (p > 0) {
      --p;
      if (++digit[p] < symbols.size()) break;
      digit[p] = 0;
      if (p == 0) return bf;
    }
    if (length == 0) return bf;
  }
}

}  // namespace regseq::testing
