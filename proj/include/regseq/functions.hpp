// functions.hpp: Boolean functions as truth tables and the "computes" relation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regseq/isa.hpp"
#include "regseq/machine.hpp"

namespace regseq {

inline constexpr unsigned kDefaultArityCap = 24;

class ArityCapExceeded : public std::length_error {
 public:
  ArityCapExceeded(unsigned arity, unsigned cap);
};

/// An n-ary Boolean function. Row index i encodes the inputs with b1 as the
/// least significant bit: i = sum_j b_j * 2^(j-1).
class TruthTable {
 public:
  TruthTable(unsigned arity, std::vector<bool> bits);
  static TruthTable constant(unsigned arity, bool value, unsigned cap = kDefaultArityCap);

  unsigned arity() const noexcept { return arity_; }
  std::size_t rows() const noexcept { return bits_.size(); }
  bool operator[](std::size_t row) const { return bits_[row]; }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  /// '0'/'1' characters in row order.
  std::string bit_string() const;
  /// "n=<N> bits=<...>"
  std::string to_text() const;
  static TruthTable from_text(std::string_view text);
  static TruthTable from_bits(std::string_view bits);

  /// 64-bit FNV-1a over bit_string().
  std::uint64_t hash() const noexcept;

  bool operator==(const TruthTable&) const = default;

 private:
  unsigned arity_;
  std::vector<bool> bits_;
};

TruthTable parity(unsigned n, unsigned cap = kDefaultArityCap);
TruthTable complement(const TruthTable& f);

/// Input vector (b1..bn) for row index `row`.
std::vector<bool> row_inputs(std::size_t row, unsigned n);

struct Computes {
  bool operator==(const Computes&) const = default;
};

struct WrongOutput {
  std::vector<bool> inputs;
  bool got = false;
  bool expected = false;
  bool operator==(const WrongOutput&) const = default;
};

struct NotTotal {
  std::vector<bool> inputs;
  Outcome outcome;
  bool operator==(const NotTotal&) const = default;
};

using ComputeVerdict = std::variant<Computes, WrongOutput, NotTotal>;
using Extraction = std::variant<TruthTable, NotTotal>;

/// Runs `program` on all 2^n fresh environments, with k = max aux index of the
/// program. Returns the output table when every run terminates, else the first
/// non-terminating row in index order.
Extraction extract_function(const InstructionSequence& program, unsigned n,
                            unsigned cap = kDefaultArityCap);

ComputeVerdict computes(const InstructionSequence& program, const TruthTable& f);

bool is_computes(const ComputeVerdict& v) noexcept;
std::string describe(const ComputeVerdict& v);
std::string describe(const Outcome& outcome);
std::string bits_text(const std::vector<bool>& inputs);

}  // namespace regseq
