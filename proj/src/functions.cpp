#include "regseq/functions.hpp"

#include <bit>

namespace regseq {

ArityCapExceeded::ArityCapExceeded(unsigned arity, unsigned cap)
    : std::length_error("arity " + std::to_string(arity) + " exceeds cap " + std::to_string(cap)) {}

namespace {

void check_cap(unsigned arity, unsigned cap) {
  if (arity > cap || arity >= 63) throw ArityCapExceeded(arity, cap);
}

}  // namespace

TruthTable::TruthTable(unsigned arity, std::vector<bool> bits) : arity_(arity), bits_(std::move(bits)) {
  if (arity >= 63 || bits_.size() != (std::size_t{1} << arity))
    throw std::invalid_argument("truth table needs exactly 2^arity bits");
}

TruthTable TruthTable::constant(unsigned arity, bool value, unsigned cap) {
  check_cap(arity, cap);
  return TruthTable(arity, std::vector<bool>(std::size_t{1} << arity, value));
}

std::string TruthTable::bit_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string TruthTable::to_text() const {
  return "n=" + std::to_string(arity_) + " bits=" + bit_string();
}

TruthTable TruthTable::from_bits(std::string_view bits) {
  if (bits.empty() || !std::has_single_bit(bits.size()))
    throw std::invalid_argument("bit string length must be a power of two");
  std::vector<bool> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    v.push_back(c == '1');
  }
  return TruthTable(static_cast<unsigned>(std::countr_zero(bits.size())), std::move(v));
}

TruthTable TruthTable::from_text(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  if (!text.starts_with("n=")) throw std::invalid_argument("truth table text must start with 'n='");
  auto space = text.find(" bits=");
  if (space == std::string_view::npos) throw std::invalid_argument("missing ' bits=' field");
  unsigned n = 0;
  for (char c : text.substr(2, space - 2)) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad arity in truth table text");
    n = n * 10 + static_cast<unsigned>(c - '0');
    if (n >= 63) throw std::invalid_argument("arity too large");
  }
  TruthTable t = from_bits(text.substr(space + 6));
  if (t.arity() != n) throw std::invalid_argument("arity does not match bit count");
  return t;
}

std::uint64_t TruthTable::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (bool b : bits_) {
    h ^= static_cast<std::uint64_t>(b ? '1' : '0');
    h *= 0x100000001b3ULL;
  }
  return h;
}

TruthTable parity(unsigned n, unsigned cap) {
  check_cap(n, cap);
  const std::size_t rows = std::size_t{1} << n;
  std::vector<bool> bits(rows);
  for (std::size_t i = 0; i < rows; ++i) bits[i] = (std::popcount(i) & 1) != 0;
  return TruthTable(n, std::move(bits));
}

TruthTable complement(const TruthTable& f) {
  std::vector<bool> bits = f.bits();
  bits.flip();
  return TruthTable(f.arity(), std::move(bits));
}

std::vector<bool> row_inputs(std::size_t row, unsigned n) {
  std::vector<bool> v(n);
  for (unsigned i = 0; i < n; ++i) v[i] = ((row >> i) & 1U) != 0;
  return v;
}

Extraction extract_function(const InstructionSequence& program, unsigned n, unsigned cap) {
  check_cap(n, cap);
  const std::size_t k = max_register_indices(program).max_aux;
  const std::size_t rows = std::size_t{1} << n;
  std::vector<bool> bits(rows);

  if (k <= CompiledProgram::kMaxAux) {
    const CompiledProgram compiled(program, n, k);
    for (std::size_t row = 0; row < rows; ++row) {
      const auto r = compiled.run(row);
      if (r.status != CompiledProgram::Result::Status::terminated) {
        auto env = Environment::fresh_from_index(row, n, k);
        return NotTotal{env.inputs, compiled.execute(env)};
      }
      bits[row] = r.output;
    }
    return TruthTable(n, std::move(bits));
  }

  for (std::size_t row = 0; row < rows; ++row) {
    auto env = Environment::fresh_from_index(row, n, k);
    Outcome outcome = execute(program, env);
    auto* done = std::get_if<Terminated>(&outcome);
    if (done == nullptr) return NotTotal{env.inputs, std::move(outcome)};
    bits[row] = done->env.output;
  }
  return TruthTable(n, std::move(bits));
}

ComputeVerdict computes(const InstructionSequence& program, const TruthTable& f) {
  Extraction e = extract_function(program, f.arity());
  if (auto* nt = std::get_if<NotTotal>(&e)) return std::move(*nt);
  const auto& got = std::get<TruthTable>(e);
  for (std::size_t row = 0; row < f.rows(); ++row)
    if (got[row] != f[row]) return WrongOutput{row_inputs(row, f.arity()), got[row], f[row]};
  return Computes{};
}

bool is_computes(const ComputeVerdict& v) noexcept { return std::holds_alternative<Computes>(v); }

std::string bits_text(const std::vector<bool>& inputs) {
  std::string s;
  for (bool b : inputs) s.push_back(b ? '1' : '0');
  return s;
}

std::string describe(const Outcome& outcome) {
  if (auto* t = std::get_if<Terminated>(&outcome))
    return std::string("terminated out=") + (t->env.output ? "1" : "0");
  if (auto* ia = std::get_if<InvalidAccess>(&outcome))
    return "invalid-access position=" + std::to_string(ia->position) + " register=" + render(ia->reg);
  return "inaction";
}

std::string describe(const ComputeVerdict& v) {
  if (std::holds_alternative<Computes>(v)) return "computes";
  if (auto* w = std::get_if<WrongOutput>(&v))
    return "wrong-output input=" + bits_text(w->inputs) + " got=" + (w->got ? "1" : "0") +
           " expected=" + (w->expected ? "1" : "0");
  const auto& nt = std::get<NotTotal>(v);
  return "not-total input=" + bits_text(nt.inputs) + " outcome=" + describe(nt.outcome);
}

}  // namespace regseq
