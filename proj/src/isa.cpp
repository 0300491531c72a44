#include "regseq/isa.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace regseq {

RegisterName RegisterName::input(std::uint32_t i) {
  if (i == 0) throw std::invalid_argument("input register index must be >= 1");
  return {RegisterKind::input, i};
}

RegisterName RegisterName::aux(std::uint32_t i) {
  if (i == 0) throw std::invalid_argument("auxiliary register index must be >= 1");
  return {RegisterKind::auxiliary, i};
}

bool is_legal(const BasicInstruction& basic) noexcept {
  switch (basic.reg.kind) {
    case RegisterKind::input:
      return basic.reg.index >= 1 && basic.command == Command::get;
    case RegisterKind::output:
      return basic.reg.index == 0 &&
             (basic.command == Command::set_false || basic.command == Command::set_true);
    case RegisterKind::auxiliary:
      return basic.reg.index >= 1;
  }
  return false;
}

namespace {

void require_legal(const BasicInstruction& basic) {
  if (!is_legal(basic)) throw std::invalid_argument("illegal basic instruction " + render(basic));
}

}  // namespace

Instruction Instruction::plain(BasicInstruction basic) {
  require_legal(basic);
  return {InstrKind::plain, basic, 0};
}

Instruction Instruction::pos_test(BasicInstruction basic) {
  require_legal(basic);
  return {InstrKind::pos_test, basic, 0};
}

Instruction Instruction::neg_test(BasicInstruction basic) {
  require_legal(basic);
  return {InstrKind::neg_test, basic, 0};
}

Instruction Instruction::jump(std::uint32_t offset) { return {InstrKind::jump, {}, offset}; }

Instruction Instruction::halt() { return {InstrKind::halt, {}, 0}; }

InstructionSequence::InstructionSequence(std::vector<Instruction> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("instruction sequence must be non-empty");
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position) {}

LegalityError::LegalityError(const std::string& token, std::size_t position)
    : ParseError("illegal register/command pair '" + token + "'", position), token_(token) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TokenParser {
 public:
  TokenParser(std::string_view token, std::size_t base) : token_(token), base_(base) {}

  Instruction run() {
    if (token_ == "!") return Instruction::halt();
    if (token_.front() == '#') {
      pos_ = 1;
      auto offset = nat();
      expect_end();
      return Instruction::jump(offset);
    }
    InstrKind kind = InstrKind::plain;
    if (token_.front() == '+') {
      kind = InstrKind::pos_test;
      pos_ = 1;
    } else if (token_.front() == '-') {
      kind = InstrKind::neg_test;
      pos_ = 1;
    }
    BasicInstruction basic = parse_basic();
    expect_end();
    if (!is_legal(basic)) throw LegalityError(std::string(token_), base_);
    switch (kind) {
      case InstrKind::pos_test:
        return Instruction::pos_test(basic);
      case InstrKind::neg_test:
        return Instruction::neg_test(basic);
      default:
        return Instruction::plain(basic);
    }
  }

 private:
  bool consume(std::string_view lit) {
    if (token_.substr(pos_).starts_with(lit)) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in '" + std::string(token_) + "'", base_ + pos_);
  }

  std::uint32_t nat() {
    const char* first = token_.data() + pos_;
    const char* last = token_.data() + token_.size();
    if (first == last || *first < '0' || *first > '9') fail("expected a natural number");
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) fail("number out of range");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  void expect_end() const {
    if (pos_ != token_.size()) fail("unexpected trailing characters");
  }

  BasicInstruction parse_basic() {
    BasicInstruction basic;
    if (consume("in:")) {
      basic.reg = {RegisterKind::input, nat()};
    } else if (consume("aux:")) {
      basic.reg = {RegisterKind::auxiliary, nat()};
    } else if (consume("out")) {
      basic.reg = RegisterName::output();
    } else {
      fail("expected a register name");
    }
    if (!consume(".")) fail("expected '.'");
    if (consume("get")) {
      basic.command = Command::get;
    } else if (consume("set:f")) {
      basic.command = Command::set_false;
    } else if (consume("set:t")) {
      basic.command = Command::set_true;
    } else if (consume("neg")) {
      basic.command = Command::neg;
    } else {
      fail("expected a command");
    }
    return basic;
  }

  std::string_view token_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

Instruction parse_instruction(std::string_view token) {
  if (token.empty()) throw ParseError("empty instruction", 0);
  return TokenParser(token, 0).run();
}

InstructionSequence parse(std::string_view text) {
  std::vector<Instruction> items;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);

    bool blank_line = std::all_of(line.begin(), line.end(), is_blank);
    if (!blank_line) {
      std::size_t item_start = 0;
      while (true) {
        std::size_t item_end = line.find(';', item_start);
        if (item_end == std::string_view::npos) item_end = line.size();
        std::size_t b = item_start;
        std::size_t e = item_end;
        while (b < e && is_blank(line[b])) ++b;
        while (e > b && is_blank(line[e - 1])) --e;
        if (b == e) throw ParseError("empty instruction", line_start + item_start);
        items.push_back(TokenParser(line.substr(b, e - b), line_start + b).run());
        if (item_end == line.size()) break;
        item_start = item_end + 1;
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  if (items.empty()) throw ParseError("empty program", 0);
  return InstructionSequence(std::move(items));
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const RegisterName& reg) {
  switch (reg.kind) {
    case RegisterKind::input:
      return "in:" + std::to_string(reg.index);
    case RegisterKind::auxiliary:
      return "aux:" + std::to_string(reg.index);
    case RegisterKind::output:
      break;
  }
  return "out";
}

std::string render(const BasicInstruction& basic) {
  std::string s = render(basic.reg);
  switch (basic.command) {
    case Command::get:
      return s + ".get";
    case Command::set_false:
      return s + ".set:f";
    case Command::set_true:
      return s + ".set:t";
    case Command::neg:
      return s + ".neg";
  }
  return s;
}

std::string render(const Instruction& instr) {
  switch (instr.kind()) {
    case InstrKind::plain:
      return render(instr.basic());
    case InstrKind::pos_test:
      return "+" + render(instr.basic());
    case InstrKind::neg_test:
      return "-" + render(instr.basic());
    case InstrKind::jump:
      return "#" + std::to_string(instr.offset());
    case InstrKind::halt:
      break;
  }
  return "!";
}

std::string render(const InstructionSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i != 0) out += " ; ";
    out += render(seq[i]);
  }
  return out;
}

std::size_t psize(const InstructionSequence& seq) noexcept { return seq.size(); }

RegisterIndices max_register_indices(const InstructionSequence& seq) noexcept {
  RegisterIndices r;
  for (const auto& instr : seq) {
    if (!instr.is_basic()) continue;
    const auto& reg = instr.basic().reg;
    if (reg.kind == RegisterKind::input) r.max_input = std::max(r.max_input, reg.index);
    if (reg.kind == RegisterKind::auxiliary) r.max_aux = std::max(r.max_aux, reg.index);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Alphabets

Alphabet build_alphabet(std::uint32_t n_inputs, std::uint32_t k_aux, std::uint32_t max_jump,
                        const AlphabetFlags& flags) {
  Alphabet a{n_inputs, k_aux, max_jump, flags, {}};
  auto add_forms = [&](BasicInstruction basic, bool with_plain) {
    if (with_plain) a.symbols.push_back(Instruction::plain(basic));
    a.symbols.push_back(Instruction::pos_test(basic));
    a.symbols.push_back(Instruction::neg_test(basic));
  };
  for (std::uint32_t i = 1; i <= n_inputs; ++i)
    add_forms({RegisterName::input(i), Command::get}, flags.allow_plain_input_get);
  add_forms({RegisterName::output(), Command::set_false}, true);
  add_forms({RegisterName::output(), Command::set_true}, true);
  for (std::uint32_t j = 1; j <= k_aux; ++j) {
    add_forms({RegisterName::aux(j), Command::get}, true);
    if (flags.allow_aux_set) {
      add_forms({RegisterName::aux(j), Command::set_false}, true);
      add_forms({RegisterName::aux(j), Command::set_true}, true);
    }
    if (flags.allow_neg) add_forms({RegisterName::aux(j), Command::neg}, true);
  }
  for (std::uint32_t l = 0; l <= max_jump; ++l) {
    if (l == 0 && !flags.allow_jump0) continue;
    if (l == 1 && !flags.allow_jump1) continue;
    a.symbols.push_back(Instruction::jump(l));
  }
  a.symbols.push_back(Instruction::halt());
  return a;
}

std::size_t alphabet_size(std::uint32_t n_inputs, std::uint32_t k_aux, std::uint32_t max_jump,
                          const AlphabetFlags& flags) noexcept {
  std::size_t per_aux = 1 + (flags.allow_aux_set ? 2 : 0) + (flags.allow_neg ? 1 : 0);
  std::size_t basic_forms = 3 * (std::size_t{n_inputs} + 2 + std::size_t{k_aux} * per_aux);
  if (!flags.allow_plain_input_get) basic_forms -= n_inputs;
  std::size_t jumps = std::size_t{max_jump} + 1;
  if (!flags.allow_jump0) --jumps;
  if (!flags.allow_jump1 && max_jump >= 1) --jumps;
  return basic_forms + jumps + 1;
}

}  // namespace regseq
