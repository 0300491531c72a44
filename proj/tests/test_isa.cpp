#include <gtest/gtest.h>

#include <set>

#include "regseq/generators.hpp"
#include "regseq/isa.hpp"
#include "support.hpp"

namespace regseq {
namespace {

using testing::Rng;

TEST(Parse, SingleHalt) {
  auto x = parse("!");
  ASSERT_EQ(x.size(), 1U);
  EXPECT_EQ(x[0], Instruction::halt());
}

TEST(Parse, TestPlainHalt) {
  auto x = parse("+in:1.get ; out.set:t ; !");
  ASSERT_EQ(x.size(), 3U);
  EXPECT_EQ(x[0], Instruction::pos_test({RegisterName::input(1), Command::get}));
  EXPECT_EQ(x[1], Instruction::plain({RegisterName::output(), Command::set_true}));
  EXPECT_EQ(x[2], Instruction::halt());
}

TEST(Parse, NewlinesSeparateInstructions) {
  EXPECT_EQ(parse("+in:1.get\nout.set:t\n!\n"), parse("+in:1.get ; out.set:t ; !"));
  EXPECT_EQ(parse("  -aux:2.neg ;#3\n\n!"), parse("-aux:2.neg ; #3 ; !"));
  EXPECT_THROW(parse("out.set:t ;\n!"), ParseError);
}

TEST(Parse, IllegalCommandIsLegalityError) {
  try {
    parse("out.get ; !");
    FAIL() << "expected LegalityError";
  } catch (const LegalityError& e) {
    EXPECT_EQ(e.token(), "out.get");
  }
  EXPECT_THROW(parse("in:1.set:t"), LegalityError);
  EXPECT_THROW(parse("in:2.neg"), LegalityError);
  EXPECT_THROW(parse("+out.neg"), LegalityError);
}

TEST(Parse, MalformedInputIsParseError) {
  for (const char* bad : {"", " ; ", "! ; ; !", "in:0.get", "aux:0.neg", "in:x.get", "#", "#-1",
                          "out.set:true", "+#2", "!!", "in:1.GET", "foo", "+ in:1.get"}) {
    EXPECT_THROW(parse(bad), ParseError) << bad;
  }
}

TEST(Render, Examples) {
  EXPECT_EQ(render(parse("!")), "!");
  EXPECT_EQ(render(Instruction::jump(4)), "#4");
  EXPECT_EQ(render(pis1(1)), "+in:1.get ; aux:1.neg ; +aux:1.get ; out.set:t ; !");
}

TEST(Psize, CountsInstructions) {
  EXPECT_EQ(psize(parse("!")), 1U);
  EXPECT_EQ(psize(parse("#0 ; #1 ; !")), 3U);
}

TEST(MaxRegisterIndices, Examples) {
  EXPECT_EQ(max_register_indices(parse("!")), (RegisterIndices{0, 0}));
  EXPECT_EQ(max_register_indices(pis1(2)), (RegisterIndices{2, 1}));
  EXPECT_EQ(max_register_indices(pis0(3)), (RegisterIndices{3, 0}));
  EXPECT_EQ(max_register_indices(parse("aux:7.neg ; in:4.get ; !")), (RegisterIndices{4, 7}));
}

TEST(Legality, MatchesRegisterKind) {
  for (auto c : {Command::get, Command::set_false, Command::set_true, Command::neg}) {
    EXPECT_EQ(is_legal({RegisterName::input(1), c}), c == Command::get);
    EXPECT_EQ(is_legal({RegisterName::output(), c}), c == Command::set_false || c == Command::set_true);
    EXPECT_TRUE(is_legal({RegisterName::aux(1), c}));
  }
  EXPECT_THROW(Instruction::plain({RegisterName::output(), Command::get}), std::invalid_argument);
  EXPECT_THROW(RegisterName::input(0), std::invalid_argument);
  EXPECT_THROW(InstructionSequence({}), std::invalid_argument);
}

TEST(Alphabet, TwoInputsNoAux) {
  auto a = build_alphabet(2, 0, 7);
  EXPECT_EQ(a.size(), 21U);
  std::size_t basics = 0, jumps = 0, halts = 0;
  for (const auto& s : a.symbols) {
    basics += s.is_basic();
    jumps += s.kind() == InstrKind::jump;
    halts += s.kind() == InstrKind::halt;
  }
  EXPECT_EQ(basics, 12U);
  EXPECT_EQ(jumps, 8U);
  EXPECT_EQ(halts, 1U);
}

TEST(Alphabet, NoRegistersButOutput) {
  auto a = build_alphabet(0, 0, 0);
  std::vector<std::string> texts;
  for (const auto& s : a.symbols) texts.push_back(render(s));
  EXPECT_EQ(texts, (std::vector<std::string>{"out.set:f", "+out.set:f", "-out.set:f", "out.set:t",
                                             "+out.set:t", "-out.set:t", "#0", "!"}));
}

TEST(Alphabet, NegFlagRemovesNegOnly) {
  AlphabetFlags f;
  f.allow_neg = false;
  auto a = build_alphabet(1, 1, 2, f);
  std::set<std::string> texts;
  for (const auto& s : a.symbols) texts.insert(render(s));
  EXPECT_TRUE(texts.contains("aux:1.get"));
  EXPECT_TRUE(texts.contains("+aux:1.set:t"));
  EXPECT_TRUE(texts.contains("-aux:1.set:f"));
  EXPECT_FALSE(texts.contains("aux:1.neg"));
  EXPECT_FALSE(texts.contains("+aux:1.neg"));
  EXPECT_FALSE(texts.contains("-aux:1.neg"));
}

TEST(Alphabet, ClosedFormMatchesEnumeration) {
  for (std::uint32_t n = 0; n <= 4; ++n)
    for (std::uint32_t k = 0; k <= 3; ++k)
      for (std::uint32_t j = 0; j <= 9; j += 3)
        for (unsigned mask = 0; mask < 32; ++mask) {
          AlphabetFlags f{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, (mask & 8) != 0,
                          (mask & 16) != 0};
          auto a = build_alphabet(n, k, j, f);
          ASSERT_EQ(a.size(), alphabet_size(n, k, j, f)) << n << ' ' << k << ' ' << j << ' ' << mask;
          std::set<std::string> distinct;
          for (const auto& s : a.symbols) {
            ASSERT_TRUE(!s.is_basic() || is_legal(s.basic()));
            ASSERT_TRUE(s.kind() != InstrKind::jump || s.offset() <= j);
            distinct.insert(render(s));
          }
          ASSERT_EQ(distinct.size(), a.size());
        }
}

TEST(Alphabet, EveryLegalFormIsPresentWithAllFlags) {
  // Independently enumerate all legal (register, command, mode) triples.
  const std::uint32_t n = 3, k = 2, j = 5;
  std::set<std::string> expected;
  std::vector<RegisterName> regs{RegisterName::output()};
  for (std::uint32_t i = 1; i <= n; ++i) regs.push_back(RegisterName::input(i));
  for (std::uint32_t i = 1; i <= k; ++i) regs.push_back(RegisterName::aux(i));
  for (auto r : regs)
    for (auto c : {Command::get, Command::set_false, Command::set_true, Command::neg})
      if (is_legal({r, c})) {
        expected.insert(render(Instruction::plain({r, c})));
        expected.insert(render(Instruction::pos_test({r, c})));
        expected.insert(render(Instruction::neg_test({r, c})));
      }
  for (std::uint32_t l = 0; l <= j; ++l) expected.insert("#" + std::to_string(l));
  expected.insert("!");
  std::set<std::string> got;
  for (const auto& s : build_alphabet(n, k, j).symbols) got.insert(render(s));
  EXPECT_EQ(got, expected);
}

TEST(Property, ParseRenderRoundTrip) {
  Rng rng(0x15a);
  for (int iter = 0; iter < 20000; ++iter) {
    const auto len = testing::uniform(rng, 1, 12);
    auto x = testing::random_program(rng, len, testing::uniform(rng, 0, 12), testing::uniform(rng, 0, 12));
    const std::string text = render(x);
    ASSERT_EQ(parse(text), x) << text;
    ASSERT_EQ(render(parse(text)), text);
  }
}

}  // namespace
}  // namespace regseq
