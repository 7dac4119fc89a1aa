#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace udiag {
namespace {

std::size_t error_line(std::string_view src) {
  try {
    assemble(src);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(Assemble, LabelsCommentsAndOperandStyles) {
  Program p = assemble("start: LOADC r0, 3 ; three\n  loop:\n SUB 0 1\nJZ 0,end\nJMP loop\nend:\n");
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.code()[0], ins::loadc(0, 3));
  EXPECT_EQ(p.code()[1], ins::sub(0, 1));
  EXPECT_EQ(p.code()[2], ins::jz(0, 4));
  EXPECT_EQ(p.code()[3], ins::jmp(1));
}

TEST(Assemble, MnemonicsAreCaseInsensitive) {
  EXPECT_EQ(assemble("accept"), Program({ins::accept()}));
}

TEST(Assemble, NumericTargets) {
  EXPECT_EQ(assemble("JMP 0"), testing::loop_program());
}

TEST(Assemble, Errors) {
  EXPECT_THROW(assemble("FOO 1"), ParseError);
  EXPECT_THROW(assemble("ACCEPT 1"), ParseError);
  EXPECT_THROW(assemble("LOADC 1"), ParseError);
  EXPECT_THROW(assemble("JMP nowhere"), ParseError);
  EXPECT_THROW(assemble("a: ACCEPT\na: REJECT"), ParseError);
  EXPECT_THROW(assemble("JMP 5"), ParseError);
  EXPECT_THROW(assemble("; only a comment\n"), ParseError);
  EXPECT_THROW(assemble("OUTSIZE 0\nACCEPT"), ParseError);
  EXPECT_THROW(assemble("LOADC x,1"), ParseError);
}

TEST(Assemble, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("ACCEPT\n\nBOGUS 1\n"), 3u);
  EXPECT_EQ(error_line("SIZE 0\nJZ 0,missing\n"), 2u);
  try {
    assemble("JMP missing");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("missing label"), std::string::npos);
  }
}

TEST(Disassemble, CanonicalText) {
  EXPECT_EQ(disassemble(testing::first_zero_tester()), "    INPUT 0,1\n    JZ 0,L0\n    REJECT\nL0:\n    ACCEPT\n");
  EXPECT_EQ(disassemble(Program({ins::jmp(1)})), "    JMP L0\nL0:\n");
}

TEST(Disassemble, RoundTripOnCorpus) {
  std::vector<Program> corpus = testing::monotonicity_corpus();
  corpus.push_back(testing::identity_transducer());
  corpus.push_back(testing::append_one_transducer());
  for (const Program& p : corpus) {
    EXPECT_EQ(assemble(disassemble(p)), p);
    EXPECT_EQ(disassemble(assemble(disassemble(p))), disassemble(p));
  }
}

TEST(Disassemble, RoundTripOnGeneratedPrograms) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    Program p = testing::random_program(rng, 1 + i % 15, i % 2 == 1, 0.15);
    EXPECT_EQ(assemble(disassemble(p)), p) << disassemble(p);
  }
}

}  // namespace
}  // namespace udiag
