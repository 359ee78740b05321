#include "teamlogic/kernel.h"

#include <gtest/gtest.h>

#include "golden.h"

namespace teamlogic {
namespace {

const Signature kSig = Signature::Parse("rel P/1; rel R/1; rel G/2; fun f/1; fun c/0");

CheckReport CheckText(const std::string& text, const KernelMode& mode = {}) {
  return Check(Derivation::Parse(text, kSig), kSig, mode);
}

class GoldenAccepted : public ::testing::TestWithParam<testing::GoldenScript> {};

TEST_P(GoldenAccepted, Ok) {
  CheckReport r = testing::CheckGolden(GetParam());
  for (const auto& v : r.violations) ADD_FAILURE() << v.ToString();
}

std::vector<testing::GoldenScript> Accepted() {
  auto all = testing::LoadGolden("derivations");
  auto rules = testing::LoadGolden("rules");
  all.insert(all.end(), rules.begin(), rules.end());
  return all;
}

std::string Name(const ::testing::TestParamInfo<testing::GoldenScript>& info) {
  return info.param.name;
}

INSTANTIATE_TEST_SUITE_P(Scripts, GoldenAccepted, ::testing::ValuesIn(Accepted()), Name);

class GoldenRejected : public ::testing::TestWithParam<testing::GoldenScript> {};

TEST_P(GoldenRejected, ExpectedKind) {
  CheckReport r = testing::CheckGolden(GetParam());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(ViolationKindName(r.violations[0].kind), GetParam().expect);
}

INSTANTIATE_TEST_SUITE_P(Mutations, GoldenRejected,
                         ::testing::ValuesIn(testing::LoadGolden("mutations")), Name);

TEST(Kernel, ReportsOpenAssumptions) {
  CheckReport r = CheckText(
      "1. assume a: P(c)\n"
      "2. assume b: G(c,c)\n"
      "3. P(c) & G(c,c) ; and_i [1, 2]\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.open.size(), 2u);
  EXPECT_EQ(r.open.at("a"), ParseFormula("P(c)", kSig));
}

TEST(Kernel, EigenvariableViolationNamesTheLine) {
  CheckReport r = CheckText("1. assume c: G(u,x)\n2. A x G(u,x) ; forall_i [1]\n");
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::kEigenvariable);
  EXPECT_EQ(r.violations[0].line, 2);
  EXPECT_EQ(r.violations[0].rule, "forall_i");
}

TEST(Kernel, Q1RulesNeedTheMode) {
  const std::string text = "1. !Q x (x = u | x = v) ; q1_axiom\n";
  EXPECT_TRUE(CheckText(text).Has(ViolationKind::kRuleNotEnabled));
  KernelMode q1;
  q1.with_q1 = true;
  EXPECT_TRUE(CheckText(text, q1).ok());
}

TEST(Kernel, UnknownRuleAndBadReference) {
  EXPECT_TRUE(CheckText("1. P(c) ; magic\n").Has(ViolationKind::kUnknownRule));
  EXPECT_TRUE(CheckText("1. P(c) & P(c) ; and_i [2, 2]\n2. assume a: P(c)\n")
                  .Has(ViolationKind::kBadReference));
}

TEST(Kernel, DischargeOfUnknownLabel) {
  CheckReport r = CheckText(
      "1. assume a: P(c)\n"
      "2. P(c) | G(c,c) ; or_i1 [1] discharge: nope\n");
  EXPECT_FALSE(r.ok());
}

TEST(Derivation, ScriptRoundTrip) {
  const std::string text =
      "1. assume a: A x P(x)\n"
      "2. P(c) ; forall_e [1] params: t=c\n"
      "3. E y P(y) ; exists_i [2] params: t=c\n";
  Derivation d = Derivation::Parse(text, kSig);
  EXPECT_EQ(d.ToScript(), text);
  EXPECT_TRUE(Check(d, kSig).ok());
}

TEST(Derivation, ParseErrors) {
  EXPECT_THROW(Derivation::Parse("1 assume a: P(c)\n", kSig), ParseError);
  EXPECT_THROW(Derivation::Parse("1. P(c)\n", kSig), ParseError);
  EXPECT_THROW(Derivation::Parse("2. assume a: P(c)\n1. assume b: P(c)\n", kSig), ParseError);
  EXPECT_THROW(Derivation::Parse("1. assume a: H(c)\n", kSig), ParseError);
}

}  // namespace
}  // namespace teamlogic
