#include "teamlogic/approx.h"

#include <gtest/gtest.h>

#include <random>

#include "teamlogic/semantics.h"

namespace teamlogic {
namespace {

const Signature kSig = Signature::Parse("rel G/2; rel P/1");

Formula F(const std::string& text) {
  return ParseFormula(text, kSig.Merged(Signature::Parse("rel R/1; fun f1/1; fun f2/1")));
}

NormalFormSentence Nf(const std::string& text) {
  auto nf = NormalFormSentence::Recognize(F(text));
  EXPECT_TRUE(nf.has_value()) << text;
  return *nf;
}

TEST(MakeB, PrefixThenRelation) {
  EXPECT_EQ(MakeB(Nf("A x E y (dep(x,y) & G(x,y))"), "R"), F("A x R(x)"));
}

TEST(MakeA, FirstApproximation) {
  EXPECT_EQ(MakeA(Nf("A x E y (dep(x,y) & G(x,y))"), "R", 1),
            F("A x1_1 E y1_1 (!R(x1_1) | G(x1_1,y1_1))"));
  EXPECT_EQ(ApproxPrefixVar(1, 2), "x1_2");
  EXPECT_EQ(ApproxBlockVar(2, 1), "y2_1");
}

TEST(MakeA, SecondApproximationAgreesOnDependencies) {
  EXPECT_EQ(MakeA(Nf("A x E y (dep(x,y) & G(x,y))"), "R", 2),
            F("A x1_1 E y1_1 A x1_2 E y1_2 (!(R(x1_1) & R(x1_2)) | "
              "G(x1_1,y1_1) & G(x1_2,y1_2) & (x1_1 != x1_2 | y1_1 = y1_2))"));
}

TEST(MakeA, RejectsNonPositiveIndex) {
  EXPECT_THROW(MakeA(Nf("A x E y (dep(x,y) & G(x,y))"), "R", 0), WellFormednessError);
}

TEST(RecognizeA, FindsTheIndex) {
  NormalFormSentence sigma = Nf("A x Q z E y (dep(x,z,y) & (G(x,y) | P(z)))");
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(RecognizeA(sigma, "R", MakeA(sigma, "R", k)), k);
  }
  EXPECT_FALSE(RecognizeA(sigma, "R", MakeB(sigma, "R")));
  EXPECT_FALSE(RecognizeA(sigma, "S", MakeA(sigma, "R", 1)));
}

TEST(Skolemize, SkolemTranslation) {
  SkolemForm sk = Skolemize(Nf("A x E y (dep(x,y) & G(x,y))"), {"f1"});
  EXPECT_EQ(sk.sentence, F("A x G(x,f1(x))"));
  EXPECT_EQ(sk.functions, (std::vector<std::pair<std::string, int>>{{"f1", 1}}));
  EXPECT_EQ(sk.delta(), Signature::Parse("fun f1/1"));
}

TEST(Skolemize, EarlierBlockVariablesBecomeTheirTerms) {
  SkolemForm sk = Skolemize(Nf("A x E y E z (dep(x,y) & dep(y,z) & G(y,z))"), {"f1", "f2"});
  EXPECT_EQ(sk.sentence, F("A x G(f1(x),f2(f1(x)))"));
}

TEST(Skolemize, FreshNamesAvoidTheSignature) {
  FreshNames fresh;
  fresh.Reserve("f1");
  SkolemForm sk = Skolemize(Nf("A x E y (dep(x,y) & G(x,y))"), fresh);
  ASSERT_EQ(sk.functions.size(), 1u);
  EXPECT_NE(sk.functions[0].first, "f1");
}

TEST(FiniteWitness, WitnessSatisfiesBAndEveryApproximation) {
  NormalFormSentence sigma = Nf("A x E y (dep(x,y) & G(x,y))");
  Structure s(3);
  s.SetRelation("G", 2, {{0, 1}, {1, 2}, {2, 0}});
  s.SetRelation("P", 1, {});
  WeakModel w(s, QuantifierInterpretation::Exists(3));
  auto r = FiniteWitness(w, sigma);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(BHolds(w, sigma, *r));
  WeakModel ext = w.WithStructure(WithRelation(s, "R", 1, *r));
  for (int k = 1; k <= 3; ++k) {
    EXPECT_TRUE(AHolds(w, sigma, *r, k));
    EXPECT_TRUE(CheckSentence(ext, MakeA(sigma, "R", k)));
  }
  EXPECT_TRUE(CheckSentence(ext, MakeB(sigma, "R")));
}

TEST(FiniteWitness, NoneForFalseSentences) {
  NormalFormSentence sigma = Nf("A x E y (dep(y) & G(x,y))");
  Structure s(2);
  s.SetRelation("G", 2, {{0, 1}, {1, 0}});
  s.SetRelation("P", 1, {});
  WeakModel w(s, QuantifierInterpretation::Exists(2));
  EXPECT_FALSE(CheckSentence(w, sigma.ToFormula()));
  EXPECT_FALSE(FiniteWitness(w, sigma).has_value());
}

TEST(ApproxDecider, MatchesFormulaEvaluation) {
  std::mt19937_64 rng(5);
  NormalFormSentence sigma = Nf("A x Q z E y (dep(x,z,y) & (G(x,y) | P(z)))");
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + round % 2;
    WeakModel w(Structure::Random(kSig, n, rng), QuantifierInterpretation::Random(n, 1, rng));
    ApproxDecider d(w, sigma);
    std::vector<Tuple> r;
    for (std::size_t i = 0; i < d.tuple_count(); ++i) {
      if (rng() % 2) r.push_back(TupleAt(i, n, 2));
    }
    WeakModel ext = w.WithStructure(WithRelation(w.structure(), "R", 2, r));
    EXPECT_EQ(d.B(r), CheckSentence(ext, MakeB(sigma, "R")));
    for (int k = 1; k <= 2; ++k) {
      EXPECT_EQ(d.A(r, k), CheckSentence(ext, MakeA(sigma, "R", k)));
    }
  }
}

}  // namespace
}  // namespace teamlogic
