#include "teamlogic/normalform.h"

#include <gtest/gtest.h>

#include "corpus.h"
#include "oracles.h"
#include "teamlogic/io.h"
#include "teamlogic/kernel.h"
#include "teamlogic/semantics.h"

namespace teamlogic {
namespace {

const Signature kSig = Signature::Parse("rel P/1; rel R/1; rel G/2; rel S/0");

Formula F(const std::string& text) { return ParseFormula(text, kSig); }

TEST(NormalFormSentence, RecognizesCanonicalShape) {
  auto nf = NormalFormSentence::Recognize(F("A x Q y E z E w (dep(x,z) & dep(z,w) & G(z,w))"));
  ASSERT_TRUE(nf.has_value());
  EXPECT_EQ(nf->prefix_vars(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(nf->block_vars(), (std::vector<std::string>{"z", "w"}));
  EXPECT_EQ(nf->block()[1].args, (std::vector<std::string>{"z"}));
  EXPECT_EQ(nf->ToFormula(), F("A x Q y E z E w (dep(x,z) & dep(z,w) & G(z,w))"));
}

TEST(NormalFormSentence, RejectsOtherShapes) {
  EXPECT_FALSE(NormalFormSentence::Recognize(F("E x A y G(x,y)")));
  EXPECT_FALSE(NormalFormSentence::Recognize(F("A x E y (G(x,y) & dep(x,y))")));
  EXPECT_FALSE(NormalFormSentence::Recognize(F("A x E y (dep(y,x) & G(x,y))")));
  EXPECT_FALSE(NormalFormSentence::Recognize(F("A x E y (dep(x,y) & dep(x,y) & G(x,y))")));
  EXPECT_FALSE(NormalFormSentence::Recognize(F("A x E y (dep(w,y) & G(x,y))")));
  EXPECT_FALSE(NormalFormSentence::Recognize(F("A x (G(x,x) | dep(x))")));
  EXPECT_THROW(NormalFormSentence({{Kind::kExists, "x"}}, {}, F("P(x)")), ShapeError);
}

TEST(NormalFormSentence, EmptyPrefixAndBlock) {
  auto nf = NormalFormSentence::Recognize(F("S()"));
  ASSERT_TRUE(nf.has_value());
  EXPECT_TRUE(nf->prefix().empty());
  EXPECT_TRUE(nf->block().empty());
}

TEST(ToPrenex, HoistsLeftmostBinderFirst) {
  EXPECT_EQ(ToPrenex(F("E x P(x) | E y R(y)")), F("E x E y (P(x) | R(y))"));
  EXPECT_EQ(ToPrenex(F("Q x P(x) | S()")), F("Q x (P(x) | S())"));
  EXPECT_EQ(ToPrenex(F("Q x P(x) & S()")), F("Q x (P(x) & S())"));
  EXPECT_EQ(ToPrenex(F("S() & A x P(x)")), F("A x (S() & P(x))"));
  EXPECT_EQ(ToPrenex(F("Qd y R(y) | Q x P(x)")), F("Qd y Q x (R(y) | P(x))"));
  EXPECT_THROW(ToPrenex(F("!E x P(x)")), ShapeError);
}

TEST(DistributeDependence, FlatUnchanged) {
  FreshNames fresh;
  EXPECT_EQ(DistributeDependence(F("P(x) | !R(y)"), fresh), F("P(x) | !R(y)"));
}

TEST(DistributeDependence, MergesBlocksOverDisjunction) {
  FreshNames fresh;
  Formula out = DistributeDependence(F("dep(x,y) | (dep(y) & P(x))"), fresh);
  EXPECT_EQ(out, F("E z_1 E z_2 (dep(x,z_1) & dep(z_2) & (z_1 = y | z_2 = y & P(x)))"));
}

TEST(IntroduceDependence, SwapsExistentialPastQ) {
  EXPECT_EQ(IntroduceDependence(F("E x Q y G(x,y)")).ToFormula(),
            F("Q y E x (dep(x) & G(x,y))"));
  EXPECT_EQ(IntroduceDependence(F("E x A y G(x,y)")).ToFormula(),
            F("A y E x (dep(x) & G(x,y))"));
  Formula nf = F("A x E y (dep(x,y) & G(x,y))");
  EXPECT_EQ(IntroduceDependence(nf).ToFormula(), nf);
}

TEST(IntroduceDependence, KeepsTheAtomOfTheFirstSwap) {
  NormalFormSentence nf = IntroduceDependence(F("A u E x A y Q w (G(x,u) & G(y,w))"));
  EXPECT_EQ(nf.ToFormula(), F("A u A y Q w E x (dep(u,x) & (G(x,u) & G(y,w)))"));
}

TEST(Normalize, NormalFormInputIsUnchanged) {
  Formula f = F("A x E y (dep(x,y) & x = y)");
  NormalizeResult r = Normalize(f, kSig);
  EXPECT_EQ(r.sentence.ToFormula(), f);
  EXPECT_EQ(r.certificate.lines().size(), 1u);
  EXPECT_TRUE(Check(r.certificate, kSig).ok());
}

TEST(Normalize, RejectsBadInput) {
  EXPECT_THROW(Normalize(F("P(x)"), kSig), ShapeError);
  EXPECT_THROW(Normalize(F("!Q x P(x)"), kSig), ShapeError);
  Formula pair = ParseFormula("Q (x,y) G(x,y)", kSig, {2});
  EXPECT_THROW(Normalize(pair, kSig), ShapeError);
}

TEST(Normalize, QuantifierDisjunction) {
  NormalizeResult r = Normalize(F("Q x P(x) | Q y R(y)"), kSig);
  EXPECT_EQ(r.sentence.ToFormula(), F("Q x Q y (P(x) | R(y))"));
}

void ExpectCertified(const Formula& f, const Signature& sig, const NormalizeResult& r) {
  CheckReport report = Check(r.certificate, sig);
  for (const auto& v : report.violations) ADD_FAILURE() << v.ToString();
  EXPECT_EQ(r.certificate.conclusion(), r.sentence.ToFormula());
  ASSERT_EQ(report.open.size(), 1u);
  EXPECT_EQ(report.open.begin()->second, f);
}

TEST(Normalize, CorpusCertificatesAndEquivalenceOnSmallModels) {
  for (const auto& e : testing::ParsedCorpus()) {
    SCOPED_TRACE(e.name);
    NormalizeResult r = Normalize(e.sentence, e.signature);
    ExpectCertified(e.sentence, e.signature, r);
    const Formula nf = r.sentence.ToFormula();
    for (int n = 1; n <= 2; ++n) {
      testing::ForEachWeakModel(e.signature, n, [&](const WeakModel& w) {
        bool a = CheckSentence(w, e.sentence);
        bool b = CheckSentence(w, nf);
        EXPECT_EQ(a, b) << "n=" << n << " q=" << w.q().ToString();
        return a == b;
      });
    }
  }
}

TEST(Normalize, Idempotent) {
  for (const auto& e : testing::ParsedCorpus()) {
    SCOPED_TRACE(e.name);
    NormalFormSentence once = Normalize(e.sentence, e.signature).sentence;
    NormalFormSentence twice = Normalize(once.ToFormula(), e.signature).sentence;
    EXPECT_EQ(once, twice);
  }
}

TEST(Normalize, BranchingLiftEquivalentOnSmallModels) {
  const std::string text =
      ReadTextFile(std::string(TEAMLOGIC_GOLDEN_DIR) + "/lifts/branching.formula");
  FormulaFile ff = ParseFormulaFile(text);
  NormalizeResult r = Normalize(ff.formula, ff.signature);
  ExpectCertified(ff.formula, ff.signature, r);
  const Formula nf = r.sentence.ToFormula();
  for (int n = 1; n <= 3; ++n) {
    const auto q = n == 1 ? QuantifierInterpretation::Exists(1)
                          : QuantifierInterpretation::AtLeast(2, n);
    Structure::EnumerateAll(ff.signature, n, [&](const Structure& s) {
      WeakModel w(s, q);
      bool a = CheckSentence(w, ff.formula);
      bool b = CheckSentence(w, nf);
      EXPECT_EQ(a, b) << "n=" << n;
      return a == b;
    });
  }
}

}  // namespace
}  // namespace teamlogic
