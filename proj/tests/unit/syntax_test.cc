#include "teamlogic/syntax.h"

#include <gtest/gtest.h>

namespace teamlogic {
namespace {

const Signature kSig = Signature::Parse("rel P/1; rel G/2; fun f/1; fun c/0");

Formula F(const std::string& text) { return ParseFormula(text, kSig); }

TEST(Signature, ParsesDeclarations) {
  EXPECT_TRUE(kSig.HasRelation("G"));
  EXPECT_EQ(kSig.RelationArity("G"), 2);
  EXPECT_EQ(kSig.FunctionArity("c"), 0);
  EXPECT_FALSE(kSig.HasFunction("P"));
  EXPECT_EQ(Signature::Parse(kSig.ToString()), kSig);
}

TEST(Signature, MergeDetectsArityClash) {
  Signature other = Signature::Parse("rel G/3");
  EXPECT_THROW(kSig.Merged(other), WellFormednessError);
  EXPECT_TRUE(kSig.Merged(Signature::Parse("rel H/1")).HasRelation("H"));
}

TEST(Signature, RejectsReservedNames) {
  EXPECT_THROW(Signature::Parse("rel dep/1"), Error);
  EXPECT_TRUE(IsReservedWord("Qd"));
}

TEST(Parser, BinderBodyExtendsRight) {
  Formula f = F("A x P(x) | G(x,x)");
  ASSERT_EQ(f.kind(), Kind::kForall);
  EXPECT_EQ(f.body().kind(), Kind::kOr);
  EXPECT_EQ(F("(A x P(x)) | P(c)").kind(), Kind::kOr);
}

TEST(Parser, Sugar) {
  EXPECT_EQ(F("x != y"), Formula::Not(Formula::Equals(Term::Var("x"), Term::Var("y"))));
  EXPECT_EQ(F("P(x) -> P(y)"), Formula::Implies(F("P(x)"), F("P(y)")));
  EXPECT_EQ(F("Q x P(x)").kind(), Kind::kQ);
  EXPECT_EQ(F("Qd x P(x)").kind(), Kind::kQd);
}

TEST(Parser, RoundTripsThroughRender) {
  for (const char* text :
       {"A x E y (dep(x,y) & G(x,f(y)))", "!(P(x) & x = c) | false",
        "Q x Qd y (G(x,y) | E z dep(z))", "(E x P(x)) & (A y G(y,y))"}) {
    Formula f = F(text);
    EXPECT_EQ(F(Render(f)), f) << text;
  }
}

TEST(Parser, Errors) {
  EXPECT_THROW(F("A x ("), ParseError);
  EXPECT_THROW(F("H(x)"), ParseError);
  EXPECT_THROW(F("G(x)"), Error);
  EXPECT_THROW(F("!dep(x)"), ParseError);
  EXPECT_THROW(Formula::Not(Formula::Dep({Term::Var("x")})), WellFormednessError);
}

TEST(Formula, StructuralEquality) {
  EXPECT_EQ(F("P(x) & P(y)"), F("P(x) & P(y)"));
  EXPECT_NE(F("P(x) & P(y)"), F("P(y) & P(x)"));
  EXPECT_EQ(Formula::Conjunction({F("P(x)"), F("P(y)"), F("P(z)")}), F("(P(x) & P(y)) & P(z)"));
}

TEST(Variables, FreeAndBound) {
  Formula f = F("P(x) & E x G(x,y)");
  EXPECT_EQ(FreeVariables(f), (VarSet{"x", "y"}));
  EXPECT_EQ(BoundVariables(f), (VarSet{"x"}));
  EXPECT_EQ(AllVariables(f), (VarSet{"x", "y"}));
  EXPECT_EQ(Symbols(f), (std::set<std::string>{"P", "G"}));
}

TEST(Classification, FlatAndQuantifierFree) {
  EXPECT_TRUE(IsFlat(F("A x P(x)")));
  EXPECT_FALSE(IsFlat(F("A x E y dep(x,y)")));
  EXPECT_TRUE(IsQuantifierFree(F("P(x) | dep(x)")));
  EXPECT_FALSE(IsQuantifierFree(F("Q x P(x)")));
  EXPECT_TRUE(NegationsQuantifierFree(F("!P(x) & E y !G(x,y)")));
  EXPECT_FALSE(NegationsQuantifierFree(F("!(E y P(y))")));
}

TEST(Substitute, ReplacesFreeOccurrencesOnly) {
  Formula f = F("P(x) & E x G(x,y)");
  EXPECT_EQ(Substitute(f, Term::App("c"), "x"), F("P(c) & E x G(x,y)"));
  EXPECT_EQ(Substitute(f, ParseTerm("f(z)", kSig), "y"), F("P(x) & E x G(x,f(z))"));
}

TEST(Substitute, DetectsCapture) {
  EXPECT_THROW(Substitute(F("E x G(x,y)"), Term::Var("x"), "y"), CaptureError);
}

TEST(Substitute, Simultaneous) {
  Formula f = F("G(x,y)");
  EXPECT_EQ(SubstituteMany(f, {{"x", Term::Var("y")}, {"y", Term::Var("x")}}), F("G(y,x)"));
}

TEST(FreshNames, SkipsReservedNames) {
  FreshNames fresh(F("E x_1 G(x, x_1)"));
  EXPECT_EQ(fresh.Fresh("x"), "x_2");
  EXPECT_EQ(fresh.Fresh("x"), "x_3");
  EXPECT_TRUE(fresh.IsTaken("x_3"));
}

TEST(RenameBound, SeparatesVariables) {
  Formula f = F("P(x) & (E x P(x)) & (E x G(x,x))");
  FreshNames fresh(f);
  Formula g = RenameBound(f, fresh);
  EXPECT_TRUE(IsRenamedApart(g));
  EXPECT_FALSE(IsRenamedApart(f));
  EXPECT_EQ(FreeVariables(g), FreeVariables(f));
  Formula apart = F("E x P(x)");
  EXPECT_EQ(RenameBound(apart, fresh), apart);
}

TEST(CheckSignature, ReportsArityMismatch) {
  Formula f = Formula::Relation("G", {Term::Var("x")});
  EXPECT_THROW(CheckSignature(f, kSig), WellFormednessError);
  EXPECT_NO_THROW(CheckSignature(F("G(x,c)"), kSig));
}

}  // namespace
}  // namespace teamlogic
