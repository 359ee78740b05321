// Random terms, formulas, weak models and teams for property tests.

#ifndef TEAMLOGIC_TESTS_RANDOM_FORMULAS_H_
#define TEAMLOGIC_TESTS_RANDOM_FORMULAS_H_

#include <random>
#include <string>
#include <vector>

#include "teamlogic/model.h"
#include "teamlogic/normalform.h"
#include "teamlogic/syntax.h"
#include "teamlogic/team.h"

namespace teamlogic::testing {

// rel P/1; rel G/2; fun f/1; fun c/0
const Signature& PropertySignature();

class FormulaGen {
 public:
  explicit FormulaGen(std::mt19937_64& rng, std::vector<std::string> vars = {"x", "y", "z"});

  const std::vector<std::string>& vars() const { return vars_; }

  Term RandomTerm(int depth = 1);
  Formula Literal();
  // Dependence free and quantifier free.
  Formula QuantifierFree(int depth);
  // Dependence free, with quantifiers of every kind.
  Formula Flat(int depth);
  // Any formula of the logic; negations only in front of quantifier free
  // dependence free formulas.
  Formula Any(int depth);
  Formula Dep();
  std::string Var();
  int Below(int n);
  bool Coin(double p = 0.5);

  // H1 x1 .. Hm xm E y1 .. E yn (dep(..) & .. & theta) with prefix names
  // a, b, .. and block names v, w, ..
  NormalFormSentence RandomNormalForm(int max_prefix, int max_block);

 private:
  Formula Binder(Kind k, const std::string& v, const Formula& body);
  std::mt19937_64& rng_;
  std::vector<std::string> vars_;
};

// Random universe of size 1..max_n over `sig`, with q from the builtin
// families or a random antichain.
WeakModel RandomWeakModel(const Signature& sig, int max_n, std::mt19937_64& rng);

}  // namespace teamlogic::testing

#endif  // TEAMLOGIC_TESTS_RANDOM_FORMULAS_H_
