// Witness sentence B, finite approximations A^k and the Skolem translation of
// a normal-form sentence, plus finite-model oracles relating them back to it.

#ifndef TEAMLOGIC_APPROX_H_
#define TEAMLOGIC_APPROX_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamlogic/model.h"
#include "teamlogic/normalform.h"
#include "teamlogic/semantics.h"

namespace teamlogic {

// Variable names used by MakeA: the p-th prefix variable of copy j and the
// i-th block variable of copy j (all 1-based).
std::string ApproxPrefixVar(int p, int j);
std::string ApproxBlockVar(int i, int j);

// H1 x1 ... Hm xm R(x1, ..., xm). With an empty prefix R is 0-ary.
Formula MakeB(const NormalFormSentence& sigma, const std::string& r);
// k-th approximation; throws WellFormednessError for k < 1.
Formula MakeA(const NormalFormSentence& sigma, const std::string& r, int k);
// k with MakeA(sigma, r, k) == f, if any.
std::optional<int> RecognizeA(const NormalFormSentence& sigma, const std::string& r,
                              const Formula& f);

struct SkolemForm {
  Formula sentence;
  // Introduced function symbols with their arities, block order.
  std::vector<std::pair<std::string, int>> functions;
  Signature delta() const;
};

// Replaces each block variable yi by fi applied to its dependency tuple
// (earlier block variables inside a tuple are replaced by their own terms).
SkolemForm Skolemize(const NormalFormSentence& sigma,
                     const std::vector<std::string>& names);
// Names f1, f2, ... skipping anything taken in `fresh`.
SkolemForm Skolemize(const NormalFormSentence& sigma, FreshNames& fresh);

// A relation r over the prefix variables such that (W, r) satisfies B and
// every A^k: the prefix projection of a witnessing team, searched in order of
// increasing size. nullopt iff W does not satisfy sigma.
std::optional<std::vector<Tuple>> FiniteWitness(const WeakModel& w,
                                                const NormalFormSentence& sigma,
                                                const EvalConfig& cfg = {});

// (W, r) |= B and (W, r) |= A^k, decided directly on r without building
// the formulas. `r` holds m-tuples, m = prefix length.
bool BHolds(const WeakModel& w, const NormalFormSentence& sigma,
            const std::vector<Tuple>& r);
bool AHolds(const WeakModel& w, const NormalFormSentence& sigma,
            const std::vector<Tuple>& r, int k);

// The same deciders for one weak model, with the matrix evaluated once per
// prefix tuple and block answer.
class ApproxDecider {
 public:
  ApproxDecider(const WeakModel& w, const NormalFormSentence& sigma);

  // |M|^m; tuples are numbered by TupleIndex.
  std::size_t tuple_count() const { return tuple_count_; }
  bool B(const std::vector<Tuple>& r) const;
  bool A(const std::vector<Tuple>& r, int k) const;
  bool BMask(const std::vector<bool>& member) const;
  bool AIndices(std::vector<std::size_t> r, int k) const;

 private:
  std::size_t Index(const Tuple& t) const;

  WeakModel w_;
  NormalFormSentence sigma_;
  std::size_t tuple_count_ = 0;
  // Per block variable, the slots of its dependency tuple.
  std::vector<std::vector<std::size_t>> arg_slots_;
  // Per prefix tuple, the full slot vectors (prefix then block) satisfying
  // the matrix.
  std::vector<std::vector<std::vector<int>>> options_;
};

// Structure extended with relation `name` interpreted as r.
Structure WithRelation(const Structure& s, const std::string& name, int arity,
                       const std::vector<Tuple>& r);

}  // namespace teamlogic

#endif  // TEAMLOGIC_APPROX_H_
