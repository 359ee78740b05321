// Sentences of the shape
//
//   H1 x1 ... Hm xm E y1 ... E yn (dep(a1, y1) & ... & dep(an, yn) & theta)
//
// with Hi in {Q, Qd, A} and theta quantifier free and dependence free, and
// the compiler that derives such a sentence from an arbitrary one together
// with a kernel-checkable certificate.

#ifndef TEAMLOGIC_NORMALFORM_H_
#define TEAMLOGIC_NORMALFORM_H_

#include <optional>
#include <string>
#include <vector>

#include "teamlogic/derivation.h"
#include "teamlogic/syntax.h"

namespace teamlogic {

struct PrefixEntry {
  Kind kind;  // kQ, kQd or kForall
  std::string var;
  bool operator==(const PrefixEntry&) const = default;
};

struct BlockEntry {
  std::string var;
  // Dependency tuple: prefix variables and earlier block variables.
  std::vector<std::string> args;
  bool operator==(const BlockEntry&) const = default;
};

class NormalFormSentence {
 public:
  // Throws ShapeError when the parts violate the shape invariants.
  NormalFormSentence(std::vector<PrefixEntry> prefix, std::vector<BlockEntry> block,
                     Formula matrix);

  // Strict structural recognition of the canonical rendering; nullopt when
  // `f` does not have exactly this shape.
  static std::optional<NormalFormSentence> Recognize(const Formula& f);
  // Like Recognize but throws ShapeError with a reason.
  static NormalFormSentence FromFormula(const Formula& f);

  const std::vector<PrefixEntry>& prefix() const { return prefix_; }
  const std::vector<BlockEntry>& block() const { return block_; }
  const Formula& matrix() const { return matrix_; }
  std::vector<std::string> prefix_vars() const;
  std::vector<std::string> block_vars() const;

  // The existential block with its body.
  Formula BlockFormula() const;
  Formula ToFormula() const;
  std::string ToString() const { return Render(ToFormula()); }

  bool operator==(const NormalFormSentence&) const = default;

 private:
  std::vector<PrefixEntry> prefix_;
  std::vector<BlockEntry> block_;
  Formula matrix_;
};

// Certified result: `certificate` derives `sentence.ToFormula()` from the
// input as its only open assumption.
struct NormalizeResult {
  NormalFormSentence sentence;
  Derivation certificate;
};

struct NormalizeOptions {
  // Label of the input assumption in the certificate.
  std::string assumption_label = "s";
};

// Alpha-renames so that each variable is bound once and none is both free
// and bound. Renaming only; no certificate.
Formula RenameApart(const Formula& f);

// Prenex form of a renamed-apart formula whose negations sit in front of
// quantifier-free subformulas.
Formula ToPrenex(const Formula& f);
// Quantifier-free input whose dependence atoms have variable arguments;
// result E z1..E zn (dep(..,z1) & .. & theta) with theta flat.
Formula DistributeDependence(const Formula& f, FreshNames& fresh);
// Input: a prefix over {E, A, Q, Qd}, then an existential block with
// dependence atoms, then a flat matrix. Moves every E behind the other
// binders, giving each moved variable the dependence atom of its first swap.
NormalFormSentence IntroduceDependence(const Formula& f);

// Throws ShapeError for non-sentences, quantifier arity above 1 and negation
// in front of a quantified subformula.
NormalizeResult Normalize(const Formula& sentence, const Signature& sig,
                          const NormalizeOptions& options = {});

}  // namespace teamlogic

#endif  // TEAMLOGIC_NORMALFORM_H_
