// Proof checker for the natural deduction system of D(Q, Qd).
//
// Rule tags and the shape each one checks (premises in citation order):
//
//   and_i [a, b]            a & b
//   and_e1 / and_e2 [a & b] a / b
//   or_i1 [a] / or_i2 [b]   a | b
//   or_e [a | b, g, g]      g, g flat; discharges a in 2nd, b in 3rd premise
//   not_i [false]           !a, discharges a
//   raa [false]             a, discharges !a
//   bot_i [a, !a]           false
//   dual [Qd x a]           !Q x !a, a flat
//   forall_i [a]            A x a, x not free in open assumptions
//   forall_e [A x a]        a[t/x]                          params: t
//   exists_i [a[t/x]]       E x a                           params: t
//   exists_e [E x a, b]     b, discharges a; x not free in b or others
//   or_subst [a | b, g]     a | g, discharges b
//   or_comm [b | a]         a | b
//   or_assoc [(a | b) | g]  a | (b | g)
//   scope_or [H x a | b]    H x (a | b), H in {Q, Qd, E, A}, x not free in b
//   scope_and [H x a & b]   H x (a & b), H in {Q, Qd}, x not free in b
//   unnest [dep(t1..tn)]    E z (dep(t1..z..tn) & z = ti), z new
//   dep_dist [a | b]        merged existential block over (a0 | b0)
//   dep_intro [E x H y a]   H y E x (dep(z.., x) & a), H in {A, Q, Qd},
//                           z.. exactly the variables of FV(a) - {x, y}
//   mono [H x a, b]         H x b, H in {Q, Qd}, discharges a
//   bound [H x a]           H y a[y/x], H in {Q, Qd}, y not in a
//   id_refl []              t = t
//   id_subst [a[r/x], t = r]  a[t/x], a flat                params: x, phi
//   approx [s, b]           b; discharges B s / A^n s      params: R
//   q1_axiom []             !Q x (x = y | x = z)
//   q1_union [Q x E y a]    E y Q x a | Q y E x a
//   skolem [s, b]           b; discharges the Skolem form   params: fns
//
// Discharging a label that is not open in the relevant premise is a
// violation. approx needs KernelMode::with_approx; q1_axiom, q1_union and
// skolem need KernelMode::with_q1.

#ifndef TEAMLOGIC_KERNEL_H_
#define TEAMLOGIC_KERNEL_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "teamlogic/derivation.h"
#include "teamlogic/syntax.h"

namespace teamlogic {

enum class ViolationKind {
  kSchema,
  kFlatness,
  kEigenvariable,
  kFreshness,
  kScopeVariable,
  kDepIntroVariables,
  kApartness,
  kSubstitution,
  kDischarge,
  kAssumption,
  kBadReference,
  kParams,
  kUnknownRule,
  kRuleNotEnabled,
  kSignature,
  kNotNormalForm,
  kApproxOccurrence,
  kUnrecognizedApprox,
  kSkolemLeak,
  kSkolemMismatch,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int line = 0;         // proof line number
  int source_line = 0;  // line in the script text, 0 if none
  std::string rule;
  std::string message;
  std::string ToString() const;
};

struct KernelMode {
  bool with_approx = false;
  bool with_q1 = false;
};

struct CheckReport {
  std::vector<Violation> violations;
  // Open assumptions of the last line, by label.
  std::map<std::string, Formula> open;
  bool ok() const { return violations.empty(); }
  bool Has(ViolationKind kind) const;
};

// Checks every line. Symbols must come from `sig`, plus the predicate and
// function symbols introduced by approx and skolem lines.
CheckReport Check(const Derivation& d, const Signature& sig, const KernelMode& mode = {});

}  // namespace teamlogic

#endif  // TEAMLOGIC_KERNEL_H_
