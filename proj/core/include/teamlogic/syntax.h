// Terms, formulas and signatures for dependence logic with a monotone
// generalized quantifier Q and its dual Qd.
//
// Formulas are immutable trees of shared nodes; copying a Formula is cheap
// and two Formula values compare equal iff they are structurally equal.

#ifndef TEAMLOGIC_SYNTAX_H_
#define TEAMLOGIC_SYNTAX_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamlogic/error.h"

namespace teamlogic {

using VarSet = std::set<std::string>;

// Relation and function symbols with their arities. Constants are 0-ary
// functions. Symbol names may not collide with the grammar keywords.
class Signature {
 public:
  Signature() = default;

  // Parses declarations such as "rel P/1; rel G/2; fun f/1; fun c/0".
  // Separators may be ';', ',' or newlines.
  static Signature Parse(std::string_view decls);

  void AddRelation(const std::string& name, int arity);
  void AddFunction(const std::string& name, int arity);

  bool HasRelation(const std::string& name) const;
  bool HasFunction(const std::string& name) const;
  bool HasSymbol(const std::string& name) const {
    return HasRelation(name) || HasFunction(name);
  }
  int RelationArity(const std::string& name) const;
  int FunctionArity(const std::string& name) const;

  const std::map<std::string, int>& relations() const { return relations_; }
  const std::map<std::string, int>& functions() const { return functions_; }

  // Union of both signatures; throws on an arity clash.
  Signature Merged(const Signature& other) const;

  std::string ToString() const;

  bool operator==(const Signature&) const = default;

 private:
  std::map<std::string, int> relations_;
  std::map<std::string, int> functions_;
};

bool IsReservedWord(std::string_view word);

class Term {
 public:
  static Term Var(std::string name);
  static Term App(std::string function, std::vector<Term> args = {});

  bool is_var() const { return node_->is_var; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;

 private:
  struct Node {
    bool is_var = false;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Kind {
  kRelation,
  kEquals,
  kFalse,
  kDep,
  kNot,
  kAnd,
  kOr,
  kExists,
  kForall,
  kQ,
  kQd,
};

bool IsBinderKind(Kind kind);
std::string_view KindName(Kind kind);

class Formula {
 public:
  // Atoms.
  static Formula Relation(std::string name, std::vector<Term> args);
  static Formula Equals(Term lhs, Term rhs);
  static Formula False();
  // Requires at least one term.
  static Formula Dep(std::vector<Term> terms);

  // Throws WellFormednessError when `body` contains a dependence atom.
  static Formula Not(Formula body);
  static Formula And(Formula lhs, Formula rhs);
  static Formula Or(Formula lhs, Formula rhs);
  // Sugar for !lhs | rhs; `lhs` must be dependence free.
  static Formula Implies(Formula lhs, Formula rhs);

  static Formula Exists(std::string var, Formula body);
  static Formula Forall(std::string var, Formula body);
  // Q and Qd binders take a non-empty tuple of distinct variables.
  static Formula Quant(Kind kind, std::vector<std::string> vars, Formula body);
  // Generic binder constructor for any binder kind.
  static Formula Bind(Kind kind, std::vector<std::string> vars, Formula body);

  // Left-nested conjunction of a non-empty list.
  static Formula Conjunction(const std::vector<Formula>& parts);

  Kind kind() const { return node_->kind; }
  bool is_binder() const { return IsBinderKind(kind()); }
  bool has_dep() const { return node_->has_dep; }

  // Relation name for kRelation.
  const std::string& symbol() const { return node_->symbol; }
  // Arguments of kRelation / kDep, operands of kEquals.
  const std::vector<Term>& terms() const { return node_->terms; }
  // Bound tuple of a binder.
  const std::vector<std::string>& vars() const { return node_->vars; }
  const std::string& var() const { return node_->vars.front(); }

  // Operand of kNot and body of binders.
  const Formula& body() const { return node_->children[0]; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  const std::vector<Formula>& children() const { return node_->children; }

  // Stable identity of the underlying node for the lifetime of the value.
  const void* id() const { return node_.get(); }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind = Kind::kFalse;
    std::string symbol;
    std::vector<Term> terms;
    std::vector<std::string> vars;
    std::vector<Formula> children;
    bool has_dep = false;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula Make(Node node);
  std::shared_ptr<const Node> node_;
};

VarSet FreeVariables(const Term& t);
VarSet FreeVariables(const Formula& f);
// Every variable occurring in the formula, free or bound.
VarSet AllVariables(const Formula& f);
VarSet BoundVariables(const Formula& f);
// Relation and function symbol names occurring in the formula.
std::set<std::string> Symbols(const Formula& f);
std::set<std::string> Symbols(const Term& t);

bool IsFlat(const Formula& f);
bool IsQuantifierFree(const Formula& f);
// True iff every negation in `f` sits in front of a quantifier-free formula.
bool NegationsQuantifierFree(const Formula& f);
// Full scan of the negation discipline.
bool NegationDisciplineHolds(const Formula& f);

// Checks symbols against the signature (declared, arity match).
void CheckSignature(const Formula& f, const Signature& sig);

Term Substitute(const Term& t, const std::map<std::string, Term>& map);
// Replaces the free occurrences of `x` by `t`; throws CaptureError when a
// variable of `t` would become bound.
Formula Substitute(const Formula& f, const Term& t, const std::string& x);
// Simultaneous substitution.
Formula SubstituteMany(const Formula& f, const std::map<std::string, Term>& map);

// Source of fresh variable names: base name plus a counter suffix, skipping
// every reserved name. Not thread safe; use one per thread.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const Formula& avoid) { Reserve(avoid); }

  void Reserve(const std::string& name) { taken_.insert(name); }
  void Reserve(const Formula& f);
  void Reserve(const Signature& sig);
  bool IsTaken(const std::string& name) const { return taken_.count(name) > 0; }

  std::string Fresh(const std::string& base);

 private:
  std::set<std::string> taken_;
  std::map<std::string, int> counters_;
};

// Alpha-renames bound variables so that every variable is bound at most once
// and no variable is both free and bound. The first binder of a name keeps
// it; later ones get fresh names. Apart inputs are returned unchanged.
Formula RenameBound(const Formula& f, FreshNames& fresh);
bool IsRenamedApart(const Formula& f);

struct ParseOptions {
  // Tuple length of Q / Qd binders.
  int quant_arity = 1;
};

Formula ParseFormula(std::string_view text, const Signature& sig,
                     const ParseOptions& options = {});
Term ParseTerm(std::string_view text, const Signature& sig);

std::string Render(const Term& t);
std::string Render(const Formula& f);

std::ostream& operator<<(std::ostream& out, const Term& t);
std::ostream& operator<<(std::ostream& out, const Formula& f);

}  // namespace teamlogic

#endif  // TEAMLOGIC_SYNTAX_H_
