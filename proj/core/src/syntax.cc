#include "teamlogic/syntax.h"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace teamlogic {

namespace {

constexpr std::string_view kReserved[] = {"A", "E", "Q", "Qd", "dep", "false"};

void CheckSymbolName(const std::string& name) {
  if (name.empty() || IsReservedWord(name)) {
    throw WellFormednessError("invalid symbol name '" + name + "'");
  }
}

}  // namespace

bool IsReservedWord(std::string_view word) {
  return std::find(std::begin(kReserved), std::end(kReserved), word) !=
         std::end(kReserved);
}

// ---------------------------------------------------------------- Signature

Signature Signature::Parse(std::string_view decls) {
  Signature sig;
  std::string text(decls);
  for (char& c : text) {
    if (c == ';' || c == ',' || c == '\n') c = ' ';
  }
  std::istringstream in(text);
  std::string kind;
  while (in >> kind) {
    std::string decl;
    if (!(in >> decl)) throw ParseError("missing declaration after " + kind, 0);
    auto slash = decl.find('/');
    if (slash == std::string::npos) {
      throw ParseError("expected NAME/ARITY, got '" + decl + "'", 0);
    }
    std::string name = decl.substr(0, slash);
    int arity = 0;
    try {
      arity = std::stoi(decl.substr(slash + 1));
    } catch (const std::exception&) {
      throw ParseError("bad arity in '" + decl + "'", 0);
    }
    if (kind == "rel") {
      sig.AddRelation(name, arity);
    } else if (kind == "fun") {
      sig.AddFunction(name, arity);
    } else {
      throw ParseError("unknown declaration kind '" + kind + "'", 0);
    }
  }
  return sig;
}

void Signature::AddRelation(const std::string& name, int arity) {
  CheckSymbolName(name);
  if (arity < 0) throw WellFormednessError("negative arity for " + name);
  if (functions_.count(name)) {
    throw WellFormednessError(name + " already declared as a function");
  }
  auto [it, inserted] = relations_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw WellFormednessError("conflicting arity for relation " + name);
  }
}

void Signature::AddFunction(const std::string& name, int arity) {
  CheckSymbolName(name);
  if (arity < 0) throw WellFormednessError("negative arity for " + name);
  if (relations_.count(name)) {
    throw WellFormednessError(name + " already declared as a relation");
  }
  auto [it, inserted] = functions_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw WellFormednessError("conflicting arity for function " + name);
  }
}

bool Signature::HasRelation(const std::string& name) const {
  return relations_.count(name) > 0;
}

bool Signature::HasFunction(const std::string& name) const {
  return functions_.count(name) > 0;
}

int Signature::RelationArity(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    throw WellFormednessError("undeclared relation " + name);
  }
  return it->second;
}

int Signature::FunctionArity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) {
    throw WellFormednessError("undeclared function " + name);
  }
  return it->second;
}

Signature Signature::Merged(const Signature& other) const {
  Signature out = *this;
  for (const auto& [name, arity] : other.relations_) out.AddRelation(name, arity);
  for (const auto& [name, arity] : other.functions_) out.AddFunction(name, arity);
  return out;
}

std::string Signature::ToString() const {
  std::string out;
  for (const auto& [name, arity] : relations_) {
    out += "rel " + name + "/" + std::to_string(arity) + "\n";
  }
  for (const auto& [name, arity] : functions_) {
    out += "fun " + name + "/" + std::to_string(arity) + "\n";
  }
  return out;
}

// --------------------------------------------------------------------- Term

Term Term::Var(std::string name) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

Term Term::App(std::string function, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(
      Node{false, std::move(function), std::move(args)}));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  return node_->is_var == other.node_->is_var &&
         node_->name == other.node_->name && node_->args == other.node_->args;
}

bool Term::operator<(const Term& other) const {
  if (node_->is_var != other.node_->is_var) return node_->is_var;
  if (node_->name != other.node_->name) return node_->name < other.node_->name;
  return std::lexicographical_compare(node_->args.begin(), node_->args.end(),
                                      other.node_->args.begin(),
                                      other.node_->args.end());
}

// ------------------------------------------------------------------ Formula

bool IsBinderKind(Kind kind) {
  return kind == Kind::kExists || kind == Kind::kForall || kind == Kind::kQ ||
         kind == Kind::kQd;
}

std::string_view KindName(Kind kind) {
  switch (kind) {
    case Kind::kRelation: return "relation";
    case Kind::kEquals: return "equals";
    case Kind::kFalse: return "false";
    case Kind::kDep: return "dep";
    case Kind::kNot: return "not";
    case Kind::kAnd: return "and";
    case Kind::kOr: return "or";
    case Kind::kExists: return "E";
    case Kind::kForall: return "A";
    case Kind::kQ: return "Q";
    case Kind::kQd: return "Qd";
  }
  return "?";
}

Formula Formula::Make(Node node) {
  for (const auto& child : node.children) {
    if (child.has_dep()) node.has_dep = true;
  }
  if (node.kind == Kind::kDep) node.has_dep = true;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::Relation(std::string name, std::vector<Term> args) {
  Node n;
  n.kind = Kind::kRelation;
  n.symbol = std::move(name);
  n.terms = std::move(args);
  return Make(std::move(n));
}

Formula Formula::Equals(Term lhs, Term rhs) {
  Node n;
  n.kind = Kind::kEquals;
  n.terms = {std::move(lhs), std::move(rhs)};
  return Make(std::move(n));
}

Formula Formula::False() {
  static const Formula kFalse = [] {
    Node n;
    n.kind = Kind::kFalse;
    return Make(std::move(n));
  }();
  return kFalse;
}

Formula Formula::Dep(std::vector<Term> terms) {
  if (terms.empty()) {
    throw WellFormednessError("dependence atom needs at least one term");
  }
  Node n;
  n.kind = Kind::kDep;
  n.terms = std::move(terms);
  return Make(std::move(n));
}

Formula Formula::Not(Formula body) {
  if (body.has_dep()) {
    throw WellFormednessError("negation over dependence atom");
  }
  Node n;
  n.kind = Kind::kNot;
  n.children = {std::move(body)};
  return Make(std::move(n));
}

Formula Formula::And(Formula lhs, Formula rhs) {
  Node n;
  n.kind = Kind::kAnd;
  n.children = {std::move(lhs), std::move(rhs)};
  return Make(std::move(n));
}

Formula Formula::Or(Formula lhs, Formula rhs) {
  Node n;
  n.kind = Kind::kOr;
  n.children = {std::move(lhs), std::move(rhs)};
  return Make(std::move(n));
}

Formula Formula::Implies(Formula lhs, Formula rhs) {
  if (lhs.has_dep()) {
    throw WellFormednessError(
        "implication antecedent must not contain dependence atoms");
  }
  return Or(Not(std::move(lhs)), std::move(rhs));
}

Formula Formula::Exists(std::string var, Formula body) {
  return Bind(Kind::kExists, {std::move(var)}, std::move(body));
}

Formula Formula::Forall(std::string var, Formula body) {
  return Bind(Kind::kForall, {std::move(var)}, std::move(body));
}

Formula Formula::Quant(Kind kind, std::vector<std::string> vars, Formula body) {
  if (kind != Kind::kQ && kind != Kind::kQd) {
    throw WellFormednessError("Quant expects Q or Qd");
  }
  return Bind(kind, std::move(vars), std::move(body));
}

Formula Formula::Bind(Kind kind, std::vector<std::string> vars, Formula body) {
  if (!IsBinderKind(kind)) throw WellFormednessError("not a binder kind");
  if (vars.empty()) throw WellFormednessError("binder without variables");
  if ((kind == Kind::kExists || kind == Kind::kForall) && vars.size() != 1) {
    throw WellFormednessError("first-order binders take one variable");
  }
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty() || IsReservedWord(v)) {
      throw WellFormednessError("invalid variable name '" + v + "'");
    }
    if (!seen.insert(v).second) {
      throw WellFormednessError("repeated variable " + v + " in binder tuple");
    }
  }
  Node n;
  n.kind = kind;
  n.vars = std::move(vars);
  n.children = {std::move(body)};
  return Make(std::move(n));
}

Formula Formula::Conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) throw WellFormednessError("empty conjunction");
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = And(out, parts[i]);
  return out;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.symbol == b.symbol && a.terms == b.terms &&
         a.vars == b.vars && a.children == b.children;
}

// ------------------------------------------------------------- Free vars

namespace {

void CollectTermVars(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) CollectTermVars(a, out);
}

void CollectFree(const Formula& f, VarSet& out) {
  switch (f.kind()) {
    case Kind::kRelation:
    case Kind::kEquals:
    case Kind::kDep:
      for (const auto& t : f.terms()) CollectTermVars(t, out);
      return;
    case Kind::kFalse:
      return;
    case Kind::kNot:
    case Kind::kAnd:
    case Kind::kOr:
      for (const auto& c : f.children()) CollectFree(c, out);
      return;
    default: {
      VarSet inner;
      CollectFree(f.body(), inner);
      for (const auto& v : f.vars()) inner.erase(v);
      out.insert(inner.begin(), inner.end());
    }
  }
}

void CollectAll(const Formula& f, VarSet& out, bool bound_only) {
  if (f.is_binder()) {
    out.insert(f.vars().begin(), f.vars().end());
    CollectAll(f.body(), out, bound_only);
    return;
  }
  if (!bound_only) {
    for (const auto& t : f.terms()) CollectTermVars(t, out);
  }
  for (const auto& c : f.children()) CollectAll(c, out, bound_only);
}

void CollectTermSymbols(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  out.insert(t.name());
  for (const auto& a : t.args()) CollectTermSymbols(a, out);
}

void CollectSymbols(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::kRelation) out.insert(f.symbol());
  for (const auto& t : f.terms()) CollectTermSymbols(t, out);
  for (const auto& c : f.children()) CollectSymbols(c, out);
}

}  // namespace

VarSet FreeVariables(const Term& t) {
  VarSet out;
  CollectTermVars(t, out);
  return out;
}

VarSet FreeVariables(const Formula& f) {
  VarSet out;
  CollectFree(f, out);
  return out;
}

VarSet AllVariables(const Formula& f) {
  VarSet out;
  CollectAll(f, out, false);
  return out;
}

VarSet BoundVariables(const Formula& f) {
  VarSet out;
  CollectAll(f, out, true);
  return out;
}

std::set<std::string> Symbols(const Formula& f) {
  std::set<std::string> out;
  CollectSymbols(f, out);
  return out;
}

std::set<std::string> Symbols(const Term& t) {
  std::set<std::string> out;
  CollectTermSymbols(t, out);
  return out;
}

bool IsFlat(const Formula& f) { return !f.has_dep(); }

bool IsQuantifierFree(const Formula& f) {
  if (f.is_binder()) return false;
  for (const auto& c : f.children()) {
    if (!IsQuantifierFree(c)) return false;
  }
  return true;
}

bool NegationsQuantifierFree(const Formula& f) {
  if (f.kind() == Kind::kNot) return IsQuantifierFree(f.body());
  for (const auto& c : f.children()) {
    if (!NegationsQuantifierFree(c)) return false;
  }
  return true;
}

bool NegationDisciplineHolds(const Formula& f) {
  if (f.kind() == Kind::kNot && f.body().has_dep()) return false;
  for (const auto& c : f.children()) {
    if (!NegationDisciplineHolds(c)) return false;
  }
  return true;
}

namespace {

void CheckTermSignature(const Term& t, const Signature& sig) {
  if (t.is_var()) return;
  if (!sig.HasFunction(t.name())) {
    throw WellFormednessError("undeclared function symbol " + t.name());
  }
  if (sig.FunctionArity(t.name()) != static_cast<int>(t.args().size())) {
    throw WellFormednessError("arity mismatch for " + t.name());
  }
  for (const auto& a : t.args()) CheckTermSignature(a, sig);
}

}  // namespace

void CheckSignature(const Formula& f, const Signature& sig) {
  if (f.kind() == Kind::kRelation) {
    if (!sig.HasRelation(f.symbol())) {
      throw WellFormednessError("undeclared relation symbol " + f.symbol());
    }
    if (sig.RelationArity(f.symbol()) != static_cast<int>(f.terms().size())) {
      throw WellFormednessError("arity mismatch for " + f.symbol());
    }
  }
  for (const auto& t : f.terms()) CheckTermSignature(t, sig);
  for (const auto& c : f.children()) CheckSignature(c, sig);
}

// ------------------------------------------------------------ Substitution

Term Substitute(const Term& t, const std::map<std::string, Term>& map) {
  if (t.is_var()) {
    auto it = map.find(t.name());
    return it == map.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(Substitute(a, map));
    changed = changed || args.back() != a;
  }
  return changed ? Term::App(t.name(), std::move(args)) : t;
}

namespace {

std::string DescribeBinder(const Formula& f) {
  std::string out(KindName(f.kind()));
  for (const auto& v : f.vars()) out += " " + v;
  return out;
}

Formula SubstituteImpl(const Formula& f, std::map<std::string, Term> map) {
  if (map.empty()) return f;
  switch (f.kind()) {
    case Kind::kFalse:
      return f;
    case Kind::kRelation:
    case Kind::kEquals:
    case Kind::kDep: {
      std::vector<Term> terms;
      terms.reserve(f.terms().size());
      for (const auto& t : f.terms()) terms.push_back(Substitute(t, map));
      if (terms == f.terms()) return f;
      if (f.kind() == Kind::kRelation) return Formula::Relation(f.symbol(), terms);
      if (f.kind() == Kind::kEquals) return Formula::Equals(terms[0], terms[1]);
      return Formula::Dep(terms);
    }
    case Kind::kNot:
      return Formula::Not(SubstituteImpl(f.body(), map));
    case Kind::kAnd:
      return Formula::And(SubstituteImpl(f.lhs(), map), SubstituteImpl(f.rhs(), map));
    case Kind::kOr:
      return Formula::Or(SubstituteImpl(f.lhs(), map), SubstituteImpl(f.rhs(), map));
    default: {
      for (const auto& v : f.vars()) map.erase(v);
      if (map.empty()) return f;
      VarSet body_free = FreeVariables(f.body());
      for (auto it = map.begin(); it != map.end();) {
        if (!body_free.count(it->first)) {
          it = map.erase(it);
        } else {
          ++it;
        }
      }
      if (map.empty()) return f;
      for (const auto& [x, t] : map) {
        VarSet tv = FreeVariables(t);
        for (const auto& v : f.vars()) {
          if (tv.count(v)) throw CaptureError(DescribeBinder(f));
        }
      }
      return Formula::Bind(f.kind(), f.vars(), SubstituteImpl(f.body(), map));
    }
  }
}

}  // namespace

Formula Substitute(const Formula& f, const Term& t, const std::string& x) {
  return SubstituteImpl(f, {{x, t}});
}

Formula SubstituteMany(const Formula& f, const std::map<std::string, Term>& map) {
  std::map<std::string, Term> effective;
  for (const auto& [x, t] : map) {
    if (!(t.is_var() && t.name() == x)) effective.emplace(x, t);
  }
  return SubstituteImpl(f, std::move(effective));
}

// -------------------------------------------------------------- Freshness

void FreshNames::Reserve(const Formula& f) {
  for (const auto& v : AllVariables(f)) taken_.insert(v);
  for (const auto& s : Symbols(f)) taken_.insert(s);
}

void FreshNames::Reserve(const Signature& sig) {
  for (const auto& [name, arity] : sig.relations()) taken_.insert(name);
  for (const auto& [name, arity] : sig.functions()) taken_.insert(name);
}

std::string FreshNames::Fresh(const std::string& base) {
  int& counter = counters_[base];
  std::string candidate;
  do {
    candidate = base + "_" + std::to_string(++counter);
  } while (taken_.count(candidate));
  taken_.insert(candidate);
  return candidate;
}

namespace {

Formula RenameBoundImpl(const Formula& f, VarSet& seen, FreshNames& fresh) {
  switch (f.kind()) {
    case Kind::kRelation:
    case Kind::kEquals:
    case Kind::kDep:
    case Kind::kFalse:
      return f;
    case Kind::kNot:
      return Formula::Not(RenameBoundImpl(f.body(), seen, fresh));
    case Kind::kAnd: {
      Formula l = RenameBoundImpl(f.lhs(), seen, fresh);
      Formula r = RenameBoundImpl(f.rhs(), seen, fresh);
      return Formula::And(l, r);
    }
    case Kind::kOr: {
      Formula l = RenameBoundImpl(f.lhs(), seen, fresh);
      Formula r = RenameBoundImpl(f.rhs(), seen, fresh);
      return Formula::Or(l, r);
    }
    default: {
      std::vector<std::string> vars = f.vars();
      Formula body = f.body();
      std::map<std::string, Term> renaming;
      for (auto& v : vars) {
        if (seen.count(v)) {
          std::string nv = fresh.Fresh(v);
          renaming.emplace(v, Term::Var(nv));
          v = nv;
        }
        seen.insert(v);
      }
      if (!renaming.empty()) body = SubstituteMany(body, renaming);
      Formula new_body = RenameBoundImpl(body, seen, fresh);
      if (renaming.empty() && new_body == f.body()) return f;
      return Formula::Bind(f.kind(), vars, new_body);
    }
  }
}

bool ApartImpl(const Formula& f, VarSet& seen) {
  if (f.is_binder()) {
    for (const auto& v : f.vars()) {
      if (!seen.insert(v).second) return false;
    }
  }
  for (const auto& c : f.children()) {
    if (!ApartImpl(c, seen)) return false;
  }
  return true;
}

}  // namespace

Formula RenameBound(const Formula& f, FreshNames& fresh) {
  fresh.Reserve(f);
  VarSet seen = FreeVariables(f);
  return RenameBoundImpl(f, seen, fresh);
}

bool IsRenamedApart(const Formula& f) {
  VarSet seen = FreeVariables(f);
  return ApartImpl(f, seen);
}

}  // namespace teamlogic
