#include "teamlogic/normalform.h"

#include <algorithm>
#include <functional>
#include <set>

#include "teamlogic/proof_builder.h"

namespace teamlogic {

// ------------------------------------------------------ NormalFormSentence

NormalFormSentence::NormalFormSentence(std::vector<PrefixEntry> prefix,
                                       std::vector<BlockEntry> block, Formula matrix)
    : prefix_(std::move(prefix)), block_(std::move(block)), matrix_(std::move(matrix)) {
  std::set<std::string> bound;
  for (const auto& p : prefix_) {
    if (p.kind != Kind::kQ && p.kind != Kind::kQd && p.kind != Kind::kForall) {
      throw ShapeError("prefix quantifiers must be Q, Qd or A");
    }
    if (p.var.empty() || IsReservedWord(p.var) || !bound.insert(p.var).second) {
      throw ShapeError("prefix variable '" + p.var + "' is reserved or repeated");
    }
  }
  for (const auto& b : block_) {
    for (const auto& a : b.args) {
      if (!bound.count(a)) {
        throw ShapeError("dependence argument " + a + " of " + b.var +
                         " is not an earlier quantified variable");
      }
    }
    if (b.var.empty() || IsReservedWord(b.var) || !bound.insert(b.var).second) {
      throw ShapeError("block variable '" + b.var + "' is reserved or repeated");
    }
  }
  if (!IsQuantifierFree(matrix_) || matrix_.has_dep()) {
    throw ShapeError("matrix must be quantifier free and free of dependence atoms");
  }
  for (const auto& v : FreeVariables(matrix_)) {
    if (!bound.count(v)) throw ShapeError("matrix variable " + v + " is not quantified");
  }
}

std::vector<std::string> NormalFormSentence::prefix_vars() const {
  std::vector<std::string> out;
  for (const auto& p : prefix_) out.push_back(p.var);
  return out;
}

std::vector<std::string> NormalFormSentence::block_vars() const {
  std::vector<std::string> out;
  for (const auto& b : block_) out.push_back(b.var);
  return out;
}

Formula NormalFormSentence::BlockFormula() const {
  Formula inner = matrix_;
  if (!block_.empty()) {
    std::vector<Formula> parts;
    for (const auto& b : block_) {
      std::vector<Term> terms;
      for (const auto& a : b.args) terms.push_back(Term::Var(a));
      terms.push_back(Term::Var(b.var));
      parts.push_back(Formula::Dep(std::move(terms)));
    }
    parts.push_back(matrix_);
    inner = Formula::Conjunction(parts);
  }
  for (std::size_t i = block_.size(); i-- > 0;) {
    inner = Formula::Exists(block_[i].var, inner);
  }
  return inner;
}

Formula NormalFormSentence::ToFormula() const {
  Formula f = BlockFormula();
  for (std::size_t i = prefix_.size(); i-- > 0;) {
    f = Formula::Bind(prefix_[i].kind, {prefix_[i].var}, f);
  }
  return f;
}

NormalFormSentence NormalFormSentence::FromFormula(const Formula& f) {
  std::vector<PrefixEntry> prefix;
  Formula cur = f;
  while (cur.kind() == Kind::kQ || cur.kind() == Kind::kQd || cur.kind() == Kind::kForall) {
    if (cur.vars().size() != 1) throw ShapeError("prefix binders must bind one variable");
    prefix.push_back({cur.kind(), cur.var()});
    cur = cur.body();
  }
  std::vector<std::string> ys;
  while (cur.kind() == Kind::kExists) {
    ys.push_back(cur.var());
    cur = cur.body();
  }
  std::vector<BlockEntry> block;
  Formula matrix = cur;
  if (!ys.empty()) {
    if (cur.kind() != Kind::kAnd) {
      throw ShapeError("existential block must be followed by dependence atoms");
    }
    matrix = cur.rhs();
    std::vector<Formula> deps;
    Formula rest = cur.lhs();
    for (std::size_t i = 1; i < ys.size(); ++i) {
      if (rest.kind() != Kind::kAnd) throw ShapeError("too few dependence atoms");
      deps.push_back(rest.rhs());
      rest = rest.lhs();
    }
    deps.push_back(rest);
    std::reverse(deps.begin(), deps.end());
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const Formula& d = deps[i];
      if (d.kind() != Kind::kDep) {
        throw ShapeError("expected a dependence atom for " + ys[i]);
      }
      BlockEntry e;
      e.var = ys[i];
      const auto& ts = d.terms();
      if (!ts.back().is_var() || ts.back().name() != ys[i]) {
        throw ShapeError("dependence atom " + Render(d) + " does not determine " + ys[i]);
      }
      for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
        if (!ts[j].is_var()) {
          throw ShapeError("dependence atom " + Render(d) + " has a complex argument");
        }
        e.args.push_back(ts[j].name());
      }
      block.push_back(std::move(e));
    }
  }
  NormalFormSentence out(std::move(prefix), std::move(block), matrix);
  if (out.ToFormula() != f) throw ShapeError("not in canonical normal form");
  return out;
}

std::optional<NormalFormSentence> NormalFormSentence::Recognize(const Formula& f) {
  try {
    return FromFormula(f);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ------------------------------------------------------------- compiler

namespace {

bool IsQuantKind(Kind k) { return k == Kind::kQ || k == Kind::kQd; }

std::size_t LeadingExists(const Formula& f) {
  std::size_t n = 0;
  for (const Formula* cur = &f; cur->kind() == Kind::kExists; cur = &cur->body()) ++n;
  return n;
}

std::vector<std::string> LeadingExistsVars(const Formula& f, std::size_t n) {
  std::vector<std::string> out;
  const Formula* cur = &f;
  for (std::size_t i = 0; i < n; ++i, cur = &cur->body()) out.push_back(cur->var());
  return out;
}

Formula DepOn(const VarSet& args, const std::string& x) {
  std::vector<Term> terms;
  for (const auto& a : args) terms.push_back(Term::Var(a));
  terms.push_back(Term::Var(x));
  return Formula::Dep(std::move(terms));
}

class Compiler {
 public:
  Compiler(ProofBuilder& b, FreshNames& fresh) : b_(b), fresh_(fresh) {}

  // f at `line` to its alpha-variant g.
  int Alpha(int line, const Formula& g) {
    const Formula f = b_.At(line);
    if (f == g) return line;
    switch (f.kind()) {
      case Kind::kAnd:
        return b_.UnderAnd(
            line, [&](ProofBuilder&, int l) { return Alpha(l, g.lhs()); },
            [&](ProofBuilder&, int l) { return Alpha(l, g.rhs()); });
      case Kind::kOr:
        return b_.UnderOr(
            line, [&](ProofBuilder&, int l) { return Alpha(l, g.lhs()); },
            [&](ProofBuilder&, int l) { return Alpha(l, g.rhs()); });
      case Kind::kExists:
      case Kind::kForall:
      case Kind::kQ:
      case Kind::kQd: {
        int cur = f.var() == g.var() ? line : Rename(line, g.var());
        return b_.UnderBinder(cur, [&](ProofBuilder&, int l) { return Alpha(l, g.body()); });
      }
      default:
        throw WellFormednessError("not an alpha-variant: " + Render(f));
    }
  }

  // Every dependence argument that is not a variable becomes an existential
  // variable fixed by an identity.
  int Unnest(int line) {
    const Formula f = b_.At(line);
    if (!f.has_dep()) return line;
    switch (f.kind()) {
      case Kind::kDep: {
        const auto& ts = f.terms();
        std::size_t i = 0;
        while (i < ts.size() && ts[i].is_var()) ++i;
        if (i == ts.size()) return line;
        std::string z = fresh_.Fresh("z");
        std::vector<Term> args = ts;
        args[i] = Term::Var(z);
        Formula c = Formula::Exists(
            z, Formula::And(Formula::Dep(args), Formula::Equals(Term::Var(z), ts[i])));
        int l = b_.Rule("unnest", c, {line});
        return b_.UnderBinder(l, [&](ProofBuilder& b, int k) {
          return b.UnderAnd(
              k, [&](ProofBuilder&, int d) { return Unnest(d); }, Same());
        });
      }
      case Kind::kAnd:
        return b_.UnderAnd(line, Rec(&Compiler::Unnest), Rec(&Compiler::Unnest));
      case Kind::kOr:
        return b_.UnderOr(line, Rec(&Compiler::Unnest), Rec(&Compiler::Unnest));
      case Kind::kExists:
      case Kind::kForall:
      case Kind::kQ:
      case Kind::kQd:
        return b_.UnderBinder(line, Rec(&Compiler::Unnest));
      default:
        return line;
    }
  }

  // Prenex form, hoisting the leftmost binder first.
  int Prenex(int line) {
    const Formula f = b_.At(line);
    if (f.is_binder()) return b_.UnderBinder(line, Rec(&Compiler::Prenex));
    if (f.kind() == Kind::kAnd) {
      return PullAnd(b_.UnderAnd(line, Rec(&Compiler::Prenex), Rec(&Compiler::Prenex)));
    }
    if (f.kind() == Kind::kOr) {
      return PullOr(b_.UnderOr(line, Rec(&Compiler::Prenex), Rec(&Compiler::Prenex)));
    }
    return line;
  }

  // Quantifier-free formula to E z.. (dep(.., z1) & .. & theta).
  int Distribute(int line) {
    const Formula f = b_.At(line);
    if (!f.has_dep()) return line;
    switch (f.kind()) {
      case Kind::kDep: {
        std::vector<Term> ts = f.terms();
        for (const auto& t : ts) {
          if (!t.is_var()) throw ShapeError("dependence atom with a complex argument");
        }
        Term last = ts.back();
        std::string z = fresh_.Fresh("z");
        ts.back() = Term::Var(z);
        Formula c = Formula::Exists(
            z, Formula::And(Formula::Dep(ts), Formula::Equals(Term::Var(z), last)));
        return b_.Rule("unnest", c, {line});
      }
      case Kind::kAnd:
        return MergeAnd(
            b_.UnderAnd(line, Rec(&Compiler::Distribute), Rec(&Compiler::Distribute)));
      case Kind::kOr: {
        int l = b_.UnderOr(line, Rec(&Compiler::Distribute), Rec(&Compiler::Distribute));
        const Formula g = b_.At(l);
        const std::size_t na = LeadingExists(g.lhs()), nb = LeadingExists(g.rhs());
        if (na + nb == 0) return l;
        std::vector<std::string> vars = LeadingExistsVars(g.lhs(), na);
        std::vector<Formula> deps = Deps(g.lhs(), na);
        for (const auto& v : LeadingExistsVars(g.rhs(), nb)) vars.push_back(v);
        for (const auto& d : Deps(g.rhs(), nb)) deps.push_back(d);
        Formula body = Formula::Or(Matrix(g.lhs(), na), Matrix(g.rhs(), nb));
        return b_.Rule("dep_dist", JoinBlock(vars, deps, body), {l});
      }
      default:
        throw ShapeError("dependence atom below a negation");
    }
  }

  // Applies `c` below the leading binders.
  int UnderPrefix(int line, const Conversion& c) {
    if (b_.At(line).is_binder()) {
      return b_.UnderBinder(line, [&](ProofBuilder&, int l) { return UnderPrefix(l, c); });
    }
    return c(b_, line);
  }

  // m prefix binders over a canonical block of nb variables.
  int Introduce(int line, std::size_t m, std::size_t nb) {
    if (m == 0) return line;
    const Formula f = b_.At(line);
    int r = b_.UnderBinder(
        line, [this, m, nb](ProofBuilder&, int l) { return Introduce(l, m - 1, nb); });
    if (f.kind() != Kind::kExists) return r;
    return Push(r);
  }

 private:
  using Method = int (Compiler::*)(int);
  Conversion Rec(Method m) {
    return [this, m](ProofBuilder&, int l) { return (this->*m)(l); };
  }
  static Conversion Same() {
    return [](ProofBuilder&, int l) { return l; };
  }

  static std::vector<Formula> Deps(const Formula& block, std::size_t n) {
    std::vector<Formula> out;
    if (n == 0) return out;
    const Formula* cur = &block;
    for (std::size_t i = 0; i < n; ++i) cur = &cur->body();
    Formula rest = cur->lhs();
    for (std::size_t i = 1; i < n; ++i) {
      out.push_back(rest.rhs());
      rest = rest.lhs();
    }
    out.push_back(rest);
    std::reverse(out.begin(), out.end());
    return out;
  }

  static Formula Matrix(const Formula& block, std::size_t n) {
    const Formula* cur = &block;
    for (std::size_t i = 0; i < n; ++i) cur = &cur->body();
    return n == 0 ? *cur : cur->rhs();
  }

  static Formula JoinBlock(const std::vector<std::string>& vars,
                           const std::vector<Formula>& deps, const Formula& body) {
    Formula inner = body;
    if (!deps.empty()) {
      std::vector<Formula> parts = deps;
      parts.push_back(body);
      inner = Formula::Conjunction(parts);
    }
    for (std::size_t i = vars.size(); i-- > 0;) inner = Formula::Exists(vars[i], inner);
    return inner;
  }

  int Rename(int line, const std::string& y) {
    const Formula f = b_.At(line);
    const std::string x = f.var();
    Formula body = Substitute(f.body(), Term::Var(y), x);
    switch (f.kind()) {
      case Kind::kQ:
      case Kind::kQd:
        return b_.Rule("bound", Formula::Quant(f.kind(), {y}, body), {line});
      case Kind::kForall:
        return b_.ForallI(b_.ForallE(line, Term::Var(y)), y);
      default: {
        std::string label;
        int a = b_.Assume(f.body(), &label);
        int i = b_.ExistsI(a, Formula::Exists(y, body), Term::Var(x));
        return b_.ExistsE(line, i, label);
      }
    }
  }

  int AndComm(int line) {
    int r = b_.AndE2(line);
    int l = b_.AndE1(line);
    return b_.AndI(r, l);
  }

  // H x a & c to H x (a & c).
  int ScopeAnd(int line) {
    const Formula f = b_.At(line);
    const Formula& h = f.lhs();
    if (IsQuantKind(h.kind())) {
      return b_.Rule("scope_and", Formula::Quant(h.kind(), h.vars(), Formula::And(h.body(), f.rhs())),
                     {line});
    }
    const std::string x = h.var();
    int l = b_.AndE1(line);
    int c = b_.AndE2(line);
    if (h.kind() == Kind::kForall) {
      return b_.ForallI(b_.AndI(b_.ForallE(l, Term::Var(x)), c), x);
    }
    std::string label;
    int a = b_.Assume(h.body(), &label);
    int i = b_.AndI(a, c);
    int e = b_.ExistsI(i, Formula::Exists(x, b_.At(i)), Term::Var(x));
    return b_.ExistsE(l, e, label);
  }

  int PullAnd(int line) {
    const Formula f = b_.At(line);
    if (f.lhs().is_binder()) {
      return b_.UnderBinder(ScopeAnd(line), Rec(&Compiler::PullAnd));
    }
    if (f.rhs().is_binder()) {
      int l = ScopeAnd(AndComm(line));
      return b_.UnderBinder(l, [this](ProofBuilder&, int k) { return PullAnd(AndComm(k)); });
    }
    return line;
  }

  int ScopeOr(int line) {
    const Formula f = b_.At(line);
    const Formula& h = f.lhs();
    return b_.Rule("scope_or", Formula::Bind(h.kind(), h.vars(), Formula::Or(h.body(), f.rhs())),
                   {line});
  }

  int PullOr(int line) {
    const Formula f = b_.At(line);
    if (f.lhs().is_binder()) {
      return b_.UnderBinder(ScopeOr(line), Rec(&Compiler::PullOr));
    }
    if (f.rhs().is_binder()) {
      int l = ScopeOr(b_.OrComm(line));
      return b_.UnderBinder(l, [this](ProofBuilder& b, int k) { return PullOr(b.OrComm(k)); });
    }
    return line;
  }

  // (E u.. (du.. & ta)) & (E v.. (dv.. & tb)) to E u.. E v.. (du.. & dv.. & (ta & tb)).
  int MergeAnd(int line) {
    const Formula f = b_.At(line);
    const std::size_t na = LeadingExists(f.lhs()), nb = LeadingExists(f.rhs());
    if (na + nb == 0) return line;
    std::vector<std::string> vars = LeadingExistsVars(f.lhs(), na);
    for (const auto& v : LeadingExistsVars(f.rhs(), nb)) vars.push_back(v);
    auto oa = b_.OpenBlock(b_.AndE1(line), na);
    auto ob = b_.OpenBlock(b_.AndE2(line), nb);
    std::vector<int> pa = na ? b_.SplitConjunction(oa.body, na + 1) : std::vector<int>{oa.body};
    std::vector<int> pb = nb ? b_.SplitConjunction(ob.body, nb + 1) : std::vector<int>{ob.body};
    std::vector<int> parts(pa.begin(), pa.end() - 1);
    parts.insert(parts.end(), pb.begin(), pb.end() - 1);
    parts.push_back(b_.AndI(pa.back(), pb.back()));
    int bound = b_.BindExists(b_.JoinConjunction(parts), vars);
    return b_.CloseBlock(oa, b_.CloseBlock(ob, bound));
  }

  // E x R with R in normal-form shape: moves E x behind the binders of R.
  int Push(int line) {
    const Formula f = b_.At(line);
    const std::string x = f.var();
    const Formula& r = f.body();
    if (r.is_binder() && r.kind() != Kind::kExists) {
      const std::string w = r.var();
      VarSet zs = FreeVariables(r.body());
      zs.erase(x);
      zs.erase(w);
      Formula c = Formula::Bind(r.kind(), r.vars(),
                                Formula::Exists(x, Formula::And(DepOn(zs, x), r.body())));
      int l = b_.Rule("dep_intro", c, {line});
      return b_.UnderBinder(l, Rec(&Compiler::PushWithAtom));
    }
    return Absorb(AddAtom(line));
  }

  // E x (dep(.., x) & phi) with phi in normal-form shape.
  int PushWithAtom(int line) {
    const Formula f = b_.At(line);
    const std::string x = f.var();
    const Formula& phi = f.body().rhs();
    if (!phi.is_binder() || phi.kind() == Kind::kExists) return Absorb(line);
    int l = b_.UnderBinder(line, Rec(&Compiler::AndIntoBinder));
    const Formula g = b_.At(l);
    const Formula& h = g.body();
    VarSet zs = FreeVariables(h.body());
    zs.erase(x);
    zs.erase(h.var());
    Formula c = Formula::Bind(h.kind(), h.vars(),
                              Formula::Exists(x, Formula::And(DepOn(zs, x), h.body())));
    int di = b_.Rule("dep_intro", c, {l});
    return b_.UnderBinder(di, [this](ProofBuilder& b, int k) {
      int pruned = b.UnderBinder(k, [](ProofBuilder& bb, int j) { return bb.AndE2(j); });
      return PushWithAtom(pruned);
    });
  }

  // d & H w phi to H w (d & phi), H in {A, Q, Qd}.
  int AndIntoBinder(int line) {
    const Formula f = b_.At(line);
    const Formula& h = f.rhs();
    if (IsQuantKind(h.kind())) {
      int l = ScopeAnd(AndComm(line));
      return b_.UnderBinder(l, [this](ProofBuilder&, int k) { return AndComm(k); });
    }
    const std::string w = h.var();
    int d = b_.AndE1(line);
    int e = b_.ForallE(b_.AndE2(line), Term::Var(w));
    return b_.ForallI(b_.AndI(d, e), w);
  }

  // E x chi to E x (dep(FV(chi) - x, x) & chi) through E x A y chi.
  int AddAtom(int line) {
    const Formula f = b_.At(line);
    const std::string x = f.var();
    const Formula chi = f.body();
    std::string y = fresh_.Fresh("y");
    std::string label;
    int a = b_.Assume(chi, &label);
    int fa = b_.ForallI(a, y);
    int ei = b_.ExistsI(fa, Formula::Exists(x, Formula::Forall(y, chi)), Term::Var(x));
    int ee = b_.ExistsE(line, ei, label);
    VarSet zs = FreeVariables(chi);
    zs.erase(x);
    Formula c = Formula::Forall(y, Formula::Exists(x, Formula::And(DepOn(zs, x), chi)));
    int di = b_.Rule("dep_intro", c, {ee});
    return b_.ForallE(di, Term::Var(y));
  }

  // E x (d & E u.. (du.. & theta)) to E x E u.. (d & du.. & theta).
  int Absorb(int line) {
    const Formula f = b_.At(line);
    const std::size_t n = LeadingExists(f.body().rhs());
    if (n == 0) return line;
    return b_.UnderBinder(line, [this, n](ProofBuilder& b, int k) {
      const std::vector<std::string> vars = LeadingExistsVars(b.At(k).rhs(), n);
      int d = b.AndE1(k);
      auto ob = b.OpenBlock(b.AndE2(k), n);
      std::vector<int> parts = {d};
      for (int p : b.SplitConjunction(ob.body, n + 1)) parts.push_back(p);
      return b.CloseBlock(ob, b.BindExists(b.JoinConjunction(parts), vars));
    });
  }

  ProofBuilder& b_;
  FreshNames& fresh_;
};

void CheckPrenexable(const Formula& f) {
  if (!NegationsQuantifierFree(f)) {
    throw ShapeError("negation in front of a quantified formula");
  }
}

std::size_t LeadingBinders(const Formula& f) {
  std::size_t n = 0;
  for (const Formula* cur = &f; cur->is_binder(); cur = &cur->body()) ++n;
  return n;
}

const Formula& SkipBinders(const Formula& f, std::size_t n) {
  const Formula* cur = &f;
  for (std::size_t i = 0; i < n; ++i) cur = &cur->body();
  return *cur;
}

// Runs a conversion on `f` as a lone assumption.
Formula Run(const Formula& f, const std::function<int(Compiler&, int)>& conv,
            FreshNames& fresh) {
  Derivation d;
  ProofBuilder b(d);
  Compiler c(b, fresh);
  int line = d.Assume("s", f);
  return b.At(conv(c, line));
}

// Size of the existential block closing a prenex formula.
std::size_t BlockSize(const Formula& f) {
  const std::size_t total = LeadingBinders(f);
  for (std::size_t nb = total + 1; nb-- > 0;) {
    bool all_exists = true;
    const Formula* cur = &f;
    for (std::size_t i = 0; i < total; ++i, cur = &cur->body()) {
      if (i >= total - nb && cur->kind() != Kind::kExists) all_exists = false;
    }
    if (!all_exists) continue;
    const Formula& block = SkipBinders(f, total - nb);
    const Formula& matrix = SkipBinders(f, total);
    if (nb == 0) {
      if (!matrix.has_dep()) return 0;
      continue;
    }
    if (matrix.kind() != Kind::kAnd) continue;
    Formula rest = matrix.lhs();
    std::vector<Formula> deps;
    bool ok = true;
    for (std::size_t i = 1; i < nb && ok; ++i) {
      if (rest.kind() != Kind::kAnd) ok = false;
      else {
        deps.push_back(rest.rhs());
        rest = rest.lhs();
      }
    }
    if (!ok) continue;
    deps.push_back(rest);
    std::reverse(deps.begin(), deps.end());
    const auto vars = LeadingExistsVars(block, nb);
    for (std::size_t i = 0; i < nb && ok; ++i) {
      ok = deps[i].kind() == Kind::kDep && deps[i].terms().back() == Term::Var(vars[i]);
    }
    if (ok && !matrix.rhs().has_dep() && IsQuantifierFree(matrix.rhs())) return nb;
  }
  throw ShapeError("no existential block with dependence atoms closes the prefix");
}

}  // namespace

Formula RenameApart(const Formula& f) {
  FreshNames fresh(f);
  return RenameBound(f, fresh);
}

Formula ToPrenex(const Formula& f) {
  CheckPrenexable(f);
  if (!IsRenamedApart(f)) throw ShapeError("formula is not renamed apart");
  FreshNames fresh(f);
  return Run(f, [](Compiler& c, int l) { return c.Prenex(l); }, fresh);
}

Formula DistributeDependence(const Formula& f, FreshNames& fresh) {
  if (!IsQuantifierFree(f)) throw ShapeError("formula is not quantifier free");
  fresh.Reserve(f);
  return Run(f, [](Compiler& c, int l) { return c.Distribute(l); }, fresh);
}

NormalFormSentence IntroduceDependence(const Formula& f) {
  const std::size_t total = LeadingBinders(f);
  const std::size_t nb = BlockSize(f);
  FreshNames fresh(f);
  return NormalFormSentence::FromFormula(
      Run(f, [&](Compiler& c, int l) { return c.Introduce(l, total - nb, nb); }, fresh));
}

NormalizeResult Normalize(const Formula& sentence, const Signature& sig,
                          const NormalizeOptions& options) {
  if (!FreeVariables(sentence).empty()) throw ShapeError("not a sentence: free variables");
  std::function<void(const Formula&)> arity = [&](const Formula& f) {
    if (IsQuantKind(f.kind()) && f.vars().size() != 1) {
      throw ShapeError("normalization covers quantifiers of type <1> only");
    }
    for (const auto& c : f.children()) arity(c);
  };
  arity(sentence);
  CheckPrenexable(sentence);
  CheckSignature(sentence, sig);

  Derivation d;
  int line = d.Assume(options.assumption_label, sentence);
  if (auto nf = NormalFormSentence::Recognize(sentence)) return {*nf, d};

  ProofBuilder b(d);
  FreshNames fresh(sentence);
  fresh.Reserve(sig);
  fresh.Reserve(options.assumption_label);
  Compiler c(b, fresh);
  line = c.Alpha(line, RenameBound(sentence, fresh));
  line = c.Unnest(line);
  line = c.Prenex(line);
  const std::size_t m = LeadingBinders(b.At(line));
  line = c.UnderPrefix(line, [&](ProofBuilder&, int l) { return c.Distribute(l); });
  const std::size_t nb = LeadingExists(SkipBinders(b.At(line), m));
  line = c.Introduce(line, m, nb);
  NormalFormSentence nf = NormalFormSentence::FromFormula(b.At(line));
  return {nf, Pruned(d, line)};
}

}  // namespace teamlogic
