#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "criteria.h"
#include "random_formulas.h"
#include "teamlogic/approx.h"
#include "teamlogic/kernel.h"
#include "teamlogic/proof_builder.h"
#include "teamlogic/semantics.h"

namespace teamlogic::acceptance {

namespace {

using testing::FormulaGen;

constexpr int kInstancesPerRule = 200;
constexpr int kSamplesPerInstance = 24;

const Kind kBinders[] = {Kind::kExists, Kind::kForall, Kind::kQ, Kind::kQd};

class Instances {
 public:
  explicit Instances(std::mt19937_64& rng)
      : rng_(rng), g_(rng), wide_(rng, {"x", "y", "z", "u"}), no_x_(rng, {"y", "z"}) {}

  // Builds one random instance of `rule` into `b`.
  void Build(const std::string& rule, ProofBuilder& b) {
    Derivation& d = b.derivation();
    std::string la, lb;
    if (rule == "and_i") {
      b.AndI(b.Assume(g_.Any(2), &la), b.Assume(g_.Any(2), &lb));
    } else if (rule == "and_e1" || rule == "and_e2") {
      int l = b.Assume(Formula::And(g_.Any(2), g_.Any(2)), &la);
      rule == "and_e1" ? b.AndE1(l) : b.AndE2(l);
    } else if (rule == "or_i1" || rule == "or_i2") {
      Formula a = g_.Any(2), other = g_.Any(2);
      int l = b.Assume(a, &la);
      b.Rule(rule, rule == "or_i1" ? Formula::Or(a, other) : Formula::Or(other, a), {l});
    } else if (rule == "or_e") {
      Formula c = g_.Flat(1);
      Formula a = Formula::And(c, g_.Any(2)), e = Formula::And(c, g_.Any(2));
      int l = b.Assume(Formula::Or(a, e), &la);
      std::string l1, l2;
      int c1 = b.AndE1(b.Assume(a, &l1));
      int c2 = b.AndE1(b.Assume(e, &l2));
      d.Apply("or_e", c, {l, c1, c2}, {}, {l1, l2});
    } else if (rule == "not_i") {
      Formula c = g_.QuantifierFree(2), e = g_.QuantifierFree(1);
      Formula conj = Formula::And(c, e);
      int h = b.Assume(conj, &la);
      int n = b.Assume(Formula::Not(c), &lb);
      int f = d.Apply("bot_i", Formula::False(), {b.AndE1(h), n});
      d.Apply("not_i", Formula::Not(conj), {f}, {}, {la});
    } else if (rule == "raa") {
      Formula c = g_.Flat(1);
      if (g_.Coin()) {
        int k = b.Assume(Formula::And(c, g_.Any(2)), &la);
        int h = b.Assume(Formula::Not(c), &lb);
        int f = d.Apply("bot_i", Formula::False(), {b.AndE1(k), h});
        d.Apply("raa", c, {f}, {}, {lb});
      } else {
        Formula lem = Formula::Or(c, Formula::Not(c));
        int h = b.Assume(Formula::Not(lem), &la);
        int p = b.Assume(c, &lb);
        int f1 = d.Apply("bot_i", Formula::False(), {d.Apply("or_i1", lem, {p}), h});
        int nc = d.Apply("not_i", Formula::Not(c), {f1}, {}, {lb});
        int f2 = d.Apply("bot_i", Formula::False(), {d.Apply("or_i2", lem, {nc}), h});
        d.Apply("raa", lem, {f2}, {}, {la});
      }
    } else if (rule == "bot_i") {
      Formula a = g_.Flat(1);
      d.Apply("bot_i", Formula::False(), {b.Assume(a, &la), b.Assume(Formula::Not(a), &lb)});
    } else if (rule == "dual") {
      Formula a = g_.Flat(1);
      std::string v = g_.Var();
      int l = b.Assume(Formula::Quant(Kind::kQd, {v}, a), &la);
      d.Apply("dual",
              Formula::Not(Formula::Quant(Kind::kQ, {v}, Formula::Not(a))), {l});
    } else if (rule == "forall_i") {
      Formula body = no_x_.Any(2);
      int h = b.Assume(Formula::Forall("y", body), &la);
      int inst = b.ForallE(h, Term::Var("x"));
      if (g_.Coin()) inst = b.AndI(inst, b.Assume(no_x_.Any(1), &lb));
      b.ForallI(inst, "x");
    } else if (rule == "forall_e") {
      int h = b.Assume(Formula::Forall(g_.Var(), g_.Any(2)), &la);
      b.ForallE(h, g_.RandomTerm(1));
    } else if (rule == "exists_i") {
      Formula a = g_.Any(2);
      std::string v = g_.Var();
      Term t = g_.RandomTerm(1);
      int l = b.Assume(Substitute(a, t, v), &la);
      b.ExistsI(l, Formula::Exists(v, a), t);
    } else if (rule == "exists_e") {
      Formula c = no_x_.Any(2);
      Formula body = Formula::And(c, g_.Any(2));
      int l = b.Assume(Formula::Exists("x", body), &la);
      int r = b.AndE1(b.Assume(body, &lb));
      std::string le;
      if (g_.Coin()) r = b.AndI(r, b.Assume(no_x_.Any(1), &le));
      b.ExistsE(l, r, lb);
    } else if (rule == "or_subst") {
      Formula a = g_.Any(2), e1 = g_.Any(1), e2 = g_.Any(1);
      Formula e = Formula::And(e1, e2);
      int l = b.Assume(Formula::Or(a, e), &la);
      int r = b.Assume(e, &lb);
      std::string lx;
      r = g_.Coin() ? b.AndE1(r) : b.AndI(r, b.Assume(g_.Any(1), &lx));
      b.OrSubst(l, r, lb);
    } else if (rule == "or_comm") {
      b.OrComm(b.Assume(Formula::Or(g_.Any(2), g_.Any(2)), &la));
    } else if (rule == "or_assoc") {
      Formula p = g_.Any(1), q = g_.Any(1), r = g_.Any(1);
      int l = b.Assume(Formula::Or(Formula::Or(p, q), r), &la);
      d.Apply("or_assoc", Formula::Or(p, Formula::Or(q, r)), {l});
    } else if (rule == "scope_or" || rule == "scope_and") {
      Kind k = rule == "scope_or" ? kBinders[g_.Below(4)] : kBinders[2 + g_.Below(2)];
      Formula a = g_.Any(2), other = no_x_.Any(2);
      Formula h = Formula::Bind(k, {"x"}, a);
      if (rule == "scope_or") {
        int l = b.Assume(Formula::Or(h, other), &la);
        d.Apply(rule, Formula::Bind(k, {"x"}, Formula::Or(a, other)), {l});
      } else {
        int l = b.Assume(Formula::And(h, other), &la);
        d.Apply(rule, Formula::Bind(k, {"x"}, Formula::And(a, other)), {l});
      }
    } else if (rule == "unnest") {
      Formula dep = g_.Dep();
      std::vector<Term> terms = dep.terms();
      std::size_t i = g_.Below(static_cast<int>(terms.size()));
      Term ti = terms[i];
      terms[i] = Term::Var("u");
      int l = b.Assume(dep, &la);
      d.Apply("unnest",
              Formula::Exists("u", Formula::And(Formula::Dep(terms),
                                                Formula::Equals(Term::Var("u"), ti))),
              {l});
    } else if (rule == "dep_dist") {
      auto block = [&](const std::vector<std::string>& names, std::vector<std::string>* vars,
                       std::vector<Formula>* deps) {
        std::vector<std::string> scope = {"x", "y", "z"};
        int n = g_.Below(3);
        for (int i = 0; i < n; ++i) {
          FormulaGen args(rng_, scope);
          std::vector<Term> terms;
          for (int j = g_.Below(3); j > 0; --j) terms.push_back(args.RandomTerm(1));
          terms.push_back(Term::Var(names[i]));
          vars->push_back(names[i]);
          deps->push_back(Formula::Dep(terms));
          scope.push_back(names[i]);
        }
        return FormulaGen(rng_, scope).QuantifierFree(2);
      };
      std::vector<std::string> va, vb;
      std::vector<Formula> da, db;
      Formula pa = block({"u", "v"}, &va, &da);
      Formula pb = block({"w", "s"}, &vb, &db);
      auto join = [](const std::vector<std::string>& vars, const std::vector<Formula>& deps,
                     const Formula& body) {
        Formula inner = body;
        if (!deps.empty()) {
          std::vector<Formula> parts = deps;
          parts.push_back(body);
          inner = Formula::Conjunction(parts);
        }
        for (std::size_t i = vars.size(); i-- > 0;) inner = Formula::Exists(vars[i], inner);
        return inner;
      };
      int l = b.Assume(Formula::Or(join(va, da, pa), join(vb, db, pb)), &la);
      va.insert(va.end(), vb.begin(), vb.end());
      da.insert(da.end(), db.begin(), db.end());
      d.Apply("dep_dist", join(va, da, Formula::Or(pa, pb)), {l});
    } else if (rule == "dep_intro") {
      Kind k = g_.Coin(0.34) ? Kind::kForall : kBinders[2 + g_.Below(2)];
      Formula a = wide_.Any(2);
      std::vector<Term> terms;
      for (const auto& v : FreeVariables(a)) {
        if (v != "x" && v != "y") terms.push_back(Term::Var(v));
      }
      terms.push_back(Term::Var("x"));
      int l = b.Assume(Formula::Exists("x", Formula::Bind(k, {"y"}, a)), &la);
      d.Apply("dep_intro",
              Formula::Bind(k, {"y"}, Formula::Exists("x", Formula::And(Formula::Dep(terms), a))),
              {l});
    } else if (rule == "mono") {
      Kind k = kBinders[2 + g_.Below(2)];
      Formula a = g_.Any(2), e = g_.Any(1);
      Formula body = Formula::And(a, e);
      int l = b.Assume(Formula::Bind(k, {"x"}, body), &la);
      int r = b.Assume(body, &lb);
      switch (g_.Below(3)) {
        case 0: r = b.AndE1(r); break;
        case 1: r = d.Apply("or_i1", Formula::Or(body, g_.Any(1)), {r}); break;
        default: {
          std::string lx;
          r = b.AndI(b.AndE2(r), b.Assume(no_x_.Any(1), &lx));
        }
      }
      b.Mono(l, r, lb);
    } else if (rule == "bound") {
      Kind k = kBinders[2 + g_.Below(2)];
      std::string v = g_.Var();
      Formula a = g_.Any(2);
      int l = b.Assume(Formula::Bind(k, {v}, a), &la);
      d.Apply("bound", Formula::Bind(k, {"u"}, Substitute(a, Term::Var("u"), v)), {l});
    } else if (rule == "id_refl") {
      Term t = g_.RandomTerm(2);
      d.Apply("id_refl", Formula::Equals(t, t));
    } else if (rule == "id_subst") {
      Formula phi = wide_.Flat(1);
      Term t = g_.RandomTerm(1), r = g_.RandomTerm(1);
      int p0 = b.Assume(Substitute(phi, r, "u"), &la);
      int p1 = b.Assume(Formula::Equals(t, r), &lb);
      d.Apply("id_subst", Substitute(phi, t, "u"), {p0, p1},
              {{"x", "u"}, {"phi", Render(phi)}});
    } else if (rule == "approx") {
      BuildApprox(b);
    } else {
      throw WellFormednessError("no generator for " + rule);
    }
  }

 private:
  // From sigma, B and A^1 (and sometimes an unused A^2) derive
  // H1 x1 .. Hm xm E y1 .. E yn theta.
  void BuildApprox(ProofBuilder& b) {
    NormalFormSentence sigma = g_.RandomNormalForm(2, 2);
    while (sigma.prefix().empty()) sigma = g_.RandomNormalForm(2, 2);
    Derivation& d = b.derivation();
    std::string ls, lb, la, l2;
    int s = b.Assume(sigma.ToFormula(), &ls);
    int bl = b.Assume(MakeB(sigma, "R"), &lb);
    int a1 = b.Assume(MakeA(sigma, "R", 1), &la);
    const auto xs = sigma.prefix_vars();
    const auto ys = sigma.block_vars();
    Formula target = sigma.matrix();
    for (std::size_t i = ys.size(); i-- > 0;) target = Formula::Exists(ys[i], target);

    Conversion at_bottom = [&](ProofBuilder& pb, int r_line) {
      int cur = a1;
      for (const auto& x : xs) cur = pb.ForallE(cur, Term::Var(x));
      auto block = pb.OpenBlock(cur, ys.size());
      const Formula disj = pb.At(block.body);
      std::string ln, lt;
      int neg = pb.Assume(disj.lhs(), &ln);
      int f = pb.Rule("bot_i", Formula::False(), {r_line, neg});
      int case1 = pb.Rule("raa", target, {f});
      int theta = pb.Assume(disj.rhs(), &lt);
      // Re-bind the block variables innermost first.
      std::vector<Formula> levels = {sigma.matrix()};
      for (std::size_t i = ys.size(); i-- > 0;) {
        levels.push_back(Formula::Exists(ys[i], levels.back()));
      }
      int cur2 = theta;
      for (std::size_t i = ys.size(); i-- > 0;) {
        Formula want = levels[ys.size() - i];
        for (std::size_t j = 0; j < i; ++j) {
          want = Substitute(want, Term::Var(ApproxBlockVar(static_cast<int>(j) + 1, 1)), ys[j]);
        }
        cur2 = pb.ExistsI(cur2, want, Term::Var(ApproxBlockVar(static_cast<int>(i) + 1, 1)));
      }
      int joined = pb.derivation().Apply("or_e", target, {block.body, case1, cur2}, {},
                                         {ln, lt});
      return pb.CloseBlock(block, joined);
    };
    std::function<Conversion(std::size_t)> under = [&](std::size_t depth) -> Conversion {
      if (depth == xs.size()) return at_bottom;
      return [&, depth](ProofBuilder& pb, int line) {
        return pb.UnderBinder(line, under(depth + 1));
      };
    };
    int psi = under(0)(b, bl);
    std::vector<std::string> discharges = {lb, la};
    if (g_.Coin()) {
      int a2 = b.Assume(MakeA(sigma, "R", 2), &l2);
      psi = b.AndE2(b.AndI(a2, psi));
      discharges.push_back(l2);
    }
    d.Apply("approx", d.line(psi).formula, {s, psi}, {{"R", "R"}}, discharges);
  }

  std::mt19937_64& rng_;
  FormulaGen g_;
  FormulaGen wide_;
  FormulaGen no_x_;
};

const char* const kSoundnessRules[] = {
    "and_i",    "and_e1",   "and_e2",   "or_i1",     "or_i2",    "or_e",
    "not_i",    "raa",      "bot_i",    "dual",      "forall_i", "forall_e",
    "exists_i", "exists_e", "or_subst", "or_comm",   "or_assoc", "scope_or",
    "scope_and", "unnest",  "dep_dist", "dep_intro", "mono",     "bound",
    "id_refl",  "id_subst", "approx"};

// Unsound variants of three schemas; the sampling must refute each.
struct Control {
  const char* name;
  std::function<std::pair<Formula, Formula>(FormulaGen&)> make;  // premise, conclusion
};

std::vector<Control> Controls() {
  return {
      {"dep_intro without arguments",
       [](FormulaGen& g) {
         Formula a = g.Any(2);
         Kind k = kBinders[1 + g.Below(3)];
         return std::make_pair(
             Formula::Exists("x", Formula::Bind(k, {"y"}, a)),
             Formula::Bind(k, {"y"}, Formula::Exists("x", Formula::And(
                                                              Formula::Dep({Term::Var("x")}), a))));
       }},
      {"scope_or over a free variable",
       [](FormulaGen& g) {
         Formula a = g.Any(2), other = g.Any(2);
         Kind k = kBinders[g.Below(4)];
         return std::make_pair(Formula::Or(Formula::Bind(k, {"x"}, a), other),
                               Formula::Bind(k, {"x"}, Formula::Or(a, other)));
       }},
      {"or_e with a dependence conclusion",
       [](FormulaGen& g) {
         Formula c = g.Dep();
         return std::make_pair(
             Formula::Or(Formula::And(c, g.Any(1)), Formula::And(c, g.Any(1))), c);
       }},
  };
}

}  // namespace

Verdict RuleSoundness() {
  std::mt19937_64 rng(20240611);
  Instances gen(rng);
  const Signature& sig = testing::PropertySignature();
  KernelMode mode;
  mode.with_approx = true;
  EvalConfig cfg;
  cfg.max_nodes = 2'000'000;

  std::ostringstream bad;
  long instances = 0, checks = 0, nonvacuous = 0, limits = 0;
  int failures = 0;
  for (const char* rule : kSoundnessRules) {
    int built = 0, attempts = 0;
    while (built < kInstancesPerRule) {
      if (++attempts > 50 * kInstancesPerRule) {
        if (failures++ < 5) bad << " " << rule << ": could not build instances;";
        break;
      }
      Derivation d;
      ProofBuilder b(d);
      try {
        gen.Build(rule, b);
      } catch (const Error&) {
        continue;  // capture or an ill-formed random pick; draw again
      }
      CheckReport report = Check(d, sig, mode);
      if (!report.ok()) {
        if (failures++ < 5) bad << " " << rule << " rejected: " << report.violations[0].ToString() << ";";
        ++built;
        continue;
      }
      ++built;
      ++instances;
      std::vector<Formula> premises;
      VarSet vars = FreeVariables(d.conclusion());
      for (const auto& [label, f] : report.open) {
        premises.push_back(f);
        for (const auto& v : FreeVariables(f)) vars.insert(v);
      }
      std::vector<std::string> dom(vars.begin(), vars.end());
      for (int s = 0; s < kSamplesPerInstance; ++s) {
        WeakModel w = testing::RandomWeakModel(sig, 4, rng);
        Team x = RandomTeam(dom, w.size(), 8, rng);
        try {
          bool holds = true;
          for (const auto& p : premises) {
            if (!(holds = EvalTeam(w, x, p, cfg))) break;
          }
          ++checks;
          if (!holds) continue;
          ++nonvacuous;
          if (!EvalTeam(w, x, d.conclusion(), cfg)) {
            if (failures++ < 5) {
              bad << " " << rule << " counterexample: " << Render(d.conclusion()) << " on "
                  << x.ToString() << ";";
            }
          }
        } catch (const LimitExceeded&) {
          ++limits;
        }
      }
    }
  }
  int refuted = 0;
  const auto controls = Controls();
  for (const auto& control : controls) {
    FormulaGen g(rng);
    bool found = false;
    for (int i = 0; i < kInstancesPerRule && !found; ++i) {
      auto [premise, conclusion] = control.make(g);
      VarSet vars = FreeVariables(premise);
      for (const auto& v : FreeVariables(conclusion)) vars.insert(v);
      std::vector<std::string> dom(vars.begin(), vars.end());
      for (int s = 0; s < kSamplesPerInstance && !found; ++s) {
        WeakModel w = testing::RandomWeakModel(sig, 4, rng);
        Team x = RandomTeam(dom, w.size(), 8, rng);
        try {
          found = EvalTeam(w, x, premise, cfg) && !EvalTeam(w, x, conclusion, cfg);
        } catch (const LimitExceeded&) {
        }
      }
    }
    if (found) {
      ++refuted;
    } else if (failures++ < 5) {
      bad << " control '" << control.name << "' not refuted;";
    }
  }

  std::ostringstream out;
  out << std::size(kSoundnessRules) << " rules, " << instances << " accepted instances, "
      << checks << " (model, team) checks, " << nonvacuous << " with premises satisfied, "
      << limits << " over budget, " << refuted << "/" << controls.size()
      << " unsound controls refuted, " << failures << " failures";
  if (failures) out << ":" << bad.str();
  return {failures == 0 && instances >= kInstancesPerRule * long(std::size(kSoundnessRules)),
          out.str()};
}

}  // namespace teamlogic::acceptance
