#include <random>
#include <sstream>

#include "criteria.h"
#include "random_formulas.h"
#include "teamlogic/semantics.h"

namespace teamlogic::acceptance {

namespace {

using testing::FormulaGen;

constexpr int kCases = 600;

// Replaces Q by `q` and Qd by `qd` throughout.
Formula ReplaceQuantifiers(const Formula& f, Kind q, Kind qd) {
  switch (f.kind()) {
    case Kind::kAnd:
      return Formula::And(ReplaceQuantifiers(f.lhs(), q, qd), ReplaceQuantifiers(f.rhs(), q, qd));
    case Kind::kOr:
      return Formula::Or(ReplaceQuantifiers(f.lhs(), q, qd), ReplaceQuantifiers(f.rhs(), q, qd));
    case Kind::kNot:
      return Formula::Not(ReplaceQuantifiers(f.body(), q, qd));
    case Kind::kExists:
    case Kind::kForall:
    case Kind::kQ:
    case Kind::kQd: {
      Kind k = f.kind() == Kind::kQ ? q : f.kind() == Kind::kQd ? qd : f.kind();
      return Formula::Bind(k, f.vars(), ReplaceQuantifiers(f.body(), q, qd));
    }
    default:
      return f;
  }
}

std::vector<std::string> Domain(const VarSet& vars) { return {vars.begin(), vars.end()}; }

}  // namespace

Verdict TeamProperties() {
  std::mt19937_64 rng(77031);
  FormulaGen g(rng);
  const Signature& sig = testing::PropertySignature();
  EvalConfig cfg;
  cfg.max_nodes = 2'000'000;
  std::ostringstream bad;
  int failures = 0;
  auto fail = [&](const std::string& what, const Formula& f, const Team& x) {
    if (failures++ < 5) bad << " " << what << ": " << Render(f) << " on " << x.ToString() << ";";
  };

  // Downward closure: cases are satisfied (formula, team) pairs.
  int closure = 0, closure_subteams = 0;
  for (int guard = 0; closure < kCases && guard < 100 * kCases; ++guard) {
    Formula f = g.Any(3);
    WeakModel w = testing::RandomWeakModel(sig, 4, rng);
    Team x = RandomTeam(Domain(FreeVariables(f)), w.size(), 8, rng);
    if (x.empty()) continue;
    try {
      if (!EvalTeam(w, x, f, cfg)) continue;
      ++closure;
      for (int i = 0; i < 4; ++i) {
        std::vector<bool> keep(x.size());
        for (std::size_t r = 0; r < keep.size(); ++r) keep[r] = g.Coin();
        Team y = x.Subteam(keep);
        ++closure_subteams;
        if (!EvalTeam(w, y, f, cfg)) fail("downward closure", f, y);
      }
    } catch (const LimitExceeded&) {
    }
  }

  // Locality: extra columns do not matter.
  int locality = 0;
  for (int guard = 0; locality < kCases && guard < 100 * kCases; ++guard) {
    FormulaGen narrow(rng, {"x", "y"});
    Formula f = narrow.Any(3);
    WeakModel w = testing::RandomWeakModel(sig, 4, rng);
    VarSet dom = FreeVariables(f);
    dom.insert("z");
    dom.insert("u");
    Team x = RandomTeam(Domain(dom), w.size(), 8, rng);
    try {
      bool wide = EvalTeam(w, x, f, cfg);
      bool restricted = EvalTeam(w, Restrict(x, FreeVariables(f)), f, cfg);
      ++locality;
      if (wide != restricted) fail("locality", f, x);
    } catch (const LimitExceeded&) {
    }
  }

  // Empty team.
  int empty = 0;
  for (int guard = 0; empty < kCases && guard < 100 * kCases; ++guard) {
    Formula f = g.Any(3);
    WeakModel w = testing::RandomWeakModel(sig, 4, rng);
    try {
      ++empty;
      if (!EvalTeam(w, Team::Empty(Domain(FreeVariables(f))), f, cfg)) {
        fail("empty team", f, Team::Empty());
      }
    } catch (const LimitExceeded&) {
      --empty;
    }
  }

  // Q read as exists (Qd then forall) and as forall (Qd then exists).
  int agreement = 0;
  for (int guard = 0; agreement < kCases && guard < 100 * kCases; ++guard) {
    Formula f = g.Any(3);
    int n = 1 + g.Below(4);
    Structure s = Structure::Random(sig, n, rng);
    bool as_exists = g.Coin();
    WeakModel w(s, as_exists ? QuantifierInterpretation::Exists(n)
                             : QuantifierInterpretation::Forall(n));
    Formula plain = as_exists ? ReplaceQuantifiers(f, Kind::kExists, Kind::kForall)
                              : ReplaceQuantifiers(f, Kind::kForall, Kind::kExists);
    Team x = RandomTeam(Domain(FreeVariables(f)), n, 8, rng);
    try {
      bool a = EvalTeam(w, x, f, cfg);
      bool b = EvalTeam(w, x, plain, cfg);
      ++agreement;
      if (a != b) fail(as_exists ? "Q as exists" : "Q as forall", f, x);
    } catch (const LimitExceeded&) {
    }
  }

  std::ostringstream out;
  out << closure << " satisfied pairs (" << closure_subteams << " subteams) for downward closure, "
      << locality << " locality, " << empty << " empty-team, " << agreement
      << " quantifier-agreement cases, " << failures << " failures";
  if (failures) out << ":" << bad.str();
  bool enough = closure >= 500 && locality >= 500 && empty >= 500 && agreement >= 500;
  return {failures == 0 && enough, out.str()};
}

}  // namespace teamlogic::acceptance
