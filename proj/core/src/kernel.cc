#include "teamlogic/kernel.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "teamlogic/approx.h"
#include "teamlogic/normalform.h"

namespace teamlogic {

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSchema: return "schema";
    case ViolationKind::kFlatness: return "flatness";
    case ViolationKind::kEigenvariable: return "eigenvariable";
    case ViolationKind::kFreshness: return "freshness";
    case ViolationKind::kScopeVariable: return "scope-variable";
    case ViolationKind::kDepIntroVariables: return "dep-intro-variables";
    case ViolationKind::kApartness: return "apartness";
    case ViolationKind::kSubstitution: return "substitution";
    case ViolationKind::kDischarge: return "discharge";
    case ViolationKind::kAssumption: return "assumption";
    case ViolationKind::kBadReference: return "bad-reference";
    case ViolationKind::kParams: return "params";
    case ViolationKind::kUnknownRule: return "unknown-rule";
    case ViolationKind::kRuleNotEnabled: return "rule-not-enabled";
    case ViolationKind::kSignature: return "signature";
    case ViolationKind::kNotNormalForm: return "not-normal-form";
    case ViolationKind::kApproxOccurrence: return "approx-occurrence";
    case ViolationKind::kUnrecognizedApprox: return "unrecognized-approximation";
    case ViolationKind::kSkolemLeak: return "skolem-leak";
    case ViolationKind::kSkolemMismatch: return "skolem-mismatch";
  }
  return "unknown";
}

std::string Violation::ToString() const {
  std::ostringstream out;
  out << "line " << line;
  if (source_line > 0) out << " (script line " << source_line << ")";
  if (!rule.empty()) out << " [" << rule << "]";
  out << ": " << ViolationKindName(kind) << ": " << message;
  return out.str();
}

bool CheckReport::Has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

namespace {

using Labels = std::set<std::string>;

struct RuleInfo {
  int premises;  // -1: any
};

const std::map<std::string, RuleInfo>& Rules() {
  static const std::map<std::string, RuleInfo> rules = {
      {"and_i", {2}},     {"and_e1", {1}},    {"and_e2", {1}},   {"or_i1", {1}},
      {"or_i2", {1}},     {"or_e", {3}},      {"not_i", {1}},    {"raa", {1}},
      {"bot_i", {2}},     {"dual", {1}},      {"forall_i", {1}}, {"forall_e", {1}},
      {"exists_i", {1}},  {"exists_e", {2}},  {"or_subst", {2}}, {"or_comm", {1}},
      {"or_assoc", {1}},  {"scope_or", {1}},  {"scope_and", {1}}, {"unnest", {1}},
      {"dep_dist", {1}},  {"dep_intro", {1}}, {"mono", {2}},     {"bound", {1}},
      {"id_refl", {0}},   {"id_subst", {2}},  {"approx", {2}},   {"q1_axiom", {0}},
      {"q1_union", {1}},  {"skolem", {2}},
  };
  return rules;
}

bool IsQuantKind(Kind k) { return k == Kind::kQ || k == Kind::kQd; }

std::vector<std::string> SplitWords(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// E y1 .. E yn (dep(.., y1) & .. & dep(.., yn) & body) split into parts.
struct Block {
  std::vector<std::string> vars;
  std::vector<Formula> deps;
  Formula body = Formula::False();
};

std::optional<Block> SplitBlock(const Formula& f) {
  Block b;
  Formula cur = f;
  while (cur.kind() == Kind::kExists) {
    b.vars.push_back(cur.var());
    cur = cur.body();
  }
  const std::size_t n = b.vars.size();
  if (n == 0) {
    b.body = cur;
    return b;
  }
  if (cur.kind() != Kind::kAnd) return std::nullopt;
  b.body = cur.rhs();
  std::vector<Formula> deps;
  Formula rest = cur.lhs();
  for (std::size_t i = 1; i < n; ++i) {
    if (rest.kind() != Kind::kAnd) return std::nullopt;
    deps.push_back(rest.rhs());
    rest = rest.lhs();
  }
  deps.push_back(rest);
  std::reverse(deps.begin(), deps.end());
  for (std::size_t i = 0; i < n; ++i) {
    const Formula& d = deps[i];
    if (d.kind() != Kind::kDep) return std::nullopt;
    const Term& last = d.terms().back();
    if (!last.is_var() || last.name() != b.vars[i]) return std::nullopt;
  }
  b.deps = std::move(deps);
  return b;
}

Formula JoinBlock(const std::vector<std::string>& vars, const std::vector<Formula>& deps,
                  const Formula& body) {
  Formula inner = body;
  if (!deps.empty()) {
    std::vector<Formula> parts = deps;
    parts.push_back(body);
    inner = Formula::Conjunction(parts);
  }
  for (std::size_t i = vars.size(); i-- > 0;) inner = Formula::Exists(vars[i], inner);
  return inner;
}

class Checker {
 public:
  Checker(const Derivation& d, const Signature& sig, const KernelMode& mode)
      : d_(d), sig_(sig), mode_(mode) {}

  CheckReport Run() {
    ExtendSignature();
    for (const auto& line : d_.lines()) {
      line_ = &line;
      CheckSymbols(line);
      if (line.is_assumption) {
        auto [it, inserted] = labels_.emplace(line.label, line.formula);
        if (!inserted && it->second != line.formula) {
          Fail(ViolationKind::kAssumption,
               "label '" + line.label + "' already names a different formula");
        }
        open_[line.number] = {line.label};
        continue;
      }
      open_[line.number] = CheckRule(line);
    }
    if (!d_.empty()) {
      for (const auto& l : open_[d_.root()]) report_.open.emplace(l, labels_.at(l));
    }
    return std::move(report_);
  }

 private:
  void Fail(ViolationKind kind, const std::string& message) {
    report_.violations.push_back(
        {kind, line_->number, line_->source_line, line_->rule, message});
  }

  // Symbols introduced by approx (R) and skolem (fns) lines are admitted.
  void ExtendSignature() {
    ext_ = sig_;
    for (const auto& line : d_.lines()) {
      if (line.is_assumption || line.premises.empty()) continue;
      const ProofLine* p = d_.Find(line.premises[0]);
      if (!p) continue;
      auto nf = NormalFormSentence::Recognize(p->formula);
      if (!nf) continue;
      try {
        if (line.rule == "approx" && line.params.count("R")) {
          const std::string& r = line.params.at("R");
          if (!ext_.HasSymbol(r)) ext_.AddRelation(r, static_cast<int>(nf->prefix().size()));
        } else if (line.rule == "skolem" && line.params.count("fns")) {
          auto names = SplitWords(line.params.at("fns"));
          if (names.size() != nf->block().size()) continue;
          for (std::size_t i = 0; i < names.size(); ++i) {
            if (ext_.HasSymbol(names[i])) continue;
            ext_.AddFunction(names[i], static_cast<int>(nf->block()[i].args.size()));
          }
        }
      } catch (const Error&) {
        // A bad name is reported when the line itself is checked.
      }
    }
  }

  void CheckSymbols(const ProofLine& line) {
    try {
      CheckSignature(line.formula, ext_);
    } catch (const Error& e) {
      Fail(ViolationKind::kSignature, e.what());
    }
    if (!QuantArityOne(line.formula)) {
      Fail(ViolationKind::kSchema, "the proof system covers quantifiers of type <1> only");
    }
  }

  static bool QuantArityOne(const Formula& f) {
    if (IsQuantKind(f.kind()) && f.vars().size() != 1) return false;
    for (const auto& c : f.children()) {
      if (!QuantArityOne(c)) return false;
    }
    return true;
  }

  const Formula& LabelFormula(const std::string& l) const { return labels_.at(l); }

  // Labels among `open` whose formula has `var` free.
  std::vector<std::string> FreeIn(const std::string& var, const Labels& open) const {
    std::vector<std::string> out;
    for (const auto& l : open) {
      if (FreeVariables(LabelFormula(l)).count(var)) out.push_back(l);
    }
    return out;
  }

  std::optional<Term> TermParam(const std::string& key) {
    auto it = line_->params.find(key);
    if (it == line_->params.end()) {
      Fail(ViolationKind::kParams, "missing parameter '" + key + "'");
      return std::nullopt;
    }
    try {
      return ParseTerm(it->second, ext_);
    } catch (const Error& e) {
      Fail(ViolationKind::kParams, "parameter '" + key + "': " + e.what());
      return std::nullopt;
    }
  }

  std::optional<Formula> Subst(const Formula& f, const Term& t, const std::string& x) {
    try {
      return Substitute(f, t, x);
    } catch (const CaptureError& e) {
      Fail(ViolationKind::kSubstitution, e.what());
      return std::nullopt;
    }
  }

  void Expect(bool ok, const std::string& message) {
    if (!ok) Fail(ViolationKind::kSchema, message);
  }

  Labels CheckRule(const ProofLine& line) {
    const auto& rules = Rules();
    Labels all;
    std::vector<const ProofLine*> prem;
    bool refs_ok = true;
    for (int p : line.premises) {
      const ProofLine* pl = d_.Find(p);
      if (!pl || p >= line.number) {
        Fail(ViolationKind::kBadReference,
             "premise " + std::to_string(p) + " is not an earlier line");
        refs_ok = false;
        continue;
      }
      prem.push_back(pl);
      const auto& o = open_.at(p);
      all.insert(o.begin(), o.end());
    }
    auto rule_it = rules.find(line.rule);
    if (rule_it == rules.end()) {
      Fail(ViolationKind::kUnknownRule, "unknown rule '" + line.rule + "'");
      return all;
    }
    if (!refs_ok) return all;
    if (rule_it->second.premises >= 0 &&
        static_cast<int>(prem.size()) != rule_it->second.premises) {
      Fail(ViolationKind::kSchema, "expects " + std::to_string(rule_it->second.premises) +
                                       " premises, got " + std::to_string(prem.size()));
      return all;
    }
    const std::string& r = line.rule;
    if (r == "approx" && !mode_.with_approx) {
      Fail(ViolationKind::kRuleNotEnabled, "approx needs the approximation mode");
      return all;
    }
    if ((r == "q1_axiom" || r == "q1_union" || r == "skolem") && !mode_.with_q1) {
      Fail(ViolationKind::kRuleNotEnabled, r + " needs the Q1 mode");
      return all;
    }
    std::vector<Formula> p;
    std::vector<Labels> po;
    for (const ProofLine* pl : prem) {
      p.push_back(pl->formula);
      po.push_back(open_.at(pl->number));
    }
    const Formula& c = line.formula;

    // Discharge targets: premise index and the formulas it may discharge.
    struct Target {
      std::size_t premise;
      std::function<bool(const Formula&)> accepts;
    };
    std::vector<Target> targets;
    auto equal_to = [](Formula f) {
      return [f](const Formula& g) { return g == f; };
    };
    std::optional<NormalFormSentence> sigma;
    std::string approx_r;
    std::vector<std::string> skolem_names;
    std::optional<Formula> skolem_form;

    if (r == "or_e" && p[0].kind() == Kind::kOr) {
      targets.push_back({1, equal_to(p[0].lhs())});
      targets.push_back({2, equal_to(p[0].rhs())});
    } else if (r == "not_i" && c.kind() == Kind::kNot) {
      targets.push_back({0, equal_to(c.body())});
    } else if (r == "raa" && !c.has_dep()) {
      targets.push_back({0, equal_to(Formula::Not(c))});
    } else if (r == "exists_e" && p[0].kind() == Kind::kExists) {
      targets.push_back({1, equal_to(p[0].body())});
    } else if (r == "or_subst" && p[0].kind() == Kind::kOr) {
      targets.push_back({1, equal_to(p[0].rhs())});
    } else if (r == "mono" && IsQuantKind(p[0].kind())) {
      targets.push_back({1, equal_to(p[0].body())});
    } else if (r == "approx" || r == "skolem") {
      sigma = NormalFormSentence::Recognize(p[0]);
      if (!sigma) {
        Fail(ViolationKind::kNotNormalForm, "left premise is not a normal-form sentence");
      } else if (r == "approx") {
        auto it = line.params.find("R");
        if (it == line.params.end() || it->second.empty()) {
          Fail(ViolationKind::kParams, "missing parameter 'R'");
        } else {
          approx_r = it->second;
          if (Symbols(p[0]).count(approx_r)) {
            Fail(ViolationKind::kApproxOccurrence,
                 "approximation predicate " + approx_r + " is not fresh");
          }
          Formula b = MakeB(*sigma, approx_r);
          NormalFormSentence s = *sigma;
          std::string rn = approx_r;
          targets.push_back({1, [b, s, rn](const Formula& g) {
                               return g == b || RecognizeA(s, rn, g).has_value();
                             }});
        }
      } else {
        auto it = line.params.find("fns");
        if (it == line.params.end()) {
          Fail(ViolationKind::kParams, "missing parameter 'fns'");
        } else {
          skolem_names = SplitWords(it->second);
          std::set<std::string> distinct(skolem_names.begin(), skolem_names.end());
          if (skolem_names.size() != sigma->block().size() ||
              distinct.size() != skolem_names.size()) {
            Fail(ViolationKind::kParams, "need one distinct function name per block variable");
          } else {
            for (const auto& f : skolem_names) {
              if (Symbols(p[0]).count(f)) {
                Fail(ViolationKind::kFreshness, "Skolem function " + f + " is not fresh");
              }
            }
            try {
              skolem_form = Skolemize(*sigma, skolem_names).sentence;
              targets.push_back({1, equal_to(*skolem_form)});
            } catch (const Error& e) {
              Fail(ViolationKind::kParams, e.what());
            }
          }
        }
      }
    }

    // Apply discharges.
    for (const auto& label : line.discharges) {
      auto lf = labels_.find(label);
      if (lf == labels_.end()) {
        Fail(ViolationKind::kDischarge, "unknown assumption label '" + label + "'");
        continue;
      }
      bool done = false;
      bool open_somewhere = false;
      for (const auto& t : targets) {
        if (!po[t.premise].count(label)) continue;
        open_somewhere = true;
        if (t.accepts(lf->second)) {
          po[t.premise].erase(label);
          done = true;
        }
      }
      if (done) continue;
      if (r == "approx" && open_somewhere) {
        Fail(ViolationKind::kUnrecognizedApprox,
             "assumption '" + label + "' is neither B nor an approximation of the premise");
      } else if (r == "skolem" && open_somewhere) {
        Fail(ViolationKind::kSkolemMismatch,
             "assumption '" + label + "' is not the Skolem translation of the premise");
      } else {
        Fail(ViolationKind::kDischarge, "label '" + label +
                                            "' cannot be discharged here (not an open "
                                            "assumption of the matching premise)");
      }
    }
    Labels result;
    for (const auto& o : po) result.insert(o.begin(), o.end());

    // Schemas and side conditions.
    if (r == "and_i") {
      Expect(c == Formula::And(p[0], p[1]), "conclusion must be the conjunction of the premises");
    } else if (r == "and_e1" || r == "and_e2") {
      if (p[0].kind() != Kind::kAnd) {
        Expect(false, "premise must be a conjunction");
      } else {
        Expect(c == (r == "and_e1" ? p[0].lhs() : p[0].rhs()),
               "conclusion must be a conjunct of the premise");
      }
    } else if (r == "or_i1" || r == "or_i2") {
      if (c.kind() != Kind::kOr) {
        Expect(false, "conclusion must be a disjunction");
      } else {
        Expect((r == "or_i1" ? c.lhs() : c.rhs()) == p[0],
               "premise must be the introduced disjunct");
      }
    } else if (r == "or_e") {
      Expect(p[0].kind() == Kind::kOr, "first premise must be a disjunction");
      Expect(p[1] == c && p[2] == c, "both cases must conclude the conclusion");
      if (c.has_dep()) Fail(ViolationKind::kFlatness, "conclusion of or_e must be flat");
    } else if (r == "not_i") {
      Expect(p[0].kind() == Kind::kFalse, "premise must be false");
      Expect(c.kind() == Kind::kNot, "conclusion must be a negation");
    } else if (r == "raa") {
      Expect(p[0].kind() == Kind::kFalse, "premise must be false");
      if (c.has_dep()) Fail(ViolationKind::kFlatness, "conclusion of raa must be flat");
    } else if (r == "bot_i") {
      Expect(c.kind() == Kind::kFalse, "conclusion must be false");
      Expect(p[1].kind() == Kind::kNot && p[1].body() == p[0],
             "second premise must negate the first");
    } else if (r == "dual") {
      if (p[0].kind() != Kind::kQd) {
        Expect(false, "premise must be a Qd formula");
      } else if (p[0].body().has_dep()) {
        Fail(ViolationKind::kFlatness, "dual needs a flat body");
      } else {
        Formula want = Formula::Not(Formula::Quant(
            Kind::kQ, p[0].vars(), Formula::Not(p[0].body())));
        Expect(c == want, "conclusion must be !Q x !phi");
      }
    } else if (r == "forall_i") {
      if (c.kind() != Kind::kForall) {
        Expect(false, "conclusion must be universal");
      } else {
        Expect(c.body() == p[0], "premise must be the body of the conclusion");
        for (const auto& l : FreeIn(c.var(), po[0])) {
          Fail(ViolationKind::kEigenvariable,
               c.var() + " is free in open assumption '" + l + "'");
        }
      }
    } else if (r == "forall_e") {
      auto t = TermParam("t");
      if (p[0].kind() != Kind::kForall) {
        Expect(false, "premise must be universal");
      } else if (t) {
        if (auto want = Subst(p[0].body(), *t, p[0].var())) {
          Expect(c == *want, "conclusion must be the instance at t");
        }
      }
    } else if (r == "exists_i") {
      auto t = TermParam("t");
      if (c.kind() != Kind::kExists) {
        Expect(false, "conclusion must be existential");
      } else if (t) {
        if (auto want = Subst(c.body(), *t, c.var())) {
          Expect(p[0] == *want, "premise must be the instance at t");
        }
      }
    } else if (r == "exists_e") {
      if (p[0].kind() != Kind::kExists) {
        Expect(false, "first premise must be existential");
      } else {
        Expect(p[1] == c, "second premise must be the conclusion");
        const std::string& x = p[0].var();
        if (FreeVariables(c).count(x)) {
          Fail(ViolationKind::kEigenvariable, x + " is free in the conclusion");
        }
        for (const auto& l : FreeIn(x, po[1])) {
          Fail(ViolationKind::kEigenvariable, x + " is free in open assumption '" + l + "'");
        }
      }
    } else if (r == "or_subst") {
      if (p[0].kind() != Kind::kOr || c.kind() != Kind::kOr) {
        Expect(false, "premise and conclusion must be disjunctions");
      } else {
        Expect(c.lhs() == p[0].lhs(), "left disjunct must be kept");
        Expect(c.rhs() == p[1], "right disjunct must be the derived formula");
      }
    } else if (r == "or_comm") {
      Expect(p[0].kind() == Kind::kOr && c == Formula::Or(p[0].rhs(), p[0].lhs()),
             "conclusion must swap the disjuncts");
    } else if (r == "or_assoc") {
      bool ok = p[0].kind() == Kind::kOr && p[0].lhs().kind() == Kind::kOr &&
                c == Formula::Or(p[0].lhs().lhs(),
                                 Formula::Or(p[0].lhs().rhs(), p[0].rhs()));
      Expect(ok, "conclusion must reassociate (a | b) | g to a | (b | g)");
    } else if (r == "scope_or" || r == "scope_and") {
      const Kind op = r == "scope_or" ? Kind::kOr : Kind::kAnd;
      if (p[0].kind() != op || !p[0].lhs().is_binder()) {
        Expect(false, "premise must be a quantified formula combined with another");
      } else {
        const Formula& h = p[0].lhs();
        if (op == Kind::kAnd && !IsQuantKind(h.kind())) {
          Expect(false, "scope_and applies to Q and Qd only");
        } else {
          Formula inner = op == Kind::kOr ? Formula::Or(h.body(), p[0].rhs())
                                          : Formula::And(h.body(), p[0].rhs());
          Expect(c == Formula::Bind(h.kind(), h.vars(), inner),
                 "conclusion must extend the binder over both parts");
          for (const auto& v : h.vars()) {
            if (FreeVariables(p[0].rhs()).count(v)) {
              Fail(ViolationKind::kScopeVariable, v + " is free in the other part");
            }
          }
        }
      }
    } else if (r == "unnest") {
      CheckUnnest(p[0], c);
    } else if (r == "dep_dist") {
      CheckDepDist(p[0], c);
    } else if (r == "dep_intro") {
      CheckDepIntro(p[0], c);
    } else if (r == "mono") {
      if (!IsQuantKind(p[0].kind())) {
        Expect(false, "first premise must be a Q or Qd formula");
      } else {
        Expect(c.kind() == p[0].kind() && c.vars() == p[0].vars() && c.body() == p[1],
               "conclusion must bind the derived formula with the same quantifier");
        for (const auto& v : p[0].vars()) {
          for (const auto& l : FreeIn(v, po[1])) {
            Fail(ViolationKind::kEigenvariable,
                 v + " is free in open assumption '" + l + "'");
          }
        }
      }
    } else if (r == "bound") {
      if (!IsQuantKind(p[0].kind()) || c.kind() != p[0].kind()) {
        Expect(false, "premise and conclusion must be the same Q or Qd binder");
      } else {
        const std::string& x = p[0].var();
        const std::string& y = c.var();
        if (y != x && AllVariables(p[0].body()).count(y)) {
          Fail(ViolationKind::kFreshness, y + " occurs in the body");
        } else if (y == x) {
          Expect(c == p[0], "renaming to the same variable must keep the formula");
        } else if (auto want = Subst(p[0].body(), Term::Var(y), x)) {
          Expect(c.body() == *want, "conclusion body must be the renamed body");
        }
      }
    } else if (r == "id_refl") {
      Expect(c.kind() == Kind::kEquals && c.terms()[0] == c.terms()[1],
             "conclusion must be t = t");
    } else if (r == "id_subst") {
      CheckIdSubst(p[0], p[1], c);
    } else if (r == "approx") {
      Expect(c == p[1], "conclusion must repeat the right premise");
      if (!approx_r.empty()) {
        if (Symbols(c).count(approx_r)) {
          Fail(ViolationKind::kApproxOccurrence, approx_r + " occurs in the conclusion");
        }
        for (const auto& l : po[1]) {
          if (Symbols(LabelFormula(l)).count(approx_r)) {
            Fail(ViolationKind::kApproxOccurrence,
                 approx_r + " occurs in open assumption '" + l + "'");
          }
        }
      }
    } else if (r == "skolem") {
      Expect(c == p[1], "conclusion must repeat the right premise");
      for (const auto& f : skolem_names) {
        if (Symbols(c).count(f)) {
          Fail(ViolationKind::kSkolemLeak, f + " occurs in the conclusion");
        }
        for (const auto& l : po[1]) {
          if (Symbols(LabelFormula(l)).count(f)) {
            Fail(ViolationKind::kSkolemLeak, f + " occurs in open assumption '" + l + "'");
          }
        }
      }
    } else if (r == "q1_axiom") {
      bool ok = false;
      if (c.kind() == Kind::kNot && c.body().kind() == Kind::kQ) {
        const Formula& q = c.body();
        const std::string& x = q.var();
        const Formula& b = q.body();
        if (b.kind() == Kind::kOr && b.lhs().kind() == Kind::kEquals &&
            b.rhs().kind() == Kind::kEquals) {
          const auto& l = b.lhs().terms();
          const auto& rr = b.rhs().terms();
          ok = l[0] == Term::Var(x) && rr[0] == Term::Var(x) && l[1].is_var() &&
               rr[1].is_var() && l[1].name() != x && rr[1].name() != x;
        }
      }
      Expect(ok, "conclusion must be !Q x (x = y | x = z) with x distinct from y, z");
    } else if (r == "q1_union") {
      bool ok = false;
      if (p[0].kind() == Kind::kQ && p[0].body().kind() == Kind::kExists) {
        const std::string& x = p[0].var();
        const std::string& y = p[0].body().var();
        const Formula& phi = p[0].body().body();
        if (x != y) {
          Formula want = Formula::Or(
              Formula::Exists(y, Formula::Quant(Kind::kQ, {x}, phi)),
              Formula::Quant(Kind::kQ, {y}, Formula::Exists(x, phi)));
          ok = c == want;
        }
      }
      Expect(ok, "must infer E y Q x a | Q y E x a from Q x E y a");
    }
    return result;
  }

  void CheckUnnest(const Formula& p, const Formula& c) {
    if (p.kind() != Kind::kDep || c.kind() != Kind::kExists ||
        c.body().kind() != Kind::kAnd || c.body().lhs().kind() != Kind::kDep ||
        c.body().rhs().kind() != Kind::kEquals) {
      Expect(false, "conclusion must be E z (dep(..z..) & z = t)");
      return;
    }
    const std::string& z = c.var();
    const auto& before = p.terms();
    const auto& after = c.body().lhs().terms();
    const auto& eq = c.body().rhs().terms();
    if (before.size() != after.size()) {
      Expect(false, "dependence atoms differ in length");
      return;
    }
    int pos = -1;
    for (std::size_t i = 0; i < before.size(); ++i) {
      if (before[i] != after[i]) {
        if (pos >= 0) {
          Expect(false, "exactly one argument may be replaced");
          return;
        }
        pos = static_cast<int>(i);
      }
    }
    if (pos < 0 || after[pos] != Term::Var(z) || eq[0] != Term::Var(z) ||
        eq[1] != before[pos]) {
      Expect(false, "replaced argument must be z with z = t_i");
      return;
    }
    if (AllVariables(p).count(z)) {
      Fail(ViolationKind::kFreshness, z + " is not a new variable");
    }
  }

  void CheckDepDist(const Formula& p, const Formula& c) {
    if (p.kind() != Kind::kOr) {
      Expect(false, "premise must be a disjunction");
      return;
    }
    auto a = SplitBlock(p.lhs());
    auto b = SplitBlock(p.rhs());
    if (!a || !b) {
      Expect(false, "disjuncts must be existential blocks of dependence atoms");
      return;
    }
    if (!IsQuantifierFree(a->body) || a->body.has_dep() || !IsQuantifierFree(b->body) ||
        b->body.has_dep()) {
      Expect(false, "block bodies must be quantifier free and flat");
      return;
    }
    VarSet in_a = AllVariables(p.lhs()), in_b = AllVariables(p.rhs());
    for (const auto& y : a->vars) {
      if (in_b.count(y)) Fail(ViolationKind::kApartness, y + " appears in the other disjunct");
    }
    for (const auto& y : b->vars) {
      if (in_a.count(y)) Fail(ViolationKind::kApartness, y + " appears in the other disjunct");
    }
    std::vector<std::string> vars = a->vars;
    vars.insert(vars.end(), b->vars.begin(), b->vars.end());
    std::vector<Formula> deps = a->deps;
    deps.insert(deps.end(), b->deps.begin(), b->deps.end());
    Formula want = JoinBlock(vars, deps, Formula::Or(a->body, b->body));
    Expect(c == want, "conclusion must merge both blocks over the disjunction");
  }

  void CheckDepIntro(const Formula& p, const Formula& c) {
    if (p.kind() != Kind::kExists || !p.body().is_binder() ||
        p.body().kind() == Kind::kExists) {
      Expect(false, "premise must be E x H y a with H in {A, Q, Qd}");
      return;
    }
    const std::string& x = p.var();
    const Formula& h = p.body();
    const std::string& y = h.var();
    const Formula& phi = h.body();
    if (x == y) {
      Expect(false, "x and y must differ");
      return;
    }
    if (c.kind() != h.kind() || c.vars() != h.vars() || c.body().kind() != Kind::kExists ||
        c.body().var() != x || c.body().body().kind() != Kind::kAnd ||
        c.body().body().lhs().kind() != Kind::kDep || c.body().body().rhs() != phi) {
      Expect(false, "conclusion must be H y E x (dep(z.., x) & a)");
      return;
    }
    const auto& terms = c.body().body().lhs().terms();
    if (terms.back() != Term::Var(x)) {
      Expect(false, "dependence atom must end in x");
      return;
    }
    VarSet want = FreeVariables(phi);
    want.erase(x);
    want.erase(y);
    VarSet got;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
      if (!terms[i].is_var() || !got.insert(terms[i].name()).second) {
        Fail(ViolationKind::kDepIntroVariables,
             "dependence arguments must be distinct variables");
        return;
      }
    }
    if (got != want) {
      Fail(ViolationKind::kDepIntroVariables,
           "dependence arguments must list exactly FV(a) - {x, y}");
    }
  }

  void CheckIdSubst(const Formula& p0, const Formula& p1, const Formula& c) {
    auto x_it = line_->params.find("x");
    auto phi_it = line_->params.find("phi");
    if (x_it == line_->params.end() || phi_it == line_->params.end()) {
      Fail(ViolationKind::kParams, "id_subst needs parameters x and phi");
      return;
    }
    Formula phi = Formula::False();
    try {
      phi = ParseFormula(phi_it->second, ext_);
    } catch (const Error& e) {
      Fail(ViolationKind::kParams, std::string("parameter 'phi': ") + e.what());
      return;
    }
    if (phi.has_dep()) {
      Fail(ViolationKind::kFlatness, "id_subst needs a flat formula");
      return;
    }
    if (p1.kind() != Kind::kEquals) {
      Expect(false, "second premise must be an identity t = r");
      return;
    }
    const Term& t = p1.terms()[0];
    const Term& rr = p1.terms()[1];
    auto from = Subst(phi, rr, x_it->second);
    auto to = Subst(phi, t, x_it->second);
    if (!from || !to) return;
    Expect(p0 == *from, "first premise must be phi[r/x]");
    Expect(c == *to, "conclusion must be phi[t/x]");
  }

  const Derivation& d_;
  const Signature& sig_;
  KernelMode mode_;
  Signature ext_;
  const ProofLine* line_ = nullptr;
  std::map<std::string, Formula> labels_;
  std::map<int, Labels> open_;
  CheckReport report_;
};

}  // namespace

CheckReport Check(const Derivation& d, const Signature& sig, const KernelMode& mode) {
  return Checker(d, sig, mode).Run();
}

}  // namespace teamlogic
