#include "teamlogic/approx.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace teamlogic {

std::string ApproxPrefixVar(int p, int j) {
  return "x" + std::to_string(p) + "_" + std::to_string(j);
}

std::string ApproxBlockVar(int i, int j) {
  return "y" + std::to_string(i) + "_" + std::to_string(j);
}

namespace {

std::vector<Term> Vars(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::Var(n));
  return out;
}

// Renaming of sigma's variables to copy j of the approximation.
std::map<std::string, std::string> CopyNames(const NormalFormSentence& sigma, int j) {
  std::map<std::string, std::string> out;
  for (std::size_t p = 0; p < sigma.prefix().size(); ++p) {
    out[sigma.prefix()[p].var] = ApproxPrefixVar(static_cast<int>(p) + 1, j);
  }
  for (std::size_t i = 0; i < sigma.block().size(); ++i) {
    out[sigma.block()[i].var] = ApproxBlockVar(static_cast<int>(i) + 1, j);
  }
  return out;
}

std::map<std::string, Term> AsTerms(const std::map<std::string, std::string>& names) {
  std::map<std::string, Term> out;
  for (const auto& [k, v] : names) out.emplace(k, Term::Var(v));
  return out;
}

}  // namespace

Formula MakeB(const NormalFormSentence& sigma, const std::string& r) {
  Formula f = Formula::Relation(r, Vars(sigma.prefix_vars()));
  for (std::size_t i = sigma.prefix().size(); i-- > 0;) {
    f = Formula::Bind(sigma.prefix()[i].kind, {sigma.prefix()[i].var}, f);
  }
  return f;
}

Formula MakeA(const NormalFormSentence& sigma, const std::string& r, int k) {
  if (k < 1) throw WellFormednessError("approximation index must be >= 1");
  const std::size_t m = sigma.prefix().size();
  const std::size_t n = sigma.block().size();
  std::vector<std::map<std::string, std::string>> copies;
  for (int j = 1; j <= k; ++j) copies.push_back(CopyNames(sigma, j));

  std::vector<Formula> guards;
  std::vector<Formula> claims;
  for (int j = 0; j < k; ++j) {
    std::vector<Term> xs;
    for (const auto& v : sigma.prefix_vars()) xs.push_back(Term::Var(copies[j].at(v)));
    guards.push_back(Formula::Relation(r, std::move(xs)));
  }
  for (int j = 0; j < k; ++j) {
    claims.push_back(SubstituteMany(sigma.matrix(), AsTerms(copies[j])));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const BlockEntry& b = sigma.block()[i];
    for (int j = 0; j < k; ++j) {
      for (int jj = j + 1; jj < k; ++jj) {
        Formula same_y = Formula::Equals(Term::Var(copies[j].at(b.var)),
                                         Term::Var(copies[jj].at(b.var)));
        if (b.args.empty()) {
          claims.push_back(same_y);
          continue;
        }
        std::vector<Formula> eqs;
        for (const auto& a : b.args) {
          eqs.push_back(Formula::Equals(Term::Var(copies[j].at(a)),
                                        Term::Var(copies[jj].at(a))));
        }
        claims.push_back(Formula::Implies(Formula::Conjunction(eqs), same_y));
      }
    }
  }
  Formula f = Formula::Implies(Formula::Conjunction(guards), Formula::Conjunction(claims));
  for (int j = k; j-- > 0;) {
    for (std::size_t i = n; i-- > 0;) {
      f = Formula::Exists(copies[j].at(sigma.block()[i].var), f);
    }
    for (std::size_t p = m; p-- > 0;) {
      f = Formula::Forall(copies[j].at(sigma.prefix()[p].var), f);
    }
  }
  return f;
}

std::optional<int> RecognizeA(const NormalFormSentence& sigma, const std::string& r,
                              const Formula& f) {
  const std::size_t per_copy = sigma.prefix().size() + sigma.block().size();
  int k = 0;
  if (per_copy > 0) {
    std::size_t binders = 0;
    Formula cur = f;
    while (cur.kind() == Kind::kForall || cur.kind() == Kind::kExists) {
      ++binders;
      cur = cur.body();
    }
    if (binders == 0 || binders % per_copy != 0) return std::nullopt;
    k = static_cast<int>(binders / per_copy);
  } else {
    if (f.kind() != Kind::kOr || f.lhs().kind() != Kind::kNot) return std::nullopt;
    Formula cur = f.lhs().body();
    k = 1;
    while (cur.kind() == Kind::kAnd) {
      ++k;
      cur = cur.lhs();
    }
  }
  if (MakeA(sigma, r, k) == f) return k;
  return std::nullopt;
}

Signature SkolemForm::delta() const {
  Signature sig;
  for (const auto& [name, arity] : functions) sig.AddFunction(name, arity);
  return sig;
}

SkolemForm Skolemize(const NormalFormSentence& sigma, const std::vector<std::string>& names) {
  if (names.size() != sigma.block().size()) {
    throw WellFormednessError("need one Skolem function per block variable");
  }
  std::vector<std::pair<std::string, int>> functions;
  std::map<std::string, Term> terms;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const BlockEntry& b = sigma.block()[i];
    std::vector<Term> args;
    for (const auto& a : b.args) {
      auto it = terms.find(a);
      args.push_back(it == terms.end() ? Term::Var(a) : it->second);
    }
    terms.emplace(b.var, Term::App(names[i], std::move(args)));
    functions.emplace_back(names[i], static_cast<int>(b.args.size()));
  }
  Formula f = SubstituteMany(sigma.matrix(), terms);
  for (std::size_t i = sigma.prefix().size(); i-- > 0;) {
    f = Formula::Bind(sigma.prefix()[i].kind, {sigma.prefix()[i].var}, f);
  }
  return SkolemForm{f, std::move(functions)};
}

SkolemForm Skolemize(const NormalFormSentence& sigma, FreshNames& fresh) {
  fresh.Reserve(sigma.ToFormula());
  std::vector<std::string> names;
  int counter = 0;
  for (std::size_t i = 0; i < sigma.block().size(); ++i) {
    std::string name;
    do {
      name = "f" + std::to_string(++counter);
    } while (fresh.IsTaken(name));
    fresh.Reserve(name);
    names.push_back(name);
  }
  return Skolemize(sigma, names);
}

Structure WithRelation(const Structure& s, const std::string& name, int arity,
                       const std::vector<Tuple>& r) {
  Structure out = s;
  out.SetRelation(name, arity, r);
  return out;
}

// ------------------------------------------------------- finite oracles

namespace {

// Quantifier-free matrix compiled against numbered variable slots.
class Matrix {
 public:
  Matrix(const Formula& f, const std::map<std::string, std::size_t>& slots,
         const Structure& s)
      : s_(s) {
    root_ = Compile(f, slots);
  }

  bool Eval(const std::vector<int>& v) const { return Holds(root_, v); }

 private:
  struct TermNode {
    int slot = -1;  // variable slot, or -1 for an application
    const Structure::FunctionTable* fn = nullptr;
    std::vector<int> args;
  };
  struct Node {
    Kind kind;
    const Structure::RelationTable* rel = nullptr;
    std::vector<int> terms;
    std::vector<int> children;
  };

  int CompileTerm(const Term& t, const std::map<std::string, std::size_t>& slots) {
    TermNode n;
    if (t.is_var()) {
      n.slot = static_cast<int>(slots.at(t.name()));
    } else {
      n.fn = &s_.function(t.name());
      for (const auto& a : t.args()) n.args.push_back(CompileTerm(a, slots));
    }
    terms_.push_back(std::move(n));
    return static_cast<int>(terms_.size()) - 1;
  }

  int Compile(const Formula& f, const std::map<std::string, std::size_t>& slots) {
    Node n;
    n.kind = f.kind();
    switch (f.kind()) {
      case Kind::kRelation:
        n.rel = &s_.relation(f.symbol());
        [[fallthrough]];
      case Kind::kEquals:
        for (const auto& t : f.terms()) n.terms.push_back(CompileTerm(t, slots));
        break;
      case Kind::kFalse:
        break;
      case Kind::kNot:
      case Kind::kAnd:
      case Kind::kOr:
        for (const auto& c : f.children()) n.children.push_back(Compile(c, slots));
        break;
      default:
        throw WellFormednessError("matrix must be quantifier free and flat");
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int Value(int t, const std::vector<int>& v) const {
    const TermNode& n = terms_[t];
    if (n.slot >= 0) return v[n.slot];
    std::size_t index = 0;
    for (int a : n.args) index = index * s_.size() + Value(a, v);
    return n.fn->values[index];
  }

  bool Holds(int i, const std::vector<int>& v) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Kind::kRelation: {
        std::size_t index = 0;
        for (int t : n.terms) index = index * s_.size() + Value(t, v);
        return n.rel->holds[index] != 0;
      }
      case Kind::kEquals:
        return Value(n.terms[0], v) == Value(n.terms[1], v);
      case Kind::kFalse:
        return false;
      case Kind::kNot:
        return !Holds(n.children[0], v);
      case Kind::kAnd:
        return Holds(n.children[0], v) && Holds(n.children[1], v);
      default:
        return Holds(n.children[0], v) || Holds(n.children[1], v);
    }
  }

  const Structure& s_;
  std::vector<TermNode> terms_;
  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace

ApproxDecider::ApproxDecider(const WeakModel& w, const NormalFormSentence& sigma)
    : w_(w), sigma_(sigma) {
  const int n = w.size();
  const std::size_t m = sigma.prefix().size();
  const int nb = static_cast<int>(sigma.block().size());
  std::map<std::string, std::size_t> slots;
  for (std::size_t i = 0; i < m; ++i) slots[sigma.prefix()[i].var] = i;
  for (std::size_t i = 0; i < sigma.block().size(); ++i) {
    slots[sigma.block()[i].var] = m + i;
  }
  for (const auto& b : sigma.block()) {
    std::vector<std::size_t> pos;
    for (const auto& a : b.args) pos.push_back(slots.at(a));
    arg_slots_.push_back(std::move(pos));
  }
  Matrix matrix(sigma.matrix(), slots, w.structure());
  tuple_count_ = Power(n, static_cast<int>(m));
  const std::size_t answers = Power(n, nb);
  options_.resize(tuple_count_);
  std::vector<int> v(m + nb);
  for (std::size_t t = 0; t < tuple_count_; ++t) {
    Tuple x = TupleAt(t, n, static_cast<int>(m));
    std::copy(x.begin(), x.end(), v.begin());
    for (std::size_t a = 0; a < answers; ++a) {
      Tuple y = TupleAt(a, n, nb);
      std::copy(y.begin(), y.end(), v.begin() + m);
      if (matrix.Eval(v)) options_[t].push_back(v);
    }
  }
}

std::size_t ApproxDecider::Index(const Tuple& t) const {
  if (t.size() != sigma_.prefix().size()) {
    throw WellFormednessError("relation tuple has the wrong length");
  }
  for (int a : t) {
    if (a < 0 || a >= w_.size()) throw WellFormednessError("relation tuple out of range");
  }
  return TupleIndex(t, w_.size());
}

bool ApproxDecider::B(const std::vector<Tuple>& r) const {
  std::vector<bool> member(tuple_count_, false);
  for (const auto& t : r) member[Index(t)] = true;
  return BMask(member);
}

bool ApproxDecider::BMask(const std::vector<bool>& member) const {
  std::function<bool(std::size_t, std::size_t)> holds = [&](std::size_t depth,
                                                            std::size_t index) {
    if (depth == sigma_.prefix().size()) return static_cast<bool>(member[index]);
    TupleSet witness = 0;
    for (int a = 0; a < w_.size(); ++a) {
      if (holds(depth + 1, index * w_.size() + a)) witness |= TupleSet{1} << a;
    }
    switch (sigma_.prefix()[depth].kind) {
      case Kind::kQ:
        return w_.q().Member(witness);
      case Kind::kQd:
        return w_.qd().Member(witness);
      default:
        return witness == w_.q().full();
    }
  };
  return holds(0, 0);
}

bool ApproxDecider::A(const std::vector<Tuple>& r, int k) const {
  std::vector<std::size_t> idx;
  for (const auto& t : r) idx.push_back(Index(t));
  return AIndices(std::move(idx), k);
}

namespace {

// Duplicator's side of the approximation game on the tuples `r`.
class Game {
 public:
  Game(const std::vector<std::vector<std::vector<int>>>& options,
       const std::vector<std::vector<std::size_t>>& arg_slots, std::size_t m,
       std::vector<std::size_t> r)
      : arg_slots_(arg_slots), m_(m), r_(std::move(r)) {
    for (std::size_t t : r_) options_.push_back(&options[t]);
  }

  bool Wins(int rounds) {
    std::vector<int> choice(r_.size(), -1);
    return Duplicator(choice, rounds);
  }

 private:
  bool Agrees(const std::vector<int>& a, const std::vector<int>& b) const {
    for (std::size_t i = 0; i < arg_slots_.size(); ++i) {
      bool same = true;
      for (std::size_t s : arg_slots_[i]) {
        if (a[s] != b[s]) {
          same = false;
          break;
        }
      }
      if (same && a[m_ + i] != b[m_ + i]) return false;
    }
    return true;
  }

  bool Consistent(const std::vector<int>& choice, const std::vector<int>& v) const {
    for (std::size_t u = 0; u < r_.size(); ++u) {
      if (choice[u] >= 0 && !Agrees(v, (*options_[u])[choice[u]])) return false;
    }
    return true;
  }

  // With enough rounds left to visit every remaining tuple the game reduces
  // to extending the current answers to all of r.
  bool Extend(std::vector<int>& choice, std::size_t from) {
    std::size_t t = from;
    while (t < r_.size() && choice[t] >= 0) ++t;
    if (t == r_.size()) return true;
    const auto& opts = *options_[t];
    for (std::size_t o = 0; o < opts.size(); ++o) {
      if (!Consistent(choice, opts[o])) continue;
      choice[t] = static_cast<int>(o);
      bool ok = Extend(choice, t + 1);
      choice[t] = -1;
      if (ok) return true;
    }
    return false;
  }

  bool Duplicator(std::vector<int>& choice, int rounds) {
    std::size_t unplayed = 0;
    for (int c : choice) unplayed += c < 0 ? 1 : 0;
    if (unplayed == 0 || rounds == 0) return true;
    if (static_cast<std::size_t>(rounds) >= unplayed) return Extend(choice, 0);
    auto key = std::make_pair(choice, rounds);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool result = true;
    for (std::size_t t = 0; t < r_.size() && result; ++t) {
      if (choice[t] >= 0) continue;
      bool answered = false;
      const auto& opts = *options_[t];
      for (std::size_t o = 0; o < opts.size() && !answered; ++o) {
        if (!Consistent(choice, opts[o])) continue;
        choice[t] = static_cast<int>(o);
        answered = Duplicator(choice, rounds - 1);
        choice[t] = -1;
      }
      result = answered;
    }
    memo_[key] = result;
    return result;
  }

  const std::vector<std::vector<std::size_t>>& arg_slots_;
  std::size_t m_;
  std::vector<std::size_t> r_;
  std::vector<const std::vector<std::vector<int>>*> options_;
  std::map<std::pair<std::vector<int>, int>, bool> memo_;
};

}  // namespace

bool ApproxDecider::AIndices(std::vector<std::size_t> r, int k) const {
  if (k < 1) throw WellFormednessError("approximation index must be >= 1");
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  Game game(options_, arg_slots_, sigma_.prefix().size(), std::move(r));
  return game.Wins(k);
}

bool BHolds(const WeakModel& w, const NormalFormSentence& sigma, const std::vector<Tuple>& r) {
  return ApproxDecider(w, sigma).B(r);
}

bool AHolds(const WeakModel& w, const NormalFormSentence& sigma, const std::vector<Tuple>& r,
            int k) {
  return ApproxDecider(w, sigma).A(r, k);
}

std::optional<std::vector<Tuple>> FiniteWitness(const WeakModel& w,
                                                const NormalFormSentence& sigma,
                                                const EvalConfig& cfg) {
  // Every team {∅}[F1/x1]...[Fm/xm] with each Fi(s) a minimal member.
  std::set<Team> level = {Team::Unit()};
  std::size_t budget = cfg.max_nodes;
  for (const auto& p : sigma.prefix()) {
    std::vector<TupleSet> sets;
    if (p.kind == Kind::kQ) {
      sets = w.q().minimal_sets();
    } else if (p.kind == Kind::kQd) {
      sets = w.qd().minimal_sets();
    } else {
      sets = {w.q().full()};
    }
    std::set<Team> next;
    for (const Team& x : level) {
      // Odometer over the choice of a set per row.
      std::vector<std::size_t> pick(x.size(), 0);
      while (true) {
        if (budget-- == 0) throw LimitExceeded("finite witness search exhausted its budget");
        std::vector<std::vector<int>> rows;
        std::vector<std::string> vars = x.vars();
        vars.push_back(p.var);
        for (std::size_t i = 0; i < x.size(); ++i) {
          for (int a = 0; a < w.size(); ++a) {
            if ((sets[pick[i]] >> a) & 1) {
              std::vector<int> row = x.rows()[i];
              row.push_back(a);
              rows.push_back(std::move(row));
            }
          }
        }
        next.insert(Team(vars, std::move(rows)));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == sets.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    level = std::move(next);
  }
  std::vector<Team> teams(level.begin(), level.end());
  std::stable_sort(teams.begin(), teams.end(),
                   [](const Team& a, const Team& b) { return a.size() < b.size(); });
  const Formula body = sigma.BlockFormula();
  const auto pvars = sigma.prefix_vars();
  for (const Team& x : teams) {
    if (!EvalTeam(w, x, body, cfg)) continue;
    std::vector<Tuple> r;
    for (const auto& row : x.rows()) {
      Tuple t;
      for (const auto& v : pvars) t.push_back(row[x.IndexOf(v)]);
      r.push_back(std::move(t));
    }
    std::sort(r.begin(), r.end());
    return r;
  }
  return std::nullopt;
}

}  // namespace teamlogic
