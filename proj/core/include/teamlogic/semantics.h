// Tarskian evaluation of flat formulas and team semantics for formulas with
// dependence atoms, both over weak models.

#ifndef TEAMLOGIC_SEMANTICS_H_
#define TEAMLOGIC_SEMANTICS_H_

#include <cstddef>

#include "teamlogic/model.h"
#include "teamlogic/syntax.h"
#include "teamlogic/team.h"

namespace teamlogic {

struct EvalConfig {
  // Q / Qd search only over functions into the minimal members.
  bool minimal_sets = true;
  bool memoize = true;
  // Solve E y1 .. E yk (dependence atoms & flat) as one search over the
  // dependence tables instead of binder by binder.
  bool block_solver = true;
  // Budget on explored search nodes; LimitExceeded when exhausted.
  std::size_t max_nodes = 200'000'000;
};

struct EvalStats {
  std::size_t nodes = 0;
  std::size_t memo_hits = 0;
};

// Requires a flat formula and FV(f) ⊆ dom(s).
bool EvalTarski(const WeakModel& w, const Assignment& s, const Formula& f);

// Requires FV(f) ⊆ dom(X).
bool EvalTeam(const WeakModel& w, const Team& x, const Formula& f,
              const EvalConfig& cfg = {}, EvalStats* stats = nullptr);

// M, {∅} ⊨ σ. Throws ShapeError if σ has free variables.
bool CheckSentence(const WeakModel& w, const Formula& sentence,
                   const EvalConfig& cfg = {}, EvalStats* stats = nullptr);

}  // namespace teamlogic

#endif  // TEAMLOGIC_SEMANTICS_H_
