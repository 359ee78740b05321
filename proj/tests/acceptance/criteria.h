// Acceptance criteria. Each check returns a verdict with a one-line summary.

#ifndef TEAMLOGIC_TESTS_CRITERIA_H_
#define TEAMLOGIC_TESTS_CRITERIA_H_

#include <string>

namespace teamlogic::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict RuleSoundness();
Verdict TeamProperties();
Verdict NormalFormEquivalence();
Verdict GoldenProofs();
Verdict ApproximationOracle();
Verdict SkolemOracle();
Verdict LiftReproductions();
Verdict Q1Kernel();

}  // namespace teamlogic::acceptance

#endif  // TEAMLOGIC_TESTS_CRITERIA_H_
