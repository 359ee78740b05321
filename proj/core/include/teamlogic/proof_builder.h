// Helpers for assembling derivations in code. Every method appends lines to
// the wrapped derivation and returns the number of the concluding line.
//
// A Conversion turns a line concluding some formula into a line concluding a
// transformed formula; returning the input line means "unchanged". The
// congruence helpers lift a conversion to a subformula position.

#ifndef TEAMLOGIC_PROOF_BUILDER_H_
#define TEAMLOGIC_PROOF_BUILDER_H_

#include <functional>
#include <string>
#include <vector>

#include "teamlogic/derivation.h"
#include "teamlogic/syntax.h"

namespace teamlogic {

class ProofBuilder;
using Conversion = std::function<int(ProofBuilder&, int)>;

class ProofBuilder {
 public:
  explicit ProofBuilder(Derivation& d) : d_(d) {}

  Derivation& derivation() { return d_; }
  const Formula& At(int line) const { return d_.line(line).formula; }

  // Assumption with a fresh label; the label is stored in *label.
  int Assume(const Formula& f, std::string* label);

  int AndI(int a, int b);
  int AndE1(int line);
  int AndE2(int line);
  int OrComm(int line);
  // From a | b and a line deriving c from the assumption `label` (= b).
  int OrSubst(int disj, int derived, const std::string& label);
  int ExistsI(int line, const Formula& target, const Term& t);
  int ExistsE(int exists_line, int derived, const std::string& label);
  int ForallI(int line, const std::string& var);
  int ForallE(int line, const Term& t);
  int Mono(int quant_line, int derived, const std::string& label);
  int Rule(const std::string& rule, const Formula& conclusion, std::vector<int> premises,
           Params params = {});

  // Conjuncts of a left-nested conjunction with `parts` members.
  std::vector<int> SplitConjunction(int line, std::size_t parts);
  // Left-nested conjunction of the lines.
  int JoinConjunction(const std::vector<int>& lines);

  // Congruences. Binder kinds: E, A, Q, Qd.
  int UnderBinder(int line, const Conversion& body);
  int UnderAnd(int line, const Conversion& left, const Conversion& right);
  int UnderOr(int line, const Conversion& left, const Conversion& right);

  // Opens the existential block of the formula at `line`, returning the line
  // of its innermost body; CloseBlock turns a line derived from it (with the
  // block variables not free) into a line depending on `line` instead.
  struct OpenedBlock {
    std::vector<int> exists_lines;
    std::vector<std::string> labels;
    int body = 0;
  };
  OpenedBlock OpenBlock(int line, std::size_t vars);
  int CloseBlock(const OpenedBlock& block, int derived);
  // Re-binds E v1 .. E vn over the formula at `line`, instantiating at the
  // variables themselves.
  int BindExists(int line, const std::vector<std::string>& vars);

 private:
  Derivation& d_;
};

// Chains the conversions left to right.
Conversion Compose(std::vector<Conversion> steps);

// Keeps `root` and the lines it depends on, renumbered from 1; `root`
// becomes the last line.
Derivation Pruned(const Derivation& d, int root);

}  // namespace teamlogic

#endif  // TEAMLOGIC_PROOF_BUILDER_H_
