// Derivations as numbered proof lines (Fitch style). A line is either a
// labelled assumption or a rule application citing earlier lines; lines may
// be cited more than once, so a derivation is a DAG rooted at its last line.
//
// Script syntax, one line per step:
//
//   <n>. assume <label>: <formula>
//   <n>. <formula> ; <rule> [<p1>, <p2>] params: k=v, k=v discharge: a, b
//
// The premise list, params and discharge parts are optional. Text after '#'
// is a comment.

#ifndef TEAMLOGIC_DERIVATION_H_
#define TEAMLOGIC_DERIVATION_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "teamlogic/syntax.h"

namespace teamlogic {

using Params = std::map<std::string, std::string>;

struct ProofLine {
  int number = 0;
  Formula formula = Formula::False();
  bool is_assumption = false;
  std::string label;  // assumptions only
  std::string rule;
  std::vector<int> premises;  // cited line numbers
  Params params;
  std::vector<std::string> discharges;
  int source_line = 0;  // 1-based line in the script text, 0 if built in code
};

class Derivation {
 public:
  Derivation() = default;

  // Appends an assumption line and returns its number.
  int Assume(const std::string& label, const Formula& f);
  // Appends a rule application and returns its line number.
  int Apply(const std::string& rule, const Formula& conclusion,
            std::vector<int> premises = {}, Params params = {},
            std::vector<std::string> discharges = {});
  // Appends a line verbatim (numbers must keep increasing).
  void Append(ProofLine line);

  const std::vector<ProofLine>& lines() const { return lines_; }
  bool empty() const { return lines_.empty(); }
  // Number of the last line; the derivation concludes its formula.
  int root() const;
  const Formula& conclusion() const;
  // nullptr if no line has that number.
  const ProofLine* Find(int number) const;
  const ProofLine& line(int number) const;

  // A fresh assumption label not used so far.
  std::string FreshLabel(const std::string& base = "h");

  static Derivation Parse(std::string_view text, const Signature& sig,
                          const ParseOptions& options = {});
  std::string ToScript() const;

 private:
  std::vector<ProofLine> lines_;
  std::map<int, std::size_t> index_;
  int label_counter_ = 0;
};

}  // namespace teamlogic

#endif  // TEAMLOGIC_DERIVATION_H_
