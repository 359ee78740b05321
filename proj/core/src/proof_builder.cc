#include "teamlogic/proof_builder.h"

#include <map>
#include <set>

#include "teamlogic/error.h"

namespace teamlogic {

int ProofBuilder::Assume(const Formula& f, std::string* label) {
  *label = d_.FreshLabel();
  return d_.Assume(*label, f);
}

int ProofBuilder::AndI(int a, int b) {
  return d_.Apply("and_i", Formula::And(At(a), At(b)), {a, b});
}

int ProofBuilder::AndE1(int line) { return d_.Apply("and_e1", At(line).lhs(), {line}); }

int ProofBuilder::AndE2(int line) { return d_.Apply("and_e2", At(line).rhs(), {line}); }

int ProofBuilder::OrComm(int line) {
  const Formula& f = At(line);
  return d_.Apply("or_comm", Formula::Or(f.rhs(), f.lhs()), {line});
}

int ProofBuilder::OrSubst(int disj, int derived, const std::string& label) {
  return d_.Apply("or_subst", Formula::Or(At(disj).lhs(), At(derived)), {disj, derived}, {},
                  {label});
}

int ProofBuilder::ExistsI(int line, const Formula& target, const Term& t) {
  return d_.Apply("exists_i", target, {line}, {{"t", Render(t)}});
}

int ProofBuilder::ExistsE(int exists_line, int derived, const std::string& label) {
  return d_.Apply("exists_e", At(derived), {exists_line, derived}, {}, {label});
}

int ProofBuilder::ForallI(int line, const std::string& var) {
  return d_.Apply("forall_i", Formula::Forall(var, At(line)), {line});
}

int ProofBuilder::ForallE(int line, const Term& t) {
  const Formula& f = At(line);
  return d_.Apply("forall_e", Substitute(f.body(), t, f.var()), {line}, {{"t", Render(t)}});
}

int ProofBuilder::Mono(int quant_line, int derived, const std::string& label) {
  const Formula& q = At(quant_line);
  return d_.Apply("mono", Formula::Quant(q.kind(), q.vars(), At(derived)),
                  {quant_line, derived}, {}, {label});
}

int ProofBuilder::Rule(const std::string& rule, const Formula& conclusion,
                       std::vector<int> premises, Params params) {
  return d_.Apply(rule, conclusion, std::move(premises), std::move(params));
}

std::vector<int> ProofBuilder::SplitConjunction(int line, std::size_t parts) {
  std::vector<int> out(parts);
  int cur = line;
  for (std::size_t i = parts; i-- > 1;) {
    out[i] = AndE2(cur);
    cur = AndE1(cur);
  }
  if (parts > 0) out[0] = cur;
  return out;
}

int ProofBuilder::JoinConjunction(const std::vector<int>& lines) {
  if (lines.empty()) throw WellFormednessError("empty conjunction");
  int cur = lines[0];
  for (std::size_t i = 1; i < lines.size(); ++i) cur = AndI(cur, lines[i]);
  return cur;
}

int ProofBuilder::UnderBinder(int line, const Conversion& body) {
  const Formula f = At(line);
  const std::string x = f.var();
  std::string label;
  switch (f.kind()) {
    case Kind::kQ:
    case Kind::kQd: {
      int a = Assume(f.body(), &label);
      int r = body(*this, a);
      if (r == a) return line;
      return Mono(line, r, label);
    }
    case Kind::kForall: {
      int e = ForallE(line, Term::Var(x));
      int r = body(*this, e);
      if (r == e) return line;
      return ForallI(r, x);
    }
    case Kind::kExists: {
      int a = Assume(f.body(), &label);
      int r = body(*this, a);
      if (r == a) return line;
      int i = ExistsI(r, Formula::Exists(x, At(r)), Term::Var(x));
      return ExistsE(line, i, label);
    }
    default:
      throw WellFormednessError("not a binder: " + Render(f));
  }
}

int ProofBuilder::UnderAnd(int line, const Conversion& left, const Conversion& right) {
  int l = AndE1(line);
  int r = AndE2(line);
  int l2 = left(*this, l);
  int r2 = right(*this, r);
  if (l2 == l && r2 == r) return line;
  return AndI(l2, r2);
}

int ProofBuilder::UnderOr(int line, const Conversion& left, const Conversion& right) {
  int cur = line;
  std::string label;
  {
    int swapped = OrComm(cur);
    int a = Assume(At(cur).lhs(), &label);
    int r = left(*this, a);
    if (r != a) cur = OrComm(OrSubst(swapped, r, label));
  }
  int b = Assume(At(cur).rhs(), &label);
  int r = right(*this, b);
  if (r != b) cur = OrSubst(cur, r, label);
  return cur;
}

ProofBuilder::OpenedBlock ProofBuilder::OpenBlock(int line, std::size_t vars) {
  OpenedBlock out;
  int cur = line;
  for (std::size_t i = 0; i < vars; ++i) {
    const Formula f = At(cur);
    if (f.kind() != Kind::kExists) throw WellFormednessError("expected an existential");
    std::string label;
    out.exists_lines.push_back(cur);
    cur = Assume(f.body(), &label);
    out.labels.push_back(label);
  }
  out.body = cur;
  return out;
}

int ProofBuilder::CloseBlock(const OpenedBlock& block, int derived) {
  int cur = derived;
  for (std::size_t i = block.labels.size(); i-- > 0;) {
    cur = ExistsE(block.exists_lines[i], cur, block.labels[i]);
  }
  return cur;
}

int ProofBuilder::BindExists(int line, const std::vector<std::string>& vars) {
  int cur = line;
  for (std::size_t i = vars.size(); i-- > 0;) {
    cur = ExistsI(cur, Formula::Exists(vars[i], At(cur)), Term::Var(vars[i]));
  }
  return cur;
}

Conversion Compose(std::vector<Conversion> steps) {
  return [steps = std::move(steps)](ProofBuilder& b, int line) {
    for (const auto& s : steps) line = s(b, line);
    return line;
  };
}

Derivation Pruned(const Derivation& d, int root) {
  std::set<int> keep;
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    if (!keep.insert(n).second) continue;
    for (int p : d.line(n).premises) stack.push_back(p);
  }
  std::map<int, int> renumber;
  int next = 1;
  for (int n : keep) renumber[n] = next++;
  Derivation out;
  for (int n : keep) {
    ProofLine line = d.line(n);
    line.number = renumber.at(n);
    for (int& p : line.premises) p = renumber.at(p);
    line.source_line = 0;
    out.Append(std::move(line));
  }
  return out;
}

}  // namespace teamlogic
