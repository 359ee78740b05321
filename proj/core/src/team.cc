#include "teamlogic/team.h"

#include <algorithm>
#include <numeric>

namespace teamlogic {

Team::Team(std::vector<std::string> vars, std::vector<std::vector<int>> rows)
    : vars_(std::move(vars)), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != vars_.size()) {
      throw WellFormednessError("team row does not match the variable domain");
    }
  }
  Canonicalize();
}

void Team::Canonicalize() {
  std::vector<std::size_t> order(vars_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vars_[a] < vars_[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (vars_[order[i]] == vars_[order[i - 1]]) {
      throw WellFormednessError("duplicate team variable " + vars_[order[i]]);
    }
  }
  std::vector<std::string> vars(vars_.size());
  for (std::size_t i = 0; i < order.size(); ++i) vars[i] = vars_[order[i]];
  for (auto& r : rows_) {
    std::vector<int> row(r.size());
    for (std::size_t i = 0; i < order.size(); ++i) row[i] = r[order[i]];
    r = std::move(row);
  }
  vars_ = std::move(vars);
  std::sort(rows_.begin(), rows_.end());
  rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

Team Team::Unit() { return Team({}, {{}}); }

Team Team::Empty(std::vector<std::string> vars) { return Team(std::move(vars), {}); }

Team Team::FromAssignments(const std::vector<std::string>& vars,
                           const std::vector<Assignment>& rows) {
  std::vector<std::vector<int>> out;
  for (const auto& a : rows) {
    if (a.size() != vars.size()) {
      throw WellFormednessError("assignment domain differs from team domain");
    }
    std::vector<int> row;
    for (const auto& v : vars) {
      auto it = a.find(v);
      if (it == a.end()) {
        throw WellFormednessError("assignment lacks variable " + v);
      }
      row.push_back(it->second);
    }
    out.push_back(std::move(row));
  }
  return Team(vars, std::move(out));
}

Team Team::Full(std::vector<std::string> vars, int n) {
  Team t = Unit();
  for (const auto& v : vars) t = ExtendAll(t, v, n);
  return t;
}

int Team::IndexOf(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return -1;
  return static_cast<int>(it - vars_.begin());
}

Assignment Team::AssignmentAt(std::size_t row) const {
  Assignment a;
  for (std::size_t i = 0; i < vars_.size(); ++i) a[vars_[i]] = rows_[row][i];
  return a;
}

std::vector<Assignment> Team::Assignments() const {
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(AssignmentAt(i));
  return out;
}

Team Team::Subteam(const std::vector<bool>& keep) const {
  Team out;
  out.vars_ = vars_;
  for (std::size_t i = 0; i < rows_.size() && i < keep.size(); ++i) {
    if (keep[i]) out.rows_.push_back(rows_[i]);
  }
  return out;
}

bool Team::IsSubteamOf(const Team& other) const {
  return vars_ == other.vars_ &&
         std::includes(other.rows_.begin(), other.rows_.end(), rows_.begin(),
                       rows_.end());
}

std::string Team::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += " ";
    out += vars_[i];
  }
  out += "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(r[i]);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> WithVar(const std::vector<std::string>& vars,
                                 const std::string& y) {
  std::vector<std::string> out = vars;
  if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
  return out;
}

std::vector<int> Set(const std::vector<std::string>& vars, std::vector<int> row,
                     const std::string& y, int value) {
  auto it = std::find(vars.begin(), vars.end(), y);
  std::size_t i = static_cast<std::size_t>(it - vars.begin());
  if (i < row.size()) {
    row[i] = value;
  } else {
    row.push_back(value);
  }
  return row;
}

}  // namespace

Team ExtendAll(const Team& x, const std::string& y, int universe_size) {
  std::vector<std::string> vars = WithVar(x.vars(), y);
  std::vector<std::vector<int>> rows;
  for (const auto& r : x.rows()) {
    for (int a = 0; a < universe_size; ++a) rows.push_back(Set(x.vars(), r, y, a));
  }
  return Team(std::move(vars), std::move(rows));
}

Team ExtendFun(const Team& x, const std::string& y,
               const std::function<int(const Assignment&)>& f) {
  std::vector<std::string> vars = WithVar(x.vars(), y);
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rows.push_back(Set(x.vars(), x.rows()[i], y, f(x.AssignmentAt(i))));
  }
  return Team(std::move(vars), std::move(rows));
}

Team ExtendSet(const Team& x, const std::vector<std::string>& ys,
               const std::function<std::vector<Tuple>(const Assignment&)>& f) {
  std::vector<std::string> vars = x.vars();
  for (const auto& y : ys) vars = WithVar(vars, y);
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (const Tuple& t : f(x.AssignmentAt(i))) {
      if (t.size() != ys.size()) {
        throw WellFormednessError("tuple length differs from binder arity");
      }
      std::vector<int> row = x.rows()[i];
      std::vector<std::string> cur = x.vars();
      for (std::size_t j = 0; j < ys.size(); ++j) {
        row = Set(cur, std::move(row), ys[j], t[j]);
        cur = WithVar(cur, ys[j]);
      }
      rows.push_back(std::move(row));
    }
  }
  return Team(std::move(vars), std::move(rows));
}

Team Restrict(const Team& x, const VarSet& vars) {
  std::vector<int> cols;
  std::vector<std::string> names;
  for (const auto& v : vars) {
    int i = x.IndexOf(v);
    if (i < 0) throw WellFormednessError("restrict: " + v + " not in team domain");
    cols.push_back(i);
    names.push_back(v);
  }
  std::vector<std::vector<int>> rows;
  for (const auto& r : x.rows()) {
    std::vector<int> row;
    for (int c : cols) row.push_back(r[c]);
    rows.push_back(std::move(row));
  }
  return Team(std::move(names), std::move(rows));
}

Team RandomTeam(const std::vector<std::string>& vars, int universe_size,
                std::size_t max_rows, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(0, max_rows);
  std::uniform_int_distribution<int> elem(0, universe_size - 1);
  std::size_t k = count(rng);
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> r;
    for (std::size_t j = 0; j < vars.size(); ++j) r.push_back(elem(rng));
    rows.push_back(std::move(r));
  }
  return Team(vars, std::move(rows));
}

}  // namespace teamlogic
