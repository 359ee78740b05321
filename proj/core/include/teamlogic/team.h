// Teams: sets of assignments over a common variable domain.

#ifndef TEAMLOGIC_TEAM_H_
#define TEAMLOGIC_TEAM_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "teamlogic/model.h"
#include "teamlogic/syntax.h"

namespace teamlogic {

using Assignment = std::map<std::string, int>;

// Canonical form: variables sorted, rows sorted and unique. Row i holds the
// values of vars()[0..] in order. Structural equality is set equality.
class Team {
 public:
  Team() = default;
  Team(std::vector<std::string> vars, std::vector<std::vector<int>> rows);

  // {∅}: the team holding only the empty assignment.
  static Team Unit();
  // ∅ over the given domain.
  static Team Empty(std::vector<std::string> vars = {});
  static Team FromAssignments(const std::vector<std::string>& vars,
                              const std::vector<Assignment>& rows);
  // All assignments of `vars` into a universe of size n.
  static Team Full(std::vector<std::string> vars, int n);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  VarSet domain() const { return VarSet(vars_.begin(), vars_.end()); }
  // -1 if absent.
  int IndexOf(const std::string& var) const;

  Assignment AssignmentAt(std::size_t row) const;
  std::vector<Assignment> Assignments() const;

  // Subteam made of the rows marked in `keep` (row order).
  Team Subteam(const std::vector<bool>& keep) const;
  bool IsSubteamOf(const Team& other) const;

  bool operator==(const Team&) const = default;
  bool operator<(const Team& o) const {
    return vars_ != o.vars_ ? vars_ < o.vars_ : rows_ < o.rows_;
  }

  std::string ToString() const;

 private:
  void Canonicalize();
  std::vector<std::string> vars_;
  std::vector<std::vector<int>> rows_;
};

// X[M/y]
Team ExtendAll(const Team& x, const std::string& y, int universe_size);
// X[f/y]
Team ExtendFun(const Team& x, const std::string& y,
               const std::function<int(const Assignment&)>& f);
// X[F/ȳ]: {s[ā/ȳ] | ā ∈ F(s)}.
Team ExtendSet(const Team& x, const std::vector<std::string>& ys,
               const std::function<std::vector<Tuple>(const Assignment&)>& f);
// Pointwise restriction to `vars`; throws unless vars ⊆ dom(X).
Team Restrict(const Team& x, const VarSet& vars);

// Random team over `vars` with at most `max_rows` rows.
Team RandomTeam(const std::vector<std::string>& vars, int universe_size,
                std::size_t max_rows, std::mt19937_64& rng);

}  // namespace teamlogic

#endif  // TEAMLOGIC_TEAM_H_
