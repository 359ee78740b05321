#include <set>
#include <sstream>

#include "criteria.h"
#include "golden.h"

namespace teamlogic::acceptance {

namespace {

const char* const kDerivations[] = {
    "pull_prefix_right_disjunct", "swap_disjuncts_under_prefix",
    "pull_prefixes_both_disjuncts", "existential_past_dual",
    "trailing_existential_atom", "vacuous_universal",
    "block_existential_atom", "push_atom_into_block"};

const char* const kRules[] = {
    "and_i",    "and_e1",   "and_e2",   "or_i1",     "or_i2",    "or_e",
    "not_i",    "raa",      "bot_i",    "dual",      "forall_i", "forall_e",
    "exists_i", "exists_e", "or_subst", "or_comm",   "or_assoc", "scope_or",
    "scope_and", "unnest",  "dep_dist", "dep_intro", "mono",     "bound",
    "id_refl",  "id_subst", "approx",   "q1_axiom",  "q1_union", "skolem"};

}  // namespace

Verdict GoldenProofs() {
  using testing::CheckGolden;
  using testing::LoadGolden;
  std::ostringstream bad;
  int accepted = 0, rejected = 0, failures = 0;
  auto note = [&](const std::string& name, const std::string& why) {
    if (failures++ < 5) bad << " " << name << ": " << why << ";";
  };

  std::set<std::string> present;
  for (const char* dir : {"derivations", "rules"}) {
    for (const auto& g : LoadGolden(dir)) {
      present.insert(g.name);
      try {
        CheckReport r = CheckGolden(g);
        if (g.expect != "ok") {
          note(g.name, "expects " + g.expect);
        } else if (!r.ok()) {
          note(g.name, r.violations.front().ToString());
        } else {
          ++accepted;
        }
      } catch (const Error& e) {
        note(g.name, e.what());
      }
    }
  }
  for (const char* n : kDerivations) {
    if (!present.count(n)) note(n, "missing");
  }
  for (const char* n : kRules) {
    if (!present.count(n)) note(n, "missing");
  }

  auto mutations = LoadGolden("mutations");
  for (const auto& g : mutations) {
    try {
      CheckReport r = CheckGolden(g);
      bool right = !r.ok() && ViolationKindName(r.violations.front().kind) == g.expect;
      if (right) {
        ++rejected;
      } else if (r.ok()) {
        note(g.name, "accepted");
      } else {
        note(g.name, r.violations.front().ToString());
      }
    } catch (const Error& e) {
      note(g.name, e.what());
    }
  }
  if (mutations.size() < 20) note("mutations", "fewer than 20");

  std::ostringstream out;
  out << accepted << " scripts accepted, " << rejected << "/" << mutations.size()
      << " mutations rejected with the expected class";
  if (failures) out << ", " << failures << " failures:" << bad.str();
  return {failures == 0, out.str()};
}

}  // namespace teamlogic::acceptance
