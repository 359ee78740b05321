// Finite structures and weak interpretations of a monotone quantifier.

#ifndef TEAMLOGIC_MODEL_H_
#define TEAMLOGIC_MODEL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "teamlogic/syntax.h"

namespace teamlogic {

using Tuple = std::vector<int>;

// Index of `tuple` in the lexicographic enumeration of M^k, |M| = n.
std::size_t TupleIndex(const Tuple& tuple, int n);
Tuple TupleAt(std::size_t index, int n, int k);
std::size_t Power(int n, int k);

// A set of k-tuples over a universe of size n, encoded as a bitmask over
// tuple indices. Requires n^k <= 64.
using TupleSet = std::uint64_t;

// A monotone interpretation q of Q on one universe, stored as the antichain
// of its minimal members. Membership is upward closure of the stored sets.
class QuantifierInterpretation {
 public:
  QuantifierInterpretation() = default;

  // Stores `sets` verbatim; call Validate() to check the invariants.
  static QuantifierInterpretation FromSets(int universe_size, int arity,
                                           std::vector<TupleSet> sets);
  // Minimal antichain of the upward closure of `generators`.
  static QuantifierInterpretation Minimized(int universe_size, int arity,
                                            std::vector<TupleSet> generators);

  // "exists", "forall", "majority", "at_least(m)", "fraction(p,q)".
  // Throws WellFormednessError if the result would be trivial on the universe.
  static QuantifierInterpretation Builtin(std::string_view spec,
                                          int universe_size, int arity = 1);
  static QuantifierInterpretation Exists(int universe_size, int arity = 1);
  static QuantifierInterpretation Forall(int universe_size, int arity = 1);
  static QuantifierInterpretation AtLeast(int m, int universe_size, int arity = 1);
  static QuantifierInterpretation Majority(int universe_size, int arity = 1);
  static QuantifierInterpretation Fraction(int p, int q, int universe_size,
                                           int arity = 1);

  // Random monotone non-trivial interpretation.
  static QuantifierInterpretation Random(int universe_size, int arity,
                                         std::mt19937_64& rng);
  // Every monotone non-trivial interpretation; needs n^k <= 4.
  static std::vector<QuantifierInterpretation> EnumerateAll(int universe_size,
                                                            int arity = 1);

  int universe_size() const { return universe_size_; }
  int arity() const { return arity_; }
  std::size_t tuple_count() const { return Power(universe_size_, arity_); }
  TupleSet full() const;
  const std::vector<TupleSet>& minimal_sets() const { return minimals_; }

  bool Member(TupleSet set) const;
  // Throws WellFormednessError on an out-of-range tuple.
  bool Member(const std::vector<Tuple>& tuples) const;
  TupleSet Encode(const std::vector<Tuple>& tuples) const;
  std::vector<Tuple> Decode(TupleSet set) const;

  // Every member set (the full upward closure).
  std::vector<TupleSet> AllMembers() const;

  // Empty result means valid. Reports antichain violations, empty minimal
  // sets (empty set in q) and an empty antichain (M^k not in q).
  std::vector<std::string> Validate() const;
  bool IsValid() const { return Validate().empty(); }

  // A in dual iff the complement of A is not in q. Brute force over all
  // subsets of M^k, then minimization.
  QuantifierInterpretation Dual() const;

  std::string ToString() const;

  bool operator==(const QuantifierInterpretation&) const = default;

 private:
  int universe_size_ = 1;
  int arity_ = 1;
  std::vector<TupleSet> minimals_;
};

class Structure {
 public:
  struct RelationTable {
    int arity = 0;
    std::vector<std::uint8_t> holds;  // indexed by TupleIndex
  };
  struct FunctionTable {
    int arity = 0;
    std::vector<int> values;  // indexed by TupleIndex
  };

  explicit Structure(int universe_size = 1);

  int size() const { return n_; }

  void SetRelation(const std::string& name, int arity,
                   const std::vector<Tuple>& tuples);
  void SetRelationTable(const std::string& name, RelationTable table);
  void SetFunction(const std::string& name, int arity, std::vector<int> values);
  void SetFunction(const std::string& name, int arity,
                   const std::function<int(const Tuple&)>& fn);

  bool HasRelation(const std::string& name) const {
    return relations_.count(name) > 0;
  }
  bool HasFunction(const std::string& name) const {
    return functions_.count(name) > 0;
  }
  const RelationTable& relation(const std::string& name) const;
  const FunctionTable& function(const std::string& name) const;
  const std::map<std::string, RelationTable>& relations() const { return relations_; }
  const std::map<std::string, FunctionTable>& functions() const { return functions_; }

  bool Holds(const std::string& name, const Tuple& args) const;
  int Apply(const std::string& name, const Tuple& args) const;

  Signature signature() const;
  // Throws unless every symbol of `sig` is interpreted with the right arity.
  void CheckCovers(const Signature& sig) const;

  static Structure Random(const Signature& sig, int n, std::mt19937_64& rng);
  // Calls `visit` on every structure for `sig` with universe size n.
  // Returns false if `visit` stopped the enumeration by returning false.
  static bool EnumerateAll(const Signature& sig, int n,
                           const std::function<bool(const Structure&)>& visit);

  bool operator==(const Structure& o) const;

 private:
  int n_;
  std::map<std::string, RelationTable> relations_;
  std::map<std::string, FunctionTable> functions_;
};

// A structure together with a weak interpretation q of Q and its dual.
class WeakModel {
 public:
  WeakModel(Structure structure, QuantifierInterpretation q);

  const Structure& structure() const { return structure_; }
  const QuantifierInterpretation& q() const { return q_; }
  const QuantifierInterpretation& qd() const { return qd_; }
  int size() const { return structure_.size(); }

  // Same universe and q, different relation/function interpretations.
  WeakModel WithStructure(Structure s) const;

 private:
  Structure structure_;
  QuantifierInterpretation q_;
  QuantifierInterpretation qd_;
};

}  // namespace teamlogic

#endif  // TEAMLOGIC_MODEL_H_
