#include "teamlogic/model.h"

#include <algorithm>
#include <bit>
#include <sstream>

namespace teamlogic {

std::size_t Power(int n, int k) {
  std::size_t out = 1;
  for (int i = 0; i < k; ++i) out *= static_cast<std::size_t>(n);
  return out;
}

std::size_t TupleIndex(const Tuple& tuple, int n) {
  std::size_t idx = 0;
  for (int a : tuple) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
  return idx;
}

Tuple TupleAt(std::size_t index, int n, int k) {
  Tuple out(k);
  for (int i = k - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % static_cast<std::size_t>(n));
    index /= static_cast<std::size_t>(n);
  }
  return out;
}

// ------------------------------------------------- QuantifierInterpretation

namespace {

void CheckShape(int n, int k) {
  if (n < 1) throw WellFormednessError("universe must be non-empty");
  if (k < 1) throw WellFormednessError("quantifier arity must be >= 1");
  if (Power(n, k) > 64) {
    throw WellFormednessError("n^k > 64 tuples is not supported");
  }
}

std::vector<TupleSet> Minimize(std::vector<TupleSet> sets) {
  std::sort(sets.begin(), sets.end(), [](TupleSet a, TupleSet b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<TupleSet> out;
  for (TupleSet s : sets) {
    bool dominated = false;
    for (TupleSet m : out) {
      if ((m & ~s) == 0) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuantifierInterpretation Threshold(int t, int n, int k, const std::string& what) {
  CheckShape(n, k);
  const std::size_t total = Power(n, k);
  if (t < 1 || static_cast<std::size_t>(t) > total) {
    throw WellFormednessError(what + " is trivial on a universe of size " +
                              std::to_string(n));
  }
  std::vector<TupleSet> sets;
  // Enumerate all t-subsets of the tuple indices.
  std::vector<int> pick(t);
  for (int i = 0; i < t; ++i) pick[i] = i;
  while (true) {
    TupleSet s = 0;
    for (int i : pick) s |= TupleSet{1} << i;
    sets.push_back(s);
    int i = t - 1;
    while (i >= 0 && pick[i] == static_cast<int>(total) - t + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(sets.begin(), sets.end());
  return QuantifierInterpretation::FromSets(n, k, std::move(sets));
}

}  // namespace

QuantifierInterpretation QuantifierInterpretation::FromSets(int universe_size, int arity,
                                                            std::vector<TupleSet> sets) {
  CheckShape(universe_size, arity);
  QuantifierInterpretation q;
  q.universe_size_ = universe_size;
  q.arity_ = arity;
  const TupleSet full = q.full();
  for (TupleSet s : sets) {
    if (s & ~full) throw WellFormednessError("tuple set exceeds M^k");
  }
  q.minimals_ = std::move(sets);
  return q;
}

QuantifierInterpretation QuantifierInterpretation::Minimized(
    int universe_size, int arity, std::vector<TupleSet> generators) {
  return FromSets(universe_size, arity, Minimize(std::move(generators)));
}

QuantifierInterpretation QuantifierInterpretation::Exists(int n, int k) {
  return Threshold(1, n, k, "exists");
}

QuantifierInterpretation QuantifierInterpretation::Forall(int n, int k) {
  CheckShape(n, k);
  QuantifierInterpretation q;
  q.universe_size_ = n;
  q.arity_ = k;
  q.minimals_ = {q.full()};
  return q;
}

QuantifierInterpretation QuantifierInterpretation::AtLeast(int m, int n, int k) {
  return Threshold(m, n, k, "at_least(" + std::to_string(m) + ")");
}

QuantifierInterpretation QuantifierInterpretation::Majority(int n, int k) {
  return Threshold(static_cast<int>(Power(n, k) / 2 + 1), n, k, "majority");
}

QuantifierInterpretation QuantifierInterpretation::Fraction(int p, int q, int n, int k) {
  if (q <= 0 || p < 0 || p > q) {
    throw WellFormednessError("fraction(p,q) needs 0 <= p <= q, q > 0");
  }
  // ceil(p * N / q)
  const long long total = static_cast<long long>(Power(n, k));
  const long long t = (p * total + q - 1) / q;
  return Threshold(static_cast<int>(t), n, k,
                   "fraction(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

QuantifierInterpretation QuantifierInterpretation::Builtin(std::string_view spec, int n,
                                                           int k) {
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  auto args_of = [&](const std::string& name) -> std::vector<int> {
    if (s.rfind(name + "(", 0) != 0 || s.back() != ')') {
      throw WellFormednessError("malformed quantifier spec '" + std::string(spec) + "'");
    }
    std::vector<int> out;
    std::string inner = s.substr(name.size() + 1, s.size() - name.size() - 2);
    std::stringstream in(inner);
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        out.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw WellFormednessError("bad parameter in '" + std::string(spec) + "'");
      }
    }
    return out;
  };
  if (s == "exists") return Exists(n, k);
  if (s == "forall") return Forall(n, k);
  if (s == "majority") return Majority(n, k);
  if (s.rfind("at_least", 0) == 0) {
    auto a = args_of("at_least");
    if (a.size() != 1) throw WellFormednessError("at_least takes one parameter");
    return AtLeast(a[0], n, k);
  }
  if (s.rfind("fraction", 0) == 0) {
    auto a = args_of("fraction");
    if (a.size() != 2) throw WellFormednessError("fraction takes two parameters");
    return Fraction(a[0], a[1], n, k);
  }
  throw WellFormednessError("unknown quantifier '" + std::string(spec) + "'");
}

QuantifierInterpretation QuantifierInterpretation::Random(int n, int k,
                                                          std::mt19937_64& rng) {
  CheckShape(n, k);
  const std::size_t total = Power(n, k);
  const TupleSet full = total == 64 ? ~TupleSet{0} : ((TupleSet{1} << total) - 1);
  std::uniform_int_distribution<int> count_dist(1, 3);
  std::uniform_int_distribution<TupleSet> set_dist(1, full);
  std::vector<TupleSet> gens;
  int count = count_dist(rng);
  for (int i = 0; i < count; ++i) gens.push_back(set_dist(rng));
  return Minimized(n, k, std::move(gens));
}

std::vector<QuantifierInterpretation> QuantifierInterpretation::EnumerateAll(int n,
                                                                             int k) {
  CheckShape(n, k);
  const std::size_t total = Power(n, k);
  if (total > 4) throw WellFormednessError("EnumerateAll needs n^k <= 4");
  const std::size_t subsets = std::size_t{1} << total;
  const TupleSet full = (TupleSet{1} << total) - 1;
  std::vector<QuantifierInterpretation> out;
  // Each family of subsets is a bitmask over the 2^total subsets.
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    if (fam & 1) continue;                  // empty set is a member
    if (!((fam >> full) & 1)) continue;     // M^k is not a member
    bool upward = true;
    for (std::size_t a = 0; a < subsets && upward; ++a) {
      if (!((fam >> a) & 1)) continue;
      for (std::size_t b = 0; b < subsets; ++b) {
        if ((a & ~b) == 0 && !((fam >> b) & 1)) {
          upward = false;
          break;
        }
      }
    }
    if (!upward) continue;
    std::vector<TupleSet> members;
    for (std::size_t a = 0; a < subsets; ++a) {
      if ((fam >> a) & 1) members.push_back(a);
    }
    out.push_back(Minimized(n, k, std::move(members)));
  }
  return out;
}

TupleSet QuantifierInterpretation::full() const {
  const std::size_t total = tuple_count();
  return total == 64 ? ~TupleSet{0} : ((TupleSet{1} << total) - 1);
}

bool QuantifierInterpretation::Member(TupleSet set) const {
  for (TupleSet m : minimals_) {
    if ((m & ~set) == 0) return true;
  }
  return false;
}

TupleSet QuantifierInterpretation::Encode(const std::vector<Tuple>& tuples) const {
  TupleSet s = 0;
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity_) {
      throw WellFormednessError("tuple of wrong length for quantifier");
    }
    for (int a : t) {
      if (a < 0 || a >= universe_size_) {
        throw WellFormednessError("tuple element out of range");
      }
    }
    s |= TupleSet{1} << TupleIndex(t, universe_size_);
  }
  return s;
}

std::vector<Tuple> QuantifierInterpretation::Decode(TupleSet set) const {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < tuple_count(); ++i) {
    if ((set >> i) & 1) out.push_back(TupleAt(i, universe_size_, arity_));
  }
  return out;
}

bool QuantifierInterpretation::Member(const std::vector<Tuple>& tuples) const {
  return Member(Encode(tuples));
}

std::vector<TupleSet> QuantifierInterpretation::AllMembers() const {
  const std::size_t total = tuple_count();
  if (total > 24) throw WellFormednessError("too many tuples to enumerate members");
  std::vector<TupleSet> out;
  for (TupleSet a = 0; a < (TupleSet{1} << total); ++a) {
    if (Member(a)) out.push_back(a);
  }
  return out;
}

std::vector<std::string> QuantifierInterpretation::Validate() const {
  std::vector<std::string> out;
  if (minimals_.empty()) {
    out.push_back("non-triviality: antichain is empty, so M^k is not in q");
  }
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    if (minimals_[i] == 0) {
      out.push_back("non-triviality: empty set is a member of q");
    }
    for (std::size_t j = 0; j < minimals_.size(); ++j) {
      if (i == j) continue;
      if ((minimals_[i] & ~minimals_[j]) == 0 &&
          (minimals_[i] != minimals_[j] || i < j)) {
        out.push_back("antichain: set #" + std::to_string(i) +
                      " is contained in set #" + std::to_string(j));
      }
    }
  }
  return out;
}

QuantifierInterpretation QuantifierInterpretation::Dual() const {
  const std::size_t total = tuple_count();
  if (total > 24) throw WellFormednessError("dual: too many tuples for brute force");
  const TupleSet all = full();
  std::vector<TupleSet> members;
  for (TupleSet a = 0; a < (TupleSet{1} << total); ++a) {
    if (!Member(all & ~a)) members.push_back(a);
  }
  return Minimized(universe_size_, arity_, std::move(members));
}

std::string QuantifierInterpretation::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    if (i) out += ";";
    out += "{";
    auto tuples = Decode(minimals_[i]);
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      if (j) out += ",";
      if (arity_ == 1) {
        out += std::to_string(tuples[j][0]);
      } else {
        out += "(";
        for (int e = 0; e < arity_; ++e) {
          if (e) out += ",";
          out += std::to_string(tuples[j][e]);
        }
        out += ")";
      }
    }
    out += "}";
  }
  return out;
}

// --------------------------------------------------------------- Structure

Structure::Structure(int universe_size) : n_(universe_size) {
  if (n_ < 1) throw WellFormednessError("universe must be non-empty");
  if (n_ > 255) throw WellFormednessError("universe larger than 255");
}

void Structure::SetRelation(const std::string& name, int arity,
                            const std::vector<Tuple>& tuples) {
  RelationTable table;
  table.arity = arity;
  table.holds.assign(Power(n_, arity), 0);
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity) {
      throw WellFormednessError("tuple of wrong arity for relation " + name);
    }
    for (int a : t) {
      if (a < 0 || a >= n_) {
        throw WellFormednessError("tuple out of range for relation " + name);
      }
    }
    table.holds[TupleIndex(t, n_)] = 1;
  }
  relations_[name] = std::move(table);
}

void Structure::SetRelationTable(const std::string& name, RelationTable table) {
  if (table.holds.size() != Power(n_, table.arity)) {
    throw WellFormednessError("relation table of wrong size for " + name);
  }
  relations_[name] = std::move(table);
}

void Structure::SetFunction(const std::string& name, int arity, std::vector<int> values) {
  if (values.size() != Power(n_, arity)) {
    throw WellFormednessError("function " + name + " is not total");
  }
  for (int v : values) {
    if (v < 0 || v >= n_) {
      throw WellFormednessError("function value out of range for " + name);
    }
  }
  functions_[name] = FunctionTable{arity, std::move(values)};
}

void Structure::SetFunction(const std::string& name, int arity,
                            const std::function<int(const Tuple&)>& fn) {
  std::vector<int> values(Power(n_, arity));
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(TupleAt(i, n_, arity));
  SetFunction(name, arity, std::move(values));
}

const Structure::RelationTable& Structure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    throw WellFormednessError("relation " + name + " not interpreted");
  }
  return it->second;
}

const Structure::FunctionTable& Structure::function(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) {
    throw WellFormednessError("function " + name + " not interpreted");
  }
  return it->second;
}

bool Structure::Holds(const std::string& name, const Tuple& args) const {
  return relation(name).holds[TupleIndex(args, n_)] != 0;
}

int Structure::Apply(const std::string& name, const Tuple& args) const {
  return function(name).values[TupleIndex(args, n_)];
}

Signature Structure::signature() const {
  Signature sig;
  for (const auto& [name, t] : relations_) sig.AddRelation(name, t.arity);
  for (const auto& [name, t] : functions_) sig.AddFunction(name, t.arity);
  return sig;
}

void Structure::CheckCovers(const Signature& sig) const {
  for (const auto& [name, arity] : sig.relations()) {
    if (relation(name).arity != arity) {
      throw WellFormednessError("arity mismatch for relation " + name);
    }
  }
  for (const auto& [name, arity] : sig.functions()) {
    if (function(name).arity != arity) {
      throw WellFormednessError("arity mismatch for function " + name);
    }
  }
}

Structure Structure::Random(const Signature& sig, int n, std::mt19937_64& rng) {
  Structure s(n);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> elem(0, n - 1);
  for (const auto& [name, arity] : sig.relations()) {
    RelationTable t;
    t.arity = arity;
    t.holds.resize(Power(n, arity));
    for (auto& h : t.holds) h = coin(rng) ? 1 : 0;
    s.relations_[name] = std::move(t);
  }
  for (const auto& [name, arity] : sig.functions()) {
    std::vector<int> values(Power(n, arity));
    for (auto& v : values) v = elem(rng);
    s.functions_[name] = FunctionTable{arity, std::move(values)};
  }
  return s;
}

bool Structure::EnumerateAll(const Signature& sig, int n,
                             const std::function<bool(const Structure&)>& visit) {
  // Odometer over every relation bit and every function value.
  struct Slot {
    bool is_relation;
    std::string name;
    std::size_t index;
  };
  Structure s(n);
  std::vector<Slot> slots;
  for (const auto& [name, arity] : sig.relations()) {
    RelationTable t;
    t.arity = arity;
    t.holds.assign(Power(n, arity), 0);
    for (std::size_t i = 0; i < t.holds.size(); ++i) slots.push_back({true, name, i});
    s.relations_[name] = std::move(t);
  }
  for (const auto& [name, arity] : sig.functions()) {
    FunctionTable t{arity, std::vector<int>(Power(n, arity), 0)};
    for (std::size_t i = 0; i < t.values.size(); ++i) slots.push_back({false, name, i});
    s.functions_[name] = std::move(t);
  }
  while (true) {
    if (!visit(s)) return false;
    std::size_t i = 0;
    for (; i < slots.size(); ++i) {
      const Slot& slot = slots[i];
      if (slot.is_relation) {
        auto& bit = s.relations_[slot.name].holds[slot.index];
        if (bit == 0) {
          bit = 1;
          break;
        }
        bit = 0;
      } else {
        auto& v = s.functions_[slot.name].values[slot.index];
        if (v + 1 < n) {
          ++v;
          break;
        }
        v = 0;
      }
    }
    if (i == slots.size()) return true;
  }
}

bool Structure::operator==(const Structure& o) const {
  if (n_ != o.n_ || relations_.size() != o.relations_.size() ||
      functions_.size() != o.functions_.size()) {
    return false;
  }
  for (const auto& [name, t] : relations_) {
    auto it = o.relations_.find(name);
    if (it == o.relations_.end() || it->second.arity != t.arity ||
        it->second.holds != t.holds) {
      return false;
    }
  }
  for (const auto& [name, t] : functions_) {
    auto it = o.functions_.find(name);
    if (it == o.functions_.end() || it->second.arity != t.arity ||
        it->second.values != t.values) {
      return false;
    }
  }
  return true;
}

// --------------------------------------------------------------- WeakModel

WeakModel::WeakModel(Structure structure, QuantifierInterpretation q)
    : structure_(std::move(structure)), q_(std::move(q)) {
  if (q_.universe_size() != structure_.size()) {
    throw WellFormednessError("quantifier interpretation is for a universe of size " +
                              std::to_string(q_.universe_size()) + ", structure has " +
                              std::to_string(structure_.size()));
  }
  auto problems = q_.Validate();
  if (!problems.empty()) {
    throw WellFormednessError("invalid quantifier interpretation: " + problems.front());
  }
  qd_ = q_.Dual();
}

WeakModel WeakModel::WithStructure(Structure s) const {
  if (s.size() != structure_.size()) {
    throw WellFormednessError("WithStructure: universe size differs");
  }
  WeakModel out = *this;
  out.structure_ = std::move(s);
  return out;
}

}  // namespace teamlogic
