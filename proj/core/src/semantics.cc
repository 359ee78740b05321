#include "teamlogic/semantics.h"

#include <algorithm>
#include <optional>
#include <unordered_map>

namespace teamlogic {

namespace {

constexpr char kUnset = '\xFF';
constexpr std::size_t kMemoCap = 4'000'000;

// Rows are fixed-width byte strings indexed by variable slot; kUnset marks
// slots outside the domain of the assignment.
using Row = std::string;
using Rows = std::vector<Row>;

int Value(char c) { return static_cast<unsigned char>(c); }

struct CTerm {
  int slot = -1;
  int arity = 0;
  const std::vector<int>* values = nullptr;
  std::vector<CTerm> args;
};

struct CNode {
  Kind kind = Kind::kFalse;
  bool flat = true;
  std::uint64_t fv = 0;
  std::vector<int> kids;
  std::vector<int> bound;
  const std::vector<std::uint8_t>* holds = nullptr;
  std::vector<CTerm> terms;
  // ∃ only: terms of a dependence atom dep(t̄, y) that every satisfying
  // extension must respect; rows agreeing on t̄ share the witness.
  bool grouped = false;
  std::vector<CTerm> group;
  // ∃ only: index into the engine's blocks, -1 if the body is not a block.
  int block = -1;
};

// E y1 .. E yk (D & theta) with D dependence atoms and theta flat.
struct Block {
  struct Atom {
    std::vector<CTerm> args;
    CTerm value;
    // Index of the last block variable the atom reads, -1 for none.
    int ready = -1;
  };
  std::vector<int> slots;
  std::vector<Atom> atoms;
  // Atom whose table supplies each block variable, -1 for a free choice.
  std::vector<int> governing;
  // Constraint atoms checked once block variable i is set.
  std::vector<std::vector<int>> checks;
  // Constraint atoms that read no block variable.
  std::vector<int> row_checks;
  std::vector<int> matrix;
};

// Set of decision levels.
using Levels = std::vector<std::uint64_t>;

bool Test(const Levels& s, int level) { return (s[level / 64] >> (level % 64)) & 1; }
void Insert(Levels& s, int level) { s[level / 64] |= std::uint64_t{1} << (level % 64); }
void Erase(Levels& s, int level) { s[level / 64] &= ~(std::uint64_t{1} << (level % 64)); }
void Merge(Levels& s, const Levels& o) {
  for (std::size_t i = 0; i < s.size(); ++i) s[i] |= o[i];
}

// Arguments of a dependence atom on `y` that constrains every team
// satisfying `f`, looking through conjunctions and binders.
std::optional<std::vector<Term>> GoverningDep(const Formula& f, const std::string& y,
                                              VarSet& inner) {
  switch (f.kind()) {
    case Kind::kDep: {
      const auto& ts = f.terms();
      if (!ts.back().is_var() || ts.back().name() != y) return std::nullopt;
      std::vector<Term> args(ts.begin(), ts.end() - 1);
      for (const auto& t : args) {
        for (const auto& v : FreeVariables(t)) {
          if (v == y || inner.count(v)) return std::nullopt;
        }
      }
      return args;
    }
    case Kind::kAnd: {
      if (auto r = GoverningDep(f.lhs(), y, inner)) return r;
      return GoverningDep(f.rhs(), y, inner);
    }
    case Kind::kExists:
    case Kind::kForall:
    case Kind::kQ:
    case Kind::kQd: {
      for (const auto& v : f.vars()) {
        if (v == y) return std::nullopt;
      }
      VarSet saved = inner;
      inner.insert(f.vars().begin(), f.vars().end());
      auto r = GoverningDep(f.body(), y, inner);
      inner = std::move(saved);
      return r;
    }
    default:
      return std::nullopt;
  }
}

class Engine {
 public:
  Engine(const WeakModel& w, const EvalConfig& cfg, EvalStats* stats)
      : w_(w), cfg_(cfg), stats_(stats), n_(w.size()) {}

  int Slot(const std::string& v) {
    auto it = slots_.find(v);
    if (it != slots_.end()) return it->second;
    int s = static_cast<int>(slots_.size());
    if (s >= 64) throw WellFormednessError("too many variables for the evaluator");
    slots_[v] = s;
    return s;
  }
  int SlotOf(const std::string& v) const { return slots_.at(v); }
  std::size_t width() const { return slots_.size(); }

  int Compile(const Formula& f) {
    CNode node;
    node.kind = f.kind();
    node.flat = !f.has_dep();
    for (const auto& v : FreeVariables(f)) node.fv |= std::uint64_t{1} << Slot(v);
    switch (f.kind()) {
      case Kind::kRelation: {
        const auto& table = w_.structure().relation(f.symbol());
        if (table.arity != static_cast<int>(f.terms().size())) {
          throw WellFormednessError("arity mismatch for relation " + f.symbol());
        }
        node.holds = &table.holds;
        for (const auto& t : f.terms()) node.terms.push_back(CompileTerm(t));
        break;
      }
      case Kind::kEquals:
      case Kind::kDep:
        for (const auto& t : f.terms()) node.terms.push_back(CompileTerm(t));
        break;
      case Kind::kFalse:
        break;
      case Kind::kNot:
      case Kind::kAnd:
      case Kind::kOr:
        for (const auto& c : f.children()) node.kids.push_back(Compile(c));
        break;
      case Kind::kExists:
      case Kind::kForall:
      case Kind::kQ:
      case Kind::kQd: {
        if ((f.kind() == Kind::kQ || f.kind() == Kind::kQd) &&
            static_cast<int>(f.vars().size()) != w_.q().arity()) {
          throw WellFormednessError("binder tuple length differs from quantifier arity");
        }
        for (const auto& v : f.vars()) node.bound.push_back(Slot(v));
        if (f.kind() == Kind::kExists && f.has_dep() && cfg_.block_solver) {
          node.block = CompileBlock(f);
        }
        if (f.kind() == Kind::kExists && f.has_dep()) {
          VarSet inner;
          if (auto dep = GoverningDep(f.body(), f.var(), inner)) {
            node.grouped = true;
            for (const auto& t : *dep) node.group.push_back(CompileTerm(t));
          }
        }
        node.kids.push_back(Compile(f.body()));
        break;
      }
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool Tarski(int id, Row& row) {
    const CNode& node = nodes_[id];
    switch (node.kind) {
      case Kind::kRelation: {
        std::size_t idx = 0;
        for (const auto& t : node.terms) idx = idx * n_ + TermValue(t, row);
        return (*node.holds)[idx] != 0;
      }
      case Kind::kEquals:
        return TermValue(node.terms[0], row) == TermValue(node.terms[1], row);
      case Kind::kFalse:
        return false;
      case Kind::kDep:
        return true;
      case Kind::kNot:
        return !Tarski(node.kids[0], row);
      case Kind::kAnd:
        return Tarski(node.kids[0], row) && Tarski(node.kids[1], row);
      case Kind::kOr:
        return Tarski(node.kids[0], row) || Tarski(node.kids[1], row);
      case Kind::kExists:
      case Kind::kForall: {
        const int slot = node.bound[0];
        const char saved = row[slot];
        bool result = node.kind == Kind::kForall;
        for (int a = 0; a < n_; ++a) {
          row[slot] = static_cast<char>(a);
          if (Tarski(node.kids[0], row) != result) {
            result = !result;
            break;
          }
        }
        row[slot] = saved;
        return result;
      }
      case Kind::kQ:
      case Kind::kQd: {
        const auto& q = node.kind == Kind::kQ ? w_.q() : w_.qd();
        const std::size_t k = node.bound.size();
        std::vector<char> saved(k);
        for (std::size_t i = 0; i < k; ++i) saved[i] = row[node.bound[i]];
        TupleSet witness = 0;
        const std::size_t total = q.tuple_count();
        for (std::size_t idx = 0; idx < total; ++idx) {
          std::size_t rest = idx;
          for (std::size_t i = k; i-- > 0;) {
            row[node.bound[i]] = static_cast<char>(rest % n_);
            rest /= n_;
          }
          if (Tarski(node.kids[0], row)) witness |= TupleSet{1} << idx;
        }
        for (std::size_t i = 0; i < k; ++i) row[node.bound[i]] = saved[i];
        return q.Member(witness);
      }
    }
    return false;
  }

  bool Team(int id, Rows rows) {
    const CNode& node = nodes_[id];
    Project(rows, node.fv);
    if (rows.empty()) return true;
    Tick();
    if (node.flat) {
      for (auto& r : rows) {
        if (!Tarski(id, r)) return false;
      }
      return true;
    }
    std::string key;
    if (cfg_.memoize) {
      key.reserve(4 + rows.size() * width());
      key.append(reinterpret_cast<const char*>(&id), sizeof(id));
      for (const auto& r : rows) key += r;
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        if (stats_) ++stats_->memo_hits;
        return it->second;
      }
    }
    bool result = Compute(node, rows);
    if (cfg_.memoize) {
      if (memo_.size() >= kMemoCap) memo_.clear();
      memo_.emplace(std::move(key), result);
    }
    return result;
  }

 private:
  CTerm CompileTerm(const Term& t) {
    CTerm out;
    if (t.is_var()) {
      out.slot = Slot(t.name());
      return out;
    }
    const auto& table = w_.structure().function(t.name());
    if (table.arity != static_cast<int>(t.args().size())) {
      throw WellFormednessError("arity mismatch for function " + t.name());
    }
    out.arity = table.arity;
    out.values = &table.values;
    for (const auto& a : t.args()) out.args.push_back(CompileTerm(a));
    return out;
  }

  int TermValue(const CTerm& t, const Row& row) const {
    if (t.slot >= 0) return Value(row[t.slot]);
    std::size_t idx = 0;
    for (const auto& a : t.args) idx = idx * n_ + TermValue(a, row);
    return (*t.values)[idx];
  }

  void Tick() {
    ++nodes_seen_;
    if (stats_) ++stats_->nodes;
    if (nodes_seen_ > cfg_.max_nodes) {
      throw LimitExceeded("evaluation exceeded " + std::to_string(cfg_.max_nodes) +
                          " search nodes");
    }
  }

  void Project(Rows& rows, std::uint64_t mask) const {
    const std::size_t w = width();
    for (auto& r : rows) {
      for (std::size_t i = 0; i < w; ++i) {
        if (!((mask >> i) & 1)) r[i] = kUnset;
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }

  bool Compute(const CNode& node, const Rows& rows) {
    switch (node.kind) {
      case Kind::kDep:
        return Dep(node, rows);
      case Kind::kAnd:
        return Team(node.kids[0], rows) && Team(node.kids[1], rows);
      case Kind::kOr:
        return Or(node, rows);
      case Kind::kExists:
        return node.block >= 0 ? SolveBlock(blocks_[node.block], rows) : Exists(node, rows);
      case Kind::kForall: {
        Rows ext;
        ext.reserve(rows.size() * n_);
        for (const auto& r : rows) {
          for (int a = 0; a < n_; ++a) {
            ext.push_back(r);
            ext.back()[node.bound[0]] = static_cast<char>(a);
          }
        }
        return Team(node.kids[0], std::move(ext));
      }
      case Kind::kQ:
      case Kind::kQd:
        return Quant(node, rows);
      default:
        throw WellFormednessError("non-flat atom of unexpected kind");
    }
  }

  bool Dep(const CNode& node, const Rows& rows) {
    std::unordered_map<std::string, int> seen;
    const std::size_t m = node.terms.size() - 1;
    for (const auto& r : rows) {
      std::string key;
      for (std::size_t i = 0; i < m; ++i) {
        key.push_back(static_cast<char>(TermValue(node.terms[i], r)));
      }
      int v = TermValue(node.terms[m], r);
      auto [it, inserted] = seen.emplace(std::move(key), v);
      if (!inserted && it->second != v) return false;
    }
    return true;
  }

  bool Or(const CNode& node, const Rows& rows) {
    const int lhs = node.kids[0], rhs = node.kids[1];
    if (nodes_[lhs].flat || nodes_[rhs].flat) {
      const bool left_flat = nodes_[lhs].flat;
      const int flat = left_flat ? lhs : rhs;
      const int other = left_flat ? rhs : lhs;
      Rows rest;
      for (const auto& r : rows) {
        Row copy = r;
        if (!Tarski(flat, copy)) rest.push_back(r);
      }
      return Team(other, std::move(rest));
    }
    Rows left, right, open;
    for (const auto& r : rows) {
      bool a = Team(lhs, {r});
      bool b = Team(rhs, {r});
      if (!a && !b) return false;
      if (a && b) {
        open.push_back(r);
      } else {
        (a ? left : right).push_back(r);
      }
    }
    if (!Team(lhs, left) || !Team(rhs, right)) return false;
    return Split(lhs, rhs, open, 0, left, right);
  }

  bool Split(int lhs, int rhs, const Rows& open, std::size_t i, Rows& left,
             Rows& right) {
    if (i == open.size()) return true;
    Tick();
    left.push_back(open[i]);
    if (Team(lhs, left) && Split(lhs, rhs, open, i + 1, left, right)) return true;
    left.pop_back();
    right.push_back(open[i]);
    if (Team(rhs, right) && Split(lhs, rhs, open, i + 1, left, right)) return true;
    right.pop_back();
    return false;
  }

  bool Exists(const CNode& node, const Rows& rows) {
    const int slot = node.bound[0];
    const int child = node.kids[0];
    std::vector<Rows> groups;
    if (node.grouped) {
      std::unordered_map<std::string, std::size_t> index;
      for (const auto& r : rows) {
        std::string key;
        for (const auto& t : node.group) key.push_back(static_cast<char>(TermValue(t, r)));
        auto [it, inserted] = index.emplace(std::move(key), groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(r);
      }
    } else {
      for (const auto& r : rows) groups.push_back({r});
    }
    std::vector<std::vector<Rows>> cands(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (int a = 0; a < n_; ++a) {
        Rows chunk = groups[g];
        for (auto& r : chunk) r[slot] = static_cast<char>(a);
        if (Team(child, chunk)) cands[g].push_back(std::move(chunk));
      }
      if (cands[g].empty()) return false;
    }
    return Search(child, cands);
  }

  bool Quant(const CNode& node, const Rows& rows) {
    const auto& q = node.kind == Kind::kQ ? w_.q() : w_.qd();
    const std::vector<TupleSet>& sets = cfg_.minimal_sets ? q.minimal_sets() : Members(q);
    const int child = node.kids[0];
    const std::size_t k = node.bound.size();
    std::vector<std::vector<Rows>> cands(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (TupleSet s : sets) {
        Rows chunk;
        for (std::size_t idx = 0; idx < q.tuple_count(); ++idx) {
          if (!((s >> idx) & 1)) continue;
          Row r = rows[i];
          std::size_t rest = idx;
          for (std::size_t j = k; j-- > 0;) {
            r[node.bound[j]] = static_cast<char>(rest % n_);
            rest /= n_;
          }
          chunk.push_back(std::move(r));
        }
        if (Team(child, chunk)) cands[i].push_back(std::move(chunk));
      }
      if (cands[i].empty()) return false;
    }
    return Search(child, cands);
  }

  static void Leaves(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Kind::kAnd) {
      Leaves(f.lhs(), out);
      Leaves(f.rhs(), out);
    } else {
      out.push_back(f);
    }
  }

  int CompileBlock(const Formula& f) {
    std::vector<std::string> vars;
    Formula body = f;
    while (body.kind() == Kind::kExists) {
      if (std::find(vars.begin(), vars.end(), body.var()) != vars.end()) return -1;
      vars.push_back(body.var());
      body = body.body();
    }
    std::vector<Formula> leaves;
    Leaves(body, leaves);
    Block b;
    auto last_block_var = [&](const std::vector<Term>& ts) {
      int last = -1;
      for (const auto& t : ts) {
        for (const auto& v : FreeVariables(t)) {
          auto it = std::find(vars.begin(), vars.end(), v);
          if (it != vars.end()) last = std::max(last, static_cast<int>(it - vars.begin()));
        }
      }
      return last;
    };
    for (const auto& v : vars) b.slots.push_back(Slot(v));
    b.governing.assign(vars.size(), -1);
    b.checks.resize(vars.size());
    for (const auto& leaf : leaves) {
      if (leaf.kind() != Kind::kDep) {
        if (leaf.has_dep()) return -1;
        b.matrix.push_back(Compile(leaf));
        continue;
      }
      Block::Atom atom;
      const auto& ts = leaf.terms();
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) atom.args.push_back(CompileTerm(ts[i]));
      atom.value = CompileTerm(ts.back());
      atom.ready = last_block_var(ts);
      const int id = static_cast<int>(b.atoms.size());
      b.atoms.push_back(std::move(atom));
      int governs = -1;
      if (ts.back().is_var()) {
        auto it = std::find(vars.begin(), vars.end(), ts.back().name());
        if (it != vars.end()) governs = static_cast<int>(it - vars.begin());
      }
      if (governs >= 0 && b.governing[governs] < 0 &&
          last_block_var(std::vector<Term>(ts.begin(), ts.end() - 1)) < governs) {
        b.governing[governs] = id;
        continue;
      }
      if (b.atoms[id].ready < 0) {
        b.row_checks.push_back(id);
      } else {
        b.checks[b.atoms[id].ready].push_back(id);
      }
    }
    blocks_.push_back(std::move(b));
    return static_cast<int>(blocks_.size()) - 1;
  }

  // 0 false, 1 true, 2 undetermined by the slots set so far.
  int Partial(int id, const Row& row) {
    const CNode& node = nodes_[id];
    bool known = true;
    for (std::uint64_t m = node.fv; m; m &= m - 1) {
      if (row[__builtin_ctzll(m)] == kUnset) {
        known = false;
        break;
      }
    }
    if (known) {
      Row copy = row;
      return Tarski(id, copy) ? 1 : 0;
    }
    switch (node.kind) {
      case Kind::kNot: {
        int a = Partial(node.kids[0], row);
        return a == 2 ? 2 : 1 - a;
      }
      case Kind::kAnd:
      case Kind::kOr: {
        const int absorbing = node.kind == Kind::kAnd ? 0 : 1;
        int a = Partial(node.kids[0], row);
        if (a == absorbing) return a;
        int b = Partial(node.kids[1], row);
        if (b == absorbing) return b;
        return a == 2 || b == 2 ? 2 : a;
      }
      default:
        return 2;
    }
  }

  // Search state of one block over a fixed team.
  struct BlockRun {
    const Block* block;
    Rows rows;
    std::vector<std::unordered_map<std::string, std::pair<int, Levels>>> tables;
    std::vector<std::pair<int, std::string>> trail;
    std::size_t words = 0;
    int depth = 0;
  };

  bool SolveBlock(const Block& b, const Rows& rows) {
    BlockRun run;
    run.block = &b;
    run.rows = rows;
    run.tables.resize(b.atoms.size());
    run.words = (rows.size() * b.slots.size()) / 64 + 1;
    return !BlockRow(run, 0);
  }

  std::string AtomKey(const Block::Atom& a, const Row& row) const {
    std::string key;
    for (const auto& t : a.args) key.push_back(static_cast<char>(TermValue(t, row)));
    return key;
  }

  // Checks the constraint atoms in `ids` on the current row. Returns the
  // conflict on failure; records new table entries on the trail.
  std::optional<Levels> CheckAtoms(BlockRun& run, const std::vector<int>& ids, const Row& row,
                                   const Levels& reads) {
    for (int id : ids) {
      const auto& atom = run.block->atoms[id];
      std::string key = AtomKey(atom, row);
      const int v = TermValue(atom.value, row);
      auto [it, inserted] = run.tables[id].emplace(key, std::make_pair(v, reads));
      if (inserted) {
        run.trail.emplace_back(id, std::move(key));
      } else if (it->second.first != v) {
        Levels conflict = reads;
        Merge(conflict, it->second.second);
        return conflict;
      }
    }
    return std::nullopt;
  }

  void Undo(BlockRun& run, std::size_t mark) {
    while (run.trail.size() > mark) {
      run.tables[run.trail.back().first].erase(run.trail.back().second);
      run.trail.pop_back();
    }
  }

  // nullopt when rows r.. can be completed; otherwise a set of decisions
  // that already rules every completion out.
  std::optional<Levels> BlockRow(BlockRun& run, std::size_t r) {
    if (r == run.rows.size()) return std::nullopt;
    const Levels none(run.words, 0);
    const std::size_t mark = run.trail.size();
    if (auto c = CheckAtoms(run, run.block->row_checks, run.rows[r], none)) {
      Undo(run, mark);
      return c;
    }
    auto result = BlockVar(run, r, 0, none);
    if (result) Undo(run, mark);
    return result;
  }

  std::optional<Levels> BlockVar(BlockRun& run, std::size_t r, std::size_t i, Levels reads) {
    const Block& b = *run.block;
    Row& row = run.rows[r];
    if (i == b.slots.size()) {
      for (int id : b.matrix) {
        if (Partial(id, row) != 1) return reads;
      }
      return BlockRow(run, r + 1);
    }
    for (std::size_t j = i; j < b.slots.size(); ++j) row[b.slots[j]] = kUnset;
    const int slot = b.slots[i];
    const int g = b.governing[i];
    std::string key;
    if (g >= 0) {
      key = AtomKey(b.atoms[g], row);
      auto it = run.tables[g].find(key);
      if (it != run.tables[g].end()) {
        row[slot] = static_cast<char>(it->second.first);
        Merge(reads, it->second.second);
        return AfterVar(run, r, i, reads);
      }
    }
    const int level = run.depth++;
    Levels conflict(run.words, 0);
    for (int a = 0; a < n_; ++a) {
      Tick();
      if (g >= 0) run.tables[g][key] = {a, Levels(run.words, 0)};
      if (g >= 0) Insert(run.tables[g][key].second, level);
      row[slot] = static_cast<char>(a);
      for (std::size_t j = i + 1; j < b.slots.size(); ++j) row[b.slots[j]] = kUnset;
      Levels next = reads;
      Insert(next, level);
      auto result = AfterVar(run, r, i, next);
      if (!result) {
        --run.depth;
        return std::nullopt;
      }
      if (g >= 0) run.tables[g].erase(key);
      if (!Test(*result, level)) {
        --run.depth;
        return result;
      }
      Erase(*result, level);
      Merge(conflict, *result);
    }
    --run.depth;
    return conflict;
  }

  std::optional<Levels> AfterVar(BlockRun& run, std::size_t r, std::size_t i,
                                 const Levels& reads) {
    const Block& b = *run.block;
    const Row& row = run.rows[r];
    const std::size_t mark = run.trail.size();
    if (auto c = CheckAtoms(run, b.checks[i], row, reads)) {
      Undo(run, mark);
      return c;
    }
    if (i + 1 < b.slots.size()) {
      for (int id : b.matrix) {
        if (Partial(id, row) == 0) {
          Undo(run, mark);
          return reads;
        }
      }
    }
    auto result = BlockVar(run, r, i + 1, reads);
    if (result) Undo(run, mark);
    return result;
  }

  const std::vector<TupleSet>& Members(const QuantifierInterpretation& q) {
    auto it = members_.find(&q);
    if (it == members_.end()) it = members_.emplace(&q, q.AllMembers()).first;
    return it->second;
  }

  // Picks one candidate chunk per unit so that the union satisfies `child`,
  // checking every partial union on the way down.
  bool Search(int child, std::vector<std::vector<Rows>>& cands) {
    if (nodes_[child].flat) return true;
    for (auto& c : cands) {
      for (auto& chunk : c) Project(chunk, nodes_[child].fv);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::vector<std::size_t> order(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cands[a].size() < cands[b].size();
    });
    Rows acc;
    return Descend(child, cands, order, 0, acc);
  }

  bool Descend(int child, const std::vector<std::vector<Rows>>& cands,
               const std::vector<std::size_t>& order, std::size_t depth, Rows& acc) {
    if (depth == order.size()) return true;
    const auto& options = cands[order[depth]];
    const std::size_t mark = acc.size();
    for (const auto& chunk : options) {
      Tick();
      acc.insert(acc.end(), chunk.begin(), chunk.end());
      if ((options.size() == 1 && depth + 1 < order.size()) || Team(child, acc)) {
        if (Descend(child, cands, order, depth + 1, acc)) return true;
      }
      acc.resize(mark);
    }
    return false;
  }

  const WeakModel& w_;
  EvalConfig cfg_;
  EvalStats* stats_;
  const int n_;
  std::map<std::string, int> slots_;
  std::vector<CNode> nodes_;
  std::vector<Block> blocks_;
  std::unordered_map<std::string, bool> memo_;
  std::map<const QuantifierInterpretation*, std::vector<TupleSet>> members_;
  std::size_t nodes_seen_ = 0;
};

void CheckBound(const Formula& f, const VarSet& domain) {
  for (const auto& v : FreeVariables(f)) {
    if (!domain.count(v)) throw WellFormednessError("unbound variable " + v);
  }
}

}  // namespace

bool EvalTarski(const WeakModel& w, const Assignment& s, const Formula& f) {
  if (f.has_dep()) {
    throw WellFormednessError("Tarskian evaluation needs a flat formula");
  }
  VarSet domain;
  for (const auto& [v, a] : s) {
    if (a < 0 || a >= w.size()) throw WellFormednessError("value out of range for " + v);
    domain.insert(v);
  }
  CheckBound(f, domain);
  Engine engine(w, EvalConfig{}, nullptr);
  for (const auto& [v, a] : s) engine.Slot(v);
  int root = engine.Compile(f);
  Row row(engine.width(), kUnset);
  for (const auto& [v, a] : s) row[engine.SlotOf(v)] = static_cast<char>(a);
  return engine.Tarski(root, row);
}

bool EvalTeam(const WeakModel& w, const Team& x, const Formula& f,
              const EvalConfig& cfg, EvalStats* stats) {
  if (cfg.max_nodes == 0) throw WellFormednessError("evaluation limit must be positive");
  CheckBound(f, x.domain());
  Engine engine(w, cfg, stats);
  for (const auto& v : x.vars()) engine.Slot(v);
  int root = engine.Compile(f);
  Rows rows;
  rows.reserve(x.size());
  for (const auto& r : x.rows()) {
    Row row(engine.width(), kUnset);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] < 0 || r[i] >= w.size()) {
        throw WellFormednessError("team value out of range");
      }
      row[engine.SlotOf(x.vars()[i])] = static_cast<char>(r[i]);
    }
    rows.push_back(std::move(row));
  }
  return engine.Team(root, std::move(rows));
}

bool CheckSentence(const WeakModel& w, const Formula& sentence, const EvalConfig& cfg,
                   EvalStats* stats) {
  if (!FreeVariables(sentence).empty()) {
    throw ShapeError("not a sentence: free variable " + *FreeVariables(sentence).begin());
  }
  return EvalTeam(w, Team::Unit(), sentence, cfg, stats);
}

}  // namespace teamlogic
