#include "teamlogic/io.h"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "teamlogic/error.h"

namespace teamlogic {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Line {
  std::string text;
  std::size_t offset;
};

std::vector<Line> Lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(offset, end - offset);
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = Trim(raw);
    if (!t.empty()) out.push_back({t, offset});
    offset = end + 1;
  }
  return out;
}

// Items separated by blanks or ';', keeping parenthesized and braced groups
// together.
std::vector<std::string> Items(const std::string& s, std::size_t offset) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') {
      if (--depth < 0) throw ParseError("unbalanced '" + std::string(1, c) + "'", offset);
    }
    if (depth == 0 && (c == ';' || std::isspace(static_cast<unsigned char>(c)))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      continue;
    }
    if (depth > 0 && std::isspace(static_cast<unsigned char>(c))) continue;
    cur += c;
  }
  if (depth != 0) throw ParseError("unbalanced parentheses", offset);
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int Number(const std::string& s, std::size_t offset) {
  if (s.empty() || s.size() > 9) throw ParseError("expected a number, found '" + s + "'", offset);
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("expected a number, found '" + s + "'", offset);
    }
  }
  return std::stoi(s);
}

void CheckElement(int v, int n) {
  if (v >= n) {
    throw WellFormednessError("element " + std::to_string(v) + " outside universe of size " +
                              std::to_string(n));
  }
}

// "(a,b)" or, for arity 1, "a"; "()" for arity 0.
Tuple ParseTuple(const std::string& s, int arity, int n, std::size_t offset) {
  Tuple t;
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw ParseError("bad tuple '" + s + "'", offset);
    std::string inner = s.substr(1, s.size() - 2);
    if (!inner.empty()) {
      std::stringstream in(inner);
      std::string part;
      while (std::getline(in, part, ',')) t.push_back(Number(Trim(part), offset));
    }
  } else {
    t.push_back(Number(s, offset));
  }
  if (static_cast<int>(t.size()) != arity) {
    throw WellFormednessError("tuple '" + s + "' does not have arity " + std::to_string(arity));
  }
  for (int v : t) CheckElement(v, n);
  return t;
}

// "NAME/k" after the keyword; returns the name and arity.
std::pair<std::string, int> Declaration(const std::string& s, std::size_t offset) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) throw ParseError("expected NAME/arity in '" + s + "'", offset);
  std::string name = Trim(s.substr(0, slash));
  if (name.empty()) throw ParseError("missing symbol name", offset);
  return {name, Number(Trim(s.substr(slash + 1)), offset)};
}

bool StartsWithWord(const std::string& line, const std::string& word) {
  return line.rfind(word, 0) == 0 &&
         (line.size() == word.size() || std::isspace(static_cast<unsigned char>(line[word.size()])));
}

}  // namespace

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string StripComments(std::string_view text) {
  std::string out;
  for (const auto& l : Lines(text)) {
    out += l.text;
    out += '\n';
  }
  return out;
}

QuantifierInterpretation ParseQuantifier(std::string_view text, int n, int arity) {
  std::string s = Trim(text);
  if (s.empty()) throw ParseError("empty quantifier", 0);
  if (std::isalpha(static_cast<unsigned char>(s[0]))) {
    return QuantifierInterpretation::Builtin(s, n, arity);
  }
  if (Power(n, arity) > 64) throw WellFormednessError("quantifier domain too large");
  std::vector<TupleSet> generators;
  for (const auto& item : Items(s, 0)) {
    if (item.size() < 2 || item.front() != '{' || item.back() != '}') {
      throw ParseError("expected a set '{...}', found '" + item + "'", 0);
    }
    std::string inner = item.substr(1, item.size() - 2);
    TupleSet set = 0;
    // Split on commas outside parentheses.
    std::string cur;
    int depth = 0;
    std::vector<std::string> parts;
    for (char c : inner) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    for (const auto& p : parts) {
      Tuple t = ParseTuple(Trim(p), arity, n, 0);
      set |= TupleSet{1} << TupleIndex(t, n);
    }
    generators.push_back(set);
  }
  auto q = QuantifierInterpretation::Minimized(n, arity, generators);
  auto problems = q.Validate();
  if (!problems.empty()) throw WellFormednessError("quantifier: " + problems.front());
  return q;
}

StructureFile ParseStructureFile(std::string_view text) {
  auto lines = Lines(text);
  if (lines.empty() || !StartsWithWord(lines[0].text, "universe")) {
    throw ParseError("structure file must start with 'universe <n>'",
                     lines.empty() ? 0 : lines[0].offset);
  }
  int n = Number(Trim(lines[0].text.substr(8)), lines[0].offset);
  if (n < 1) throw WellFormednessError("universe must be non-empty");
  StructureFile out{Structure(n), Signature(), std::nullopt};
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [line, offset] = lines[i];
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected ':' in '" + line + "'", offset);
    std::string head = Trim(line.substr(0, colon));
    std::string body = line.substr(colon + 1);
    std::string kind = head.substr(0, head.find(' '));
    if (kind != "rel" && kind != "fun" && kind != "quant") {
      throw ParseError("unknown declaration '" + kind + "'", offset);
    }
    auto [name, arity] = Declaration(Trim(head.substr(kind.size())), offset);
    if (!seen.insert(name).second) throw WellFormednessError("symbol " + name + " declared twice");
    if (kind == "quant") {
      if (name != "Q") throw WellFormednessError("the quantifier is named Q");
      out.quantifier = ParseQuantifier(body, n, arity);
    } else if (kind == "rel") {
      out.signature.AddRelation(name, arity);
      std::vector<Tuple> tuples;
      for (const auto& item : Items(body, offset)) tuples.push_back(ParseTuple(item, arity, n, offset));
      out.structure.SetRelation(name, arity, tuples);
    } else {
      out.signature.AddFunction(name, arity);
      std::vector<int> values(Power(n, arity), -1);
      for (const auto& item : Items(body, offset)) {
        std::size_t arrow = item.find("->");
        std::string lhs = arrow == std::string::npos ? "" : item.substr(0, arrow);
        std::string rhs = arrow == std::string::npos ? item : item.substr(arrow + 2);
        Tuple t;
        if (arity > 0) {
          if (arrow == std::string::npos) throw ParseError("expected 'args->value'", offset);
          t = ParseTuple(lhs, arity, n, offset);
        } else if (!lhs.empty() && lhs != "()") {
          throw ParseError("constant " + name + " takes no arguments", offset);
        }
        int v = Number(rhs, offset);
        CheckElement(v, n);
        int& slot = values[TupleIndex(t, n)];
        if (slot >= 0 && slot != v) throw WellFormednessError("function " + name + " given two values");
        slot = v;
      }
      for (int v : values) {
        if (v < 0) throw WellFormednessError("function " + name + " is not total");
      }
      out.structure.SetFunction(name, arity, values);
    }
  }
  return out;
}

Team ParseTeamFile(std::string_view text, int n) {
  auto lines = Lines(text);
  if (lines.empty() || !StartsWithWord(lines[0].text, "vars")) {
    throw ParseError("team file must start with 'vars'", lines.empty() ? 0 : lines[0].offset);
  }
  std::vector<std::string> vars;
  {
    std::istringstream in(lines[0].text.substr(4));
    std::string v;
    while (in >> v) vars.push_back(v);
  }
  std::set<std::string> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size()) throw WellFormednessError("repeated team variable");
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [line, offset] = lines[i];
    std::vector<int> row;
    if (line != "()") {
      std::istringstream in(line);
      std::string v;
      while (in >> v) {
        row.push_back(Number(v, offset));
        CheckElement(row.back(), n);
      }
    }
    if (row.size() != vars.size()) {
      throw WellFormednessError("team row has " + std::to_string(row.size()) + " values, expected " +
                                std::to_string(vars.size()));
    }
    rows.push_back(std::move(row));
  }
  return Team(std::move(vars), std::move(rows));
}

FormulaFile ParseFormulaFile(std::string_view text, const Signature& base,
                             const ParseOptions& options) {
  Signature sig = base;
  std::string body;
  bool in_body = false;
  for (const auto& [line, offset] : Lines(text)) {
    if (!in_body && (StartsWithWord(line, "rel") || StartsWithWord(line, "fun"))) {
      sig = sig.Merged(Signature::Parse(line));
      continue;
    }
    in_body = true;
    body += line;
    body += '\n';
  }
  if (body.empty()) throw ParseError("no formula", text.size());
  return {sig, ParseFormula(body, sig, options)};
}

Signature ParseSignatureFile(std::string_view text) {
  return Signature::Parse(StripComments(text));
}

}  // namespace teamlogic
