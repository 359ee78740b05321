#include "teamlogic/derivation.h"

#include <cctype>
#include <set>
#include <sstream>

namespace teamlogic {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on commas that are not nested inside parentheses or braces.
std::vector<std::string> SplitTopLevel(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(Trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  std::string last = Trim(s.substr(start));
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

bool IsLabel(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') {
      return false;
    }
  }
  return true;
}

// Finds `keyword` as a whole word (followed by ':') outside parentheses.
std::size_t FindKeyword(std::string_view s, std::string_view keyword) {
  int depth = 0;
  for (std::size_t i = 0; i + keyword.size() < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth != 0) continue;
    if (s.substr(i, keyword.size()) != keyword) continue;
    if (i > 0 && !std::isspace(static_cast<unsigned char>(s[i - 1]))) continue;
    std::size_t j = i + keyword.size();
    while (j < s.size() && s[j] == ' ') ++j;
    if (j < s.size() && s[j] == ':') return i;
  }
  return std::string_view::npos;
}

}  // namespace

int Derivation::Assume(const std::string& label, const Formula& f) {
  ProofLine line;
  line.number = lines_.empty() ? 1 : lines_.back().number + 1;
  line.formula = f;
  line.is_assumption = true;
  line.label = label;
  Append(std::move(line));
  return lines_.back().number;
}

int Derivation::Apply(const std::string& rule, const Formula& conclusion,
                      std::vector<int> premises, Params params,
                      std::vector<std::string> discharges) {
  ProofLine line;
  line.number = lines_.empty() ? 1 : lines_.back().number + 1;
  line.formula = conclusion;
  line.rule = rule;
  line.premises = std::move(premises);
  line.params = std::move(params);
  line.discharges = std::move(discharges);
  Append(std::move(line));
  return lines_.back().number;
}

void Derivation::Append(ProofLine line) {
  if (!lines_.empty() && line.number <= lines_.back().number) {
    throw WellFormednessError("proof line numbers must increase (line " +
                              std::to_string(line.number) + ")");
  }
  index_[line.number] = lines_.size();
  lines_.push_back(std::move(line));
}

int Derivation::root() const {
  if (lines_.empty()) throw WellFormednessError("empty derivation");
  return lines_.back().number;
}

const Formula& Derivation::conclusion() const {
  if (lines_.empty()) throw WellFormednessError("empty derivation");
  return lines_.back().formula;
}

const ProofLine* Derivation::Find(int number) const {
  auto it = index_.find(number);
  return it == index_.end() ? nullptr : &lines_[it->second];
}

const ProofLine& Derivation::line(int number) const {
  const ProofLine* l = Find(number);
  if (!l) throw WellFormednessError("no proof line " + std::to_string(number));
  return *l;
}

std::string Derivation::FreshLabel(const std::string& base) {
  std::set<std::string> used;
  for (const auto& l : lines_) {
    if (l.is_assumption) used.insert(l.label);
  }
  std::string out;
  do {
    out = base + std::to_string(++label_counter_);
  } while (used.count(out));
  return out;
}

Derivation Derivation::Parse(std::string_view text, const Signature& sig,
                             const ParseOptions& options) {
  Derivation d;
  std::size_t offset = 0;
  int source_line = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(offset, end - offset);
    const std::size_t line_start = offset;
    offset = end + 1;
    ++source_line;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = Trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto fail = [&](const std::string& msg) {
      throw ParseError("proof line " + std::to_string(source_line) + ": " + msg,
                       line_start);
    };
    std::size_t dot = line.find('.');
    if (dot == std::string::npos || dot == 0) fail("expected '<n>.'");
    ProofLine pl;
    pl.source_line = source_line;
    for (std::size_t i = 0; i < dot; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(line[i]))) fail("bad line number");
    }
    pl.number = std::stoi(line.substr(0, dot));
    std::string rest = Trim(line.substr(dot + 1));
    auto parse_formula = [&](const std::string& s) {
      try {
        return ParseFormula(s, sig, options);
      } catch (const ParseError& e) {
        fail(e.what());
      } catch (const WellFormednessError& e) {
        fail(e.what());
      }
      return Formula::False();
    };
    if (rest.rfind("assume", 0) == 0 && rest.size() > 6 &&
        std::isspace(static_cast<unsigned char>(rest[6]))) {
      std::string body = Trim(rest.substr(6));
      std::size_t colon = body.find(':');
      if (colon == std::string::npos) fail("expected 'assume <label>: <formula>'");
      pl.is_assumption = true;
      pl.label = Trim(body.substr(0, colon));
      if (!IsLabel(pl.label)) fail("bad assumption label '" + pl.label + "'");
      pl.formula = parse_formula(body.substr(colon + 1));
    } else {
      std::size_t semi = rest.find(';');
      if (semi == std::string::npos) fail("expected '; <rule>'");
      pl.formula = parse_formula(rest.substr(0, semi));
      std::string just = Trim(rest.substr(semi + 1));
      std::size_t discharge_at = FindKeyword(just, "discharge");
      if (discharge_at != std::string::npos) {
        std::string labels = just.substr(just.find(':', discharge_at) + 1);
        for (const auto& l : SplitTopLevel(labels)) {
          if (!IsLabel(l)) fail("bad discharge label '" + l + "'");
          pl.discharges.push_back(l);
        }
        just = Trim(just.substr(0, discharge_at));
      }
      std::size_t params_at = FindKeyword(just, "params");
      if (params_at != std::string::npos) {
        std::string items = just.substr(just.find(':', params_at) + 1);
        for (const auto& item : SplitTopLevel(items)) {
          std::size_t eq = item.find('=');
          if (eq == std::string::npos || eq == 0) fail("bad parameter '" + item + "'");
          std::string key = Trim(item.substr(0, eq));
          std::string value = Trim(item.substr(eq + 1));
          if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
          }
          pl.params[key] = value;
        }
        just = Trim(just.substr(0, params_at));
      }
      std::size_t bracket = just.find('[');
      if (bracket != std::string::npos) {
        std::size_t close = just.find(']', bracket);
        if (close == std::string::npos) fail("unterminated premise list");
        if (!Trim(just.substr(close + 1)).empty()) fail("unexpected text after premises");
        for (const auto& p : SplitTopLevel(just.substr(bracket + 1, close - bracket - 1))) {
          if (p.empty()) continue;
          for (char c : p) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
              fail("bad premise reference '" + p + "'");
            }
          }
          pl.premises.push_back(std::stoi(p));
        }
        just = Trim(just.substr(0, bracket));
      }
      if (just.empty()) fail("missing rule name");
      for (char c : just) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
          fail("bad rule name '" + just + "'");
        }
      }
      pl.rule = just;
    }
    try {
      d.Append(std::move(pl));
    } catch (const WellFormednessError& e) {
      fail(e.what());
    }
    if (end == text.size()) break;
  }
  return d;
}

std::string Derivation::ToScript() const {
  std::ostringstream out;
  for (const auto& l : lines_) {
    out << l.number << ". ";
    if (l.is_assumption) {
      out << "assume " << l.label << ": " << Render(l.formula) << "\n";
      continue;
    }
    out << Render(l.formula) << " ; " << l.rule;
    if (!l.premises.empty()) {
      out << " [";
      for (std::size_t i = 0; i < l.premises.size(); ++i) {
        if (i) out << ", ";
        out << l.premises[i];
      }
      out << "]";
    }
    if (!l.params.empty()) {
      out << " params: ";
      bool first = true;
      for (const auto& [k, v] : l.params) {
        if (!first) out << ", ";
        first = false;
        out << k << "=" << v;
      }
    }
    if (!l.discharges.empty()) {
      out << " discharge: ";
      for (std::size_t i = 0; i < l.discharges.size(); ++i) {
        if (i) out << ", ";
        out << l.discharges[i];
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace teamlogic
