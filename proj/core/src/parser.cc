// Recursive-descent parser and canonical renderer for the ASCII formula
// grammar:
//
//   formula := disj [ '->' formula ]
//   disj    := conj { '|' conj }
//   conj    := unary { '&' unary }
//   unary   := '!' unary | binder | atom | '(' formula ')'
//   binder  := ('A' | 'E') var formula
//            | ('Q' | 'Qd') (var | '(' var {',' var} ')') formula
//   atom    := 'false' | 'dep' '(' terms ')' | REL [ '(' terms ')' ]
//            | term '=' term | term '!=' term
//
// Binder bodies extend as far right as possible.

#include <cctype>

#include "teamlogic/syntax.h"

namespace teamlogic {

namespace {

enum class Tok {
  kIdent,
  kLParen,
  kRParen,
  kComma,
  kAnd,
  kOr,
  kNot,
  kArrow,
  kEq,
  kNeq,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (IsIdentStart(c)) {
      while (i < text.size() && IsIdentChar(text[i])) ++i;
      out.push_back({Tok::kIdent, std::string(text.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::kLParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::kRParen, ")", start}); ++i; continue;
      case ',': out.push_back({Tok::kComma, ",", start}); ++i; continue;
      case '&': out.push_back({Tok::kAnd, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::kOr, "|", start}); ++i; continue;
      case '=': out.push_back({Tok::kEq, "=", start}); ++i; continue;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back({Tok::kNeq, "!=", start});
          i += 2;
        } else {
          out.push_back({Tok::kNot, "!", start});
          ++i;
        }
        continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::kArrow, "->", start});
          i += 2;
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::kEnd, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, const ParseOptions& opts)
      : tokens_(Lex(text)), sig_(sig), opts_(opts) {}

  Formula ParseTop() {
    Formula f = ParseFormula();
    Expect(Tok::kEnd, "end of input");
    return f;
  }

  Term ParseTopTerm() {
    Term t = ParseTermExpr();
    Expect(Tok::kEnd, "end of input");
    return t;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Advance() { return tokens_[pos_++]; }
  bool Accept(Tok kind) {
    if (Peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  const Token& Expect(Tok kind, const char* what) {
    if (Peek().kind != kind) {
      throw ParseError(std::string("expected ") + what + ", found '" +
                           (Peek().kind == Tok::kEnd ? "<end>" : Peek().text) + "'",
                       Peek().pos);
    }
    return Advance();
  }

  Formula Wrap(std::size_t pos, auto&& make) {
    try {
      return make();
    } catch (const WellFormednessError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  Formula ParseFormula() {
    std::size_t pos = Peek().pos;
    Formula lhs = ParseDisj();
    if (Accept(Tok::kArrow)) {
      Formula rhs = ParseFormula();
      return Wrap(pos, [&] { return Formula::Implies(lhs, rhs); });
    }
    return lhs;
  }

  Formula ParseDisj() {
    Formula f = ParseConj();
    while (Accept(Tok::kOr)) f = Formula::Or(f, ParseConj());
    return f;
  }

  Formula ParseConj() {
    Formula f = ParseUnary();
    while (Accept(Tok::kAnd)) f = Formula::And(f, ParseUnary());
    return f;
  }

  bool AtBinder() const {
    if (Peek().kind != Tok::kIdent) return false;
    const std::string& w = Peek().text;
    return w == "A" || w == "E" || w == "Q" || w == "Qd";
  }

  Formula ParseUnary() {
    std::size_t pos = Peek().pos;
    if (Accept(Tok::kNot)) {
      Formula body = ParseUnary();
      return Wrap(pos, [&] { return Formula::Not(body); });
    }
    if (AtBinder()) return ParseBinder();
    if (Peek().kind == Tok::kLParen) {
      Advance();
      Formula f = ParseFormula();
      Expect(Tok::kRParen, "')'");
      return f;
    }
    return ParseAtom();
  }

  std::string ParseVariable() {
    const Token& t = Expect(Tok::kIdent, "variable");
    if (IsReservedWord(t.text)) {
      throw ParseError("reserved word '" + t.text + "' used as variable", t.pos);
    }
    if (sig_.HasSymbol(t.text)) {
      throw ParseError("symbol '" + t.text + "' used as variable", t.pos);
    }
    return t.text;
  }

  Formula ParseBinder() {
    const Token kw = Advance();
    Kind kind = kw.text == "A"   ? Kind::kForall
                : kw.text == "E" ? Kind::kExists
                : kw.text == "Q" ? Kind::kQ
                                 : Kind::kQd;
    std::vector<std::string> vars;
    if ((kind == Kind::kQ || kind == Kind::kQd) && Accept(Tok::kLParen)) {
      vars.push_back(ParseVariable());
      while (Accept(Tok::kComma)) vars.push_back(ParseVariable());
      Expect(Tok::kRParen, "')'");
    } else {
      vars.push_back(ParseVariable());
    }
    if ((kind == Kind::kQ || kind == Kind::kQd) &&
        static_cast<int>(vars.size()) != opts_.quant_arity) {
      throw ParseError("quantifier binds " + std::to_string(vars.size()) +
                           " variables, expected " +
                           std::to_string(opts_.quant_arity),
                       kw.pos);
    }
    Formula body = ParseFormula();
    return Wrap(kw.pos, [&] { return Formula::Bind(kind, vars, body); });
  }

  std::vector<Term> ParseTermList() {
    std::vector<Term> out;
    Expect(Tok::kLParen, "'('");
    if (Accept(Tok::kRParen)) return out;
    out.push_back(ParseTermExpr());
    while (Accept(Tok::kComma)) out.push_back(ParseTermExpr());
    Expect(Tok::kRParen, "')'");
    return out;
  }

  Term ParseTermExpr() {
    const Token t = Expect(Tok::kIdent, "term");
    if (IsReservedWord(t.text)) {
      throw ParseError("reserved word '" + t.text + "' in term position", t.pos);
    }
    if (sig_.HasFunction(t.text)) {
      std::vector<Term> args;
      if (Peek().kind == Tok::kLParen) args = ParseTermList();
      if (static_cast<int>(args.size()) != sig_.FunctionArity(t.text)) {
        throw ParseError("arity mismatch for function " + t.text, t.pos);
      }
      return Term::App(t.text, std::move(args));
    }
    if (sig_.HasRelation(t.text)) {
      throw ParseError("relation '" + t.text + "' used as a term", t.pos);
    }
    if (Peek().kind == Tok::kLParen) {
      throw ParseError("undeclared symbol '" + t.text + "'", t.pos);
    }
    return Term::Var(t.text);
  }

  Formula ParseAtom() {
    const Token& t = Peek();
    if (t.kind != Tok::kIdent) {
      throw ParseError("expected formula, found '" +
                           (t.kind == Tok::kEnd ? std::string("<end>") : t.text) + "'",
                       t.pos);
    }
    if (t.text == "false") {
      Advance();
      return Formula::False();
    }
    if (t.text == "dep") {
      std::size_t pos = Advance().pos;
      std::vector<Term> terms = ParseTermList();
      return Wrap(pos, [&] { return Formula::Dep(terms); });
    }
    if (sig_.HasRelation(t.text)) {
      const Token name = Advance();
      std::vector<Term> args;
      if (Peek().kind == Tok::kLParen) args = ParseTermList();
      if (static_cast<int>(args.size()) != sig_.RelationArity(name.text)) {
        throw ParseError("arity mismatch for relation " + name.text, name.pos);
      }
      return Formula::Relation(name.text, std::move(args));
    }
    Term lhs = ParseTermExpr();
    if (Accept(Tok::kEq)) return Formula::Equals(lhs, ParseTermExpr());
    if (Accept(Tok::kNeq)) {
      return Formula::Not(Formula::Equals(lhs, ParseTermExpr()));
    }
    throw ParseError("expected '=' after term", Peek().pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  ParseOptions opts_;
};

// ----------------------------------------------------------------- Render

void RenderTerm(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_var() || t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    RenderTerm(t.args()[i], out);
  }
  out += ')';
}

void RenderTerms(const std::vector<Term>& terms, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    RenderTerm(terms[i], out);
  }
  out += ')';
}

void RenderFormula(const Formula& f, std::string& out);

void RenderParen(const Formula& f, bool paren, std::string& out) {
  if (paren) out += '(';
  RenderFormula(f, out);
  if (paren) out += ')';
}

void RenderFormula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::kRelation:
      out += f.symbol();
      RenderTerms(f.terms(), out);
      return;
    case Kind::kEquals:
      RenderTerm(f.terms()[0], out);
      out += " = ";
      RenderTerm(f.terms()[1], out);
      return;
    case Kind::kFalse:
      out += "false";
      return;
    case Kind::kDep:
      out += "dep";
      RenderTerms(f.terms(), out);
      return;
    case Kind::kNot: {
      const Formula& b = f.body();
      if (b.kind() == Kind::kEquals) {
        RenderTerm(b.terms()[0], out);
        out += " != ";
        RenderTerm(b.terms()[1], out);
        return;
      }
      out += '!';
      bool atomic = b.kind() == Kind::kRelation || b.kind() == Kind::kFalse ||
                    b.kind() == Kind::kNot;
      RenderParen(b, !atomic, out);
      return;
    }
    case Kind::kAnd:
      RenderParen(f.lhs(), f.lhs().kind() == Kind::kOr || f.lhs().is_binder(), out);
      out += " & ";
      RenderParen(f.rhs(),
                  f.rhs().kind() == Kind::kAnd || f.rhs().kind() == Kind::kOr ||
                      f.rhs().is_binder(),
                  out);
      return;
    case Kind::kOr:
      RenderParen(f.lhs(), f.lhs().is_binder(), out);
      out += " | ";
      RenderParen(f.rhs(), f.rhs().kind() == Kind::kOr || f.rhs().is_binder(),
                  out);
      return;
    default:
      out += KindName(f.kind());
      out += ' ';
      if ((f.kind() == Kind::kQ || f.kind() == Kind::kQd) && f.vars().size() > 1) {
        out += '(';
        for (std::size_t i = 0; i < f.vars().size(); ++i) {
          if (i) out += ',';
          out += f.vars()[i];
        }
        out += ')';
      } else {
        out += f.var();
      }
      out += ' ';
      RenderFormula(f.body(), out);
      return;
  }
}

}  // namespace

Formula ParseFormula(std::string_view text, const Signature& sig,
                     const ParseOptions& options) {
  return Parser(text, sig, options).ParseTop();
}

Term ParseTerm(std::string_view text, const Signature& sig) {
  return Parser(text, sig, {}).ParseTopTerm();
}

std::string Render(const Term& t) {
  std::string out;
  RenderTerm(t, out);
  return out;
}

std::string Render(const Formula& f) {
  std::string out;
  RenderFormula(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& out, const Term& t) { return out << Render(t); }

std::ostream& operator<<(std::ostream& out, const Formula& f) { return out << Render(f); }

}  // namespace teamlogic
