#include "erank/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

#include "erank/errors.hpp"

namespace erank {

namespace {

enum class Tok {
  end,
  ident,    // variable name, or E / T / F
  constant, // c:name
  integer,
  lparen,
  rparen,
  plus,
  minus,
  star,
  caret,
  eq,
  neq,
  lt,
  amp,
  bar,
  bang,
  dot,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto is_ident_char = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    auto single = [&](Tok k) {
      tok.kind = k;
      tok.text = std::string(1, c);
      advance(1);
    };
    if (c == 'c' && i + 1 < src.size() && src[i + 1] == ':') {
      std::size_t j = i + 2;
      while (j < src.size() && is_ident_char(src[j]))
        ++j;
      tok.kind = Tok::constant;
      tok.text = std::string(src.substr(i + 2, j - i - 2));
      if (!is_identifier(tok.text))
        throw ParseError("expected a constant name after 'c:'", line, col);
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j]))
        ++j;
      tok.kind = Tok::ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      tok.kind = Tok::integer;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '!' && i + 1 < src.size() && src[i + 1] == '=') {
      tok.kind = Tok::neq;
      tok.text = "!=";
      advance(2);
    } else {
      switch (c) {
      case '(': single(Tok::lparen); break;
      case ')': single(Tok::rparen); break;
      case '+': single(Tok::plus); break;
      case '-': single(Tok::minus); break;
      case '*': single(Tok::star); break;
      case '^': single(Tok::caret); break;
      case '=': single(Tok::eq); break;
      case '<': single(Tok::lt); break;
      case '&': single(Tok::amp); break;
      case '|': single(Tok::bar); break;
      case '!': single(Tok::bang); break;
      case '.': single(Tok::dot); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) { return s == "E" || s == "T" || s == "F"; }

class Parser {
public:
  Parser(std::vector<Token> tokens, ParseOptions options) : toks_(std::move(tokens)), options_(options) {}

  Formula formula() {
    if (peek().kind == Tok::ident && peek().text == "E") {
      next();
      std::vector<std::string> vars;
      while (peek().kind == Tok::ident && !is_keyword(peek().text))
        vars.push_back(next().text);
      if (vars.empty())
        fail("expected at least one variable after 'E'");
      for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (vars[i] == vars[j])
            fail("variable '" + vars[i] + "' bound twice in one quantifier block");
      expect(Tok::dot, "'.'");
      return Formula::exists(std::move(vars), formula());
    }
    return disjunction();
  }

  Term term() {
    Term acc = product();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool plus = next().kind == Tok::plus;
      Term rhs = product();
      acc = plus ? Term::sum(acc, rhs) : Term::difference(acc, rhs);
    }
    return acc;
  }

  void expect_end() {
    if (peek().kind != Tok::end)
      fail("unexpected '" + peek().text + "'");
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(std::string("expected ") + what);
    next();
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::bar) {
      next();
      acc = Formula::disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = negation();
    while (peek().kind == Tok::amp) {
      next();
      acc = Formula::conj(acc, negation());
    }
    return acc;
  }

  Formula negation() {
    const Token& t = peek();
    if (t.kind == Tok::bang) {
      next();
      return Formula::negation(negation());
    }
    if (t.kind == Tok::ident && t.text == "T") {
      next();
      return Formula::truth();
    }
    if (t.kind == Tok::ident && t.text == "F") {
      next();
      return Formula::falsity();
    }
    if (t.kind == Tok::ident && t.text == "E")
      return formula();
    if (t.kind == Tok::lparen) {
      // Either a parenthesised formula or an atom whose left term starts
      // with a parenthesis; try the atom first and backtrack.
      std::size_t mark = pos_;
      std::optional<ParseError> atom_error;
      try {
        return atom();
      } catch (const ParseError& e) {
        atom_error = e;
      }
      std::size_t atom_reach = furthest_;
      pos_ = mark;
      try {
        next();
        Formula inner = formula();
        expect(Tok::rparen, "')'");
        return inner;
      } catch (const ParseError&) {
        if (atom_reach >= furthest_)
          throw *atom_error;
        throw;
      }
    }
    return atom();
  }

  Formula atom() {
    Term lhs = term();
    Tok rel = peek().kind;
    note_progress();
    if (rel != Tok::eq && rel != Tok::neq && rel != Tok::lt)
      fail("expected '=', '!=' or '<'");
    if (rel == Tok::lt && !options_.order_enabled)
      fail("'<' is only available when the order is enabled");
    next();
    Term rhs = term();
    note_progress();
    switch (rel) {
    case Tok::eq:
      return Formula::equal(lhs, rhs);
    case Tok::neq:
      return Formula::not_equal(lhs, rhs);
    default:
      return Formula::less(lhs, rhs);
    }
  }

  Term product() {
    Term acc = power();
    while (peek().kind == Tok::star) {
      next();
      acc = Term::product(acc, power());
    }
    return acc;
  }

  Term power() {
    Term base = factor();
    if (peek().kind == Tok::caret) {
      next();
      if (peek().kind != Tok::integer)
        fail("exponent must be a nonnegative integer literal");
      const std::string& digits = next().text;
      std::uint64_t e = 0;
      try {
        std::size_t used = 0;
        e = std::stoull(digits, &used);
      } catch (const std::exception&) {
        fail("exponent too large");
      }
      base = Term::power(base, e);
    }
    return base;
  }

  Term factor() {
    note_progress();
    const Token& t = peek();
    switch (t.kind) {
    case Tok::ident:
      if (is_keyword(t.text))
        fail("'" + t.text + "' is reserved");
      return Term::var(next().text);
    case Tok::constant:
      return Term::constant(next().text);
    case Tok::integer:
      return Term::literal(BigInt(next().text));
    case Tok::minus: {
      next();
      if (peek().kind == Tok::integer)
        return Term::literal(-BigInt(next().text));
      return Term::difference(Term::literal(0), power());
    }
    case Tok::lparen: {
      next();
      Term inner = term();
      expect(Tok::rparen, "')'");
      return inner;
    }
    default:
      fail(t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  void note_progress() {
    if (pos_ > furthest_)
      furthest_ = pos_;
  }

  std::vector<Token> toks_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::size_t furthest_ = 0;
};

// Binding strength for term printing: sum/difference 1, product 2, power 3, leaf 4.
int term_level(const Term& t) {
  switch (t.kind()) {
  case Term::Kind::sum:
  case Term::Kind::difference:
    return 1;
  case Term::Kind::product:
    return 2;
  case Term::Kind::power:
    return 3;
  case Term::Kind::literal:
    return t.value() < 0 ? 0 : 4;
  default:
    return 4;
  }
}

void print_term(std::ostream& os, const Term& t, int min_level) {
  bool parens = term_level(t) < min_level;
  if (parens)
    os << '(';
  switch (t.kind()) {
  case Term::Kind::variable:
    os << t.name();
    break;
  case Term::Kind::constant:
    os << "c:" << t.name();
    break;
  case Term::Kind::literal:
    os << t.value();
    break;
  case Term::Kind::sum:
    print_term(os, t.lhs(), 1);
    os << " + ";
    print_term(os, t.rhs(), 2);
    break;
  case Term::Kind::difference:
    print_term(os, t.lhs(), 1);
    os << " - ";
    print_term(os, t.rhs(), 2);
    break;
  case Term::Kind::product:
    print_term(os, t.lhs(), 2);
    os << '*';
    print_term(os, t.rhs(), 3);
    break;
  case Term::Kind::power:
    print_term(os, t.base(), 4);
    os << '^' << t.exponent();
    break;
  }
  if (parens)
    os << ')';
}

// Formula levels: exists 0, disj 1, conj 2, negation / atom 3.
int formula_level(const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::exists:
    return 0;
  case Formula::Kind::disj:
    return 1;
  case Formula::Kind::conj:
    return 2;
  default:
    return 3;
  }
}

void print_formula(std::ostream& os, const Formula& f, int min_level) {
  bool parens = formula_level(f) < min_level;
  if (parens)
    os << '(';
  switch (f.kind()) {
  case Formula::Kind::truth:
    os << 'T';
    break;
  case Formula::Kind::falsity:
    os << 'F';
    break;
  case Formula::Kind::equal:
  case Formula::Kind::not_equal:
  case Formula::Kind::less: {
    print_term(os, f.lhs_term(), 1);
    os << (f.kind() == Formula::Kind::equal ? " = " : f.kind() == Formula::Kind::not_equal ? " != " : " < ");
    print_term(os, f.rhs_term(), 1);
    break;
  }
  case Formula::Kind::disj:
    print_formula(os, f.left(), 1);
    os << " | ";
    print_formula(os, f.right(), 2);
    break;
  case Formula::Kind::conj:
    print_formula(os, f.left(), 2);
    os << " & ";
    print_formula(os, f.right(), 3);
    break;
  case Formula::Kind::negation: {
    os << '!';
    const Formula& b = f.body();
    bool relation = b.kind() == Formula::Kind::equal || b.kind() == Formula::Kind::not_equal ||
                    b.kind() == Formula::Kind::less;
    if (relation) {
      os << '(';
      print_formula(os, b, 0);
      os << ')';
    } else {
      print_formula(os, b, 3);
    }
    break;
  }
  case Formula::Kind::exists: {
    os << 'E';
    std::vector<std::string> printed;
    const Formula* cur = &f;
    auto clashes = [&](const Formula& block) {
      for (const auto& v : block.bound())
        if (std::find(printed.begin(), printed.end(), v) != printed.end())
          return true;
      return false;
    };
    // Directly nested blocks print as one block unless a name repeats.
    while (cur->kind() == Formula::Kind::exists && !clashes(*cur)) {
      for (const auto& v : cur->bound()) {
        os << ' ' << v;
        printed.push_back(v);
      }
      cur = &cur->body();
    }
    os << " . ";
    print_formula(os, *cur, cur->kind() == Formula::Kind::exists ? 1 : 0);
    break;
  }
  }
  if (parens)
    os << ')';
}

void print_tree_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
  case Term::Kind::variable:
    os << "(var " << t.name() << ')';
    return;
  case Term::Kind::constant:
    os << "(const " << t.name() << ')';
    return;
  case Term::Kind::literal:
    os << "(lit " << t.value() << ')';
    return;
  case Term::Kind::power:
    os << "(pow ";
    print_tree_term(os, t.base());
    os << ' ' << t.exponent() << ')';
    return;
  default:
    os << (t.kind() == Term::Kind::sum ? "(add " : t.kind() == Term::Kind::difference ? "(sub " : "(mul ");
    print_tree_term(os, t.lhs());
    os << ' ';
    print_tree_term(os, t.rhs());
    os << ')';
  }
}

void print_tree(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::truth:
    os << "true";
    return;
  case Formula::Kind::falsity:
    os << "false";
    return;
  case Formula::Kind::equal:
  case Formula::Kind::not_equal:
  case Formula::Kind::less:
    os << (f.kind() == Formula::Kind::equal ? "(equal " : f.kind() == Formula::Kind::not_equal ? "(not_equal " : "(less ");
    print_tree_term(os, f.lhs_term());
    os << ' ';
    print_tree_term(os, f.rhs_term());
    os << ')';
    return;
  case Formula::Kind::conj:
  case Formula::Kind::disj:
    os << (f.kind() == Formula::Kind::conj ? "(and " : "(or ");
    print_tree(os, f.left());
    os << ' ';
    print_tree(os, f.right());
    os << ')';
    return;
  case Formula::Kind::negation:
    os << "(not ";
    print_tree(os, f.body());
    os << ')';
    return;
  case Formula::Kind::exists:
    os << "(exists (";
    for (std::size_t i = 0; i < f.bound().size(); ++i)
      os << (i ? " " : "") << f.bound()[i];
    os << ") ";
    print_tree(os, f.body());
    os << ')';
    return;
  }
}

} // namespace

Formula parse_formula(std::string_view text, ParseOptions options) {
  Parser p(tokenize(text), options);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Term parse_term(std::string_view text) {
  Parser p(tokenize(text), {});
  Term t = p.term();
  p.expect_end();
  return t;
}

std::string format_term(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

std::string format_formula(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

std::string format_tree(const Formula& f) {
  std::ostringstream os;
  print_tree(os, f);
  return os.str();
}

} // namespace erank
