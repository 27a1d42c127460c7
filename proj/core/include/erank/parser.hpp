// Text syntax for terms and formulas.
//
//   formula := "E" var+ "." formula | disj
//   disj    := conj ("|" conj)*
//   conj    := neg ("&" neg)*
//   neg     := "!" neg | atom | "(" formula ")" | "T" | "F"
//   atom    := term ("=" | "!=" | "<") term
//   term    := term ("+" | "-") term | term "*" term | factor "^" nat | factor
//   factor  := var | "c:" name | integer | "-" integer | "(" term ")"
//
// A leading "-" in front of anything but an integer literal reads as 0 - x.

#ifndef ERANK_PARSER_HPP
#define ERANK_PARSER_HPP

#include <string>
#include <string_view>

#include "erank/formula.hpp"

namespace erank {

struct ParseOptions {
  bool order_enabled = false;
};

// Throws ParseError with line/column.
Formula parse_formula(std::string_view text, ParseOptions options = {});
inline Formula parse_formula(std::string_view text, bool order_enabled) {
  return parse_formula(text, ParseOptions{order_enabled});
}
Term parse_term(std::string_view text);

std::string format_term(const Term& t);
std::string format_formula(const Formula& f);

// S-expression dump of the tree, for debugging and `erank parse`.
std::string format_tree(const Formula& f);

} // namespace erank

#endif
