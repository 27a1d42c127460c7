// Element literals on the command line:
//   prime fields  3, -1
//   F_q           [a^2+1]  (brackets optional)
//   F_q(t)        (t^2+1)/(t+1), t^3+t
//   Q             5/6, -2
// Accepts + - * / ^ and parentheses over integers and the constants t, a.

#ifndef ERANK_ELEMENT_SYNTAX_HPP
#define ERANK_ELEMENT_SYNTAX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "erank/profile.hpp"

namespace erank {

// Throws ParseError (column-based) or InvalidArgumentError (division by zero).
GaloisField::Elem parse_element(const GaloisField& field, std::string_view text);
Rat parse_element(const RationalField& field, std::string_view text);
RatFunc parse_element(const RatFuncField& field, std::string_view text);

Value parse_value(const FieldProfile& profile, std::string_view text);

// Splits "x1,x2,..." at top-level commas.
std::vector<std::string> split_elements(std::string_view text);

} // namespace erank

#endif
