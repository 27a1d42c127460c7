#include "erank/element_syntax.hpp"

#include <cctype>

namespace erank {

namespace {

template <class F>
class ElementParser {
public:
  using Elem = typename F::Elem;

  ElementParser(const F& field, std::string_view text) : field_(field), text_(text) {}

  Elem run() {
    Elem v = expr();
    skip();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 1, pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Elem expr() {
    Elem v;
    if (eat('-'))
      v = field_.neg(product());
    else
      v = product();
    for (;;) {
      if (eat('+'))
        v = field_.add(v, product());
      else if (eat('-'))
        v = field_.sub(v, product());
      else
        return v;
    }
  }

  Elem product() {
    Elem v = power();
    for (;;) {
      if (eat('*')) {
        v = field_.mul(v, power());
      } else if (eat('/')) {
        Elem d = power();
        if (field_.is_zero(d))
          throw InvalidArgumentError("division by zero in element literal");
        v = field_.div(v, d);
      } else {
        return v;
      }
    }
  }

  Elem power() {
    Elem base = atom();
    if (!eat('^'))
      return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected an exponent");
    return field_.pow(base, std::stoull(std::string(text_.substr(start, pos_ - start))));
  }

  Elem atom() {
    skip();
    if (pos_ >= text_.size())
      fail("unexpected end of element");
    char c = text_[pos_];
    if (c == '(' || c == '[') {
      ++pos_;
      Elem v = expr();
      if (!eat(c == '(' ? ')' : ']'))
        fail(std::string("expected '") + (c == '(' ? ')' : ']') + "'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return field_.from_integer(BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      try {
        return field_.constant(name);
      } catch (const UnsupportedProfileError&) {
        pos_ = start;
        fail("unknown symbol '" + name + "' in " + field_.name());
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const F& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

GaloisField::Elem parse_element(const GaloisField& field, std::string_view text) {
  return ElementParser<GaloisField>(field, text).run();
}

Rat parse_element(const RationalField& field, std::string_view text) {
  return ElementParser<RationalField>(field, text).run();
}

RatFunc parse_element(const RatFuncField& field, std::string_view text) {
  return ElementParser<RatFuncField>(field, text).run();
}

Value parse_value(const FieldProfile& profile, std::string_view text) {
  return with_field(profile, [&](const auto& field) -> Value { return parse_element(field, text); });
}

std::vector<std::string> split_elements(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[')
      ++depth;
    else if (c == ')' || c == ']')
      --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty() || !out.empty())
    out.push_back(cur);
  return out;
}

} // namespace erank
