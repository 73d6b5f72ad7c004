#pragma once

// Argument parsing for the `chow` subcommands: ring names ("P4", "P2xP1"),
// degree lists ("2,1", "1/2,1/2") and polynomials in the hyperplane classes
// ("(2*h)^2*(3*h)^2", "33/2*h1^2*h2").

#include "kmut/chow.hpp"
#include "kmut/frontend/lexer.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace kmut::fe {

inline chow::ChowRing parse_ring(std::string_view name) {
  std::vector<int> dims;
  std::size_t i = 0;
  while (i < name.size()) {
    if (name[i] != 'P')
      throw ParseError("expected 'P' in ring name '" + std::string(name) + "'", 1, static_cast<int>(i) + 1,
                       "P<n>xP<m>...");
    std::size_t j = ++i;
    while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j])))
      ++j;
    if (j == i || j - i > 3)
      throw ParseError("expected a dimension after 'P'", 1, static_cast<int>(i) + 1, "P<n>");
    dims.push_back(std::stoi(std::string(name.substr(i, j - i))));
    if (dims.back() < 1)
      throw ParseError("factor dimension must be positive", 1, static_cast<int>(i) + 1, "P<n> with n >= 1");
    i = j;
    if (i < name.size()) {
      if (name[i] != 'x')
        throw ParseError("expected 'x' between factors", 1, static_cast<int>(i) + 1, "P<n>xP<m>");
      ++i;
      if (i == name.size())
        throw ParseError("ring name ends after 'x'", 1, static_cast<int>(i) + 1, "P<n>");
    }
  }
  if (dims.empty())
    throw ParseError("empty ring name", 1, 1, "P<n>xP<m>...");
  return chow::ChowRing(std::move(dims));
}

namespace detail {

class PolyParser {
public:
  PolyParser(const chow::ChowRing& ring, std::string_view src) : ring_(ring), src_(src) {}

  chow::ChowElement parse() {
    auto e = expr();
    skip_ws();
    if (pos_ < src_.size())
      fail("unexpected '" + std::string(1, src_[pos_]) + "'", "an operator or end of input");
    return e;
  }

  Rational number() {
    skip_ws();
    bool neg = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+'))
      neg = src_[pos_++] == '-';
    Rational q = unsigned_number();
    return neg ? Rational(-q) : q;
  }

  bool done() {
    skip_ws();
    return pos_ >= src_.size();
  }

private:
  const chow::ChowRing& ring_;
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message, const std::string& hint) const {
    throw ParseError(message, 1, static_cast<int>(pos_) + 1, hint);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected a number", "digits");
    return std::string(src_.substr(start, pos_ - start));
  }

  Rational unsigned_number() {
    skip_ws();
    Integer num(digits());
    if (pos_ < src_.size() && src_[pos_] == '/') {
      ++pos_;
      Integer den(digits());
      if (den == 0)
        fail("zero denominator", "a nonzero integer");
      return Rational(num, den);
    }
    return Rational(num);
  }

  chow::ChowElement expr() {
    chow::ChowElement acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  chow::ChowElement term() {
    chow::ChowElement acc = power();
    while (accept('*'))
      acc = acc * power();
    return acc;
  }

  chow::ChowElement power() {
    chow::ChowElement base = unary();
    if (!accept('^'))
      return base;
    skip_ws();
    std::string d = digits();
    if (d.size() > 3)
      fail("exponent too large", "a small non-negative integer");
    return base.pow(std::stoi(d));
  }

  chow::ChowElement unary() {
    if (accept('-'))
      return chow::ChowElement::constant(ring_, -1) * unary();
    return primary();
  }

  chow::ChowElement primary() {
    skip_ws();
    if (pos_ >= src_.size())
      fail("unexpected end of expression", "a number, generator or '('");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')'))
        fail("expected ')'", "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return chow::ChowElement::constant(ring_, unsigned_number());
    if (c == 'h') {
      std::size_t at = pos_++;
      std::string idx;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        idx += src_[pos_++];
      std::string name = "h" + idx;
      for (std::size_t i = 0; i < ring_.arity(); ++i)
        if (ring_.generator_name(i) == name)
          return chow::ChowElement::generator(ring_, i);
      pos_ = at;
      fail("unknown generator '" + name + "' on " + ring_.name(),
           ring_.arity() == 1 ? "h" : "h1.." + ring_.generator_name(ring_.arity() - 1));
    }
    fail("unexpected '" + std::string(1, c) + "'", "a number, generator or '('");
  }
};

} // namespace detail

inline chow::ChowElement parse_chow_element(const chow::ChowRing& ring, std::string_view src) {
  return detail::PolyParser(ring, src).parse();
}

/// Comma-separated rationals.
inline chow::RationalDegree parse_rational_degree(std::string_view src) {
  chow::RationalDegree out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = src.find(',', start);
    std::string_view part = src.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    chow::ChowRing dummy({1});
    detail::PolyParser p(dummy, part);
    try {
      out.push_back(p.number());
      if (!p.done())
        throw ParseError("trailing characters in degree '" + std::string(part) + "'", 1, 1, "a number");
    } catch (const ParseError& e) {
      throw ParseError(e.message(), 1, static_cast<int>(start) + e.column(), e.hint());
    }
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

/// Comma-separated integers.
inline MultiDegree parse_degree(std::string_view src) {
  std::vector<std::int64_t> out;
  for (const auto& q : parse_rational_degree(src)) {
    if (boost::multiprecision::denominator(q) != 1)
      throw ParseError("degree '" + std::string(src) + "' must be integral", 1, 1, "integers");
    Integer n = boost::multiprecision::numerator(q);
    if (n > Integer(1'000'000) || n < Integer(-1'000'000))
      throw ParseError("degree entry out of range in '" + std::string(src) + "'", 1, 1, "|d| <= 10^6");
    out.push_back(static_cast<std::int64_t>(n));
  }
  return MultiDegree(std::move(out));
}

} // namespace kmut::fe
