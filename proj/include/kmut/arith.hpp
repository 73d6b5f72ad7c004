#pragma once

// Exact integers and rationals, binomials, and Euler characteristics of line
// bundles on projective spaces and their products.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmut {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& n) { return n.str(); }

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Integer degree vector, one entry per projective-space factor.
class MultiDegree {
public:
  MultiDegree() = default;
  explicit MultiDegree(std::size_t arity) : degrees_(arity, 0) {}
  MultiDegree(std::initializer_list<std::int64_t> degrees) : degrees_(degrees) {}
  explicit MultiDegree(std::vector<std::int64_t> degrees) : degrees_(std::move(degrees)) {}

  std::size_t arity() const noexcept { return degrees_.size(); }
  std::int64_t operator[](std::size_t i) const { return degrees_.at(i); }
  std::int64_t& operator[](std::size_t i) { return degrees_.at(i); }
  const std::vector<std::int64_t>& values() const noexcept { return degrees_; }

  bool is_zero() const {
    for (auto d : degrees_)
      if (d != 0)
        return false;
    return true;
  }

  MultiDegree& operator+=(const MultiDegree& o) {
    check_arity(o);
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      degrees_[i] += o.degrees_[i];
    return *this;
  }
  MultiDegree& operator-=(const MultiDegree& o) {
    check_arity(o);
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      degrees_[i] -= o.degrees_[i];
    return *this;
  }
  MultiDegree& operator*=(std::int64_t k) {
    for (auto& d : degrees_)
      d *= k;
    return *this;
  }

  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
  friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a -= b; }
  friend MultiDegree operator*(std::int64_t k, MultiDegree a) { return a *= k; }
  friend MultiDegree operator-(MultiDegree a) { return a *= -1; }

  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;

  /// "(2,1)" style rendering.
  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      os << (i ? "," : "") << degrees_[i];
    os << ')';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiDegree& d) { return os << d.str(); }

private:
  void check_arity(const MultiDegree& o) const {
    if (o.arity() != arity())
      throw std::invalid_argument("multidegree arity mismatch: " + str() + " vs " + o.str());
  }

  std::vector<std::int64_t> degrees_;
};

/// Binomial coefficient with the polynomial extension in n: zero for k < 0,
/// otherwise n(n-1)...(n-k+1)/k! for every integer n.
inline Integer binomial(const Integer& n, std::int64_t k) {
  if (k < 0)
    return 0;
  Integer num = 1;
  Integer den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

inline Integer binomial(std::int64_t n, std::int64_t k) { return binomial(Integer(n), k); }

/// dim Sym^a of a b-dimensional space; zero for a < 0.
inline Integer sym_dim(std::int64_t a, std::int64_t b) {
  if (b <= 0)
    throw std::invalid_argument("sym_dim: dimension must be positive, got " + std::to_string(b));
  if (a < 0)
    return 0;
  return binomial(a + b - 1, b - 1);
}

/// chi(P^n, O(a)).
inline Integer chi_proj(std::int64_t n, std::int64_t a) {
  if (n < 1)
    throw std::invalid_argument("chi_proj: projective dimension must be positive, got " +
                                std::to_string(n));
  Integer dual = sym_dim(-a - n - 1, n + 1);
  return sym_dim(a, n + 1) + ((n % 2 == 0) ? dual : Integer(-dual));
}

/// Kuenneth at the level of Euler characteristics.
inline Integer chi_proj_product(std::span<const int> dims, const MultiDegree& d) {
  if (dims.size() != d.arity())
    throw std::invalid_argument("chi_proj_product: " + std::to_string(dims.size()) +
                                " factors but degree " + d.str());
  Integer result = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    result *= chi_proj(dims[i], d[i]);
    if (result == 0)
      break;
  }
  return result;
}

} // namespace kmut
