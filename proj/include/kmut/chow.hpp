#pragma once

// Chow ring of a product of projective spaces P^{n_1} x ... x P^{n_k} with
// rational coefficients, and Chern-class calculus for formal bundles on it.

#include "kmut/arith.hpp"
#include "kmut/errors.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmut::chow {

/// Rational multidegree, used for Q-line-bundle twists.
using RationalDegree = std::vector<Rational>;

class ChowRing {
public:
  ChowRing() = default;
  explicit ChowRing(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty())
      throw std::invalid_argument("ChowRing: at least one factor is required");
    for (int n : dims_)
      if (n < 1)
        throw std::invalid_argument("ChowRing: factor dimensions must be positive");
  }

  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t arity() const noexcept { return dims_.size(); }
  int dimension() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

  /// Name of the hyperplane class of factor i: "h" on a single factor,
  /// otherwise "h1", "h2", ...
  std::string generator_name(std::size_t i) const {
    return arity() == 1 ? std::string("h") : "h" + std::to_string(i + 1);
  }

  /// "P4", "P2xP1", ...
  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < dims_.size(); ++i)
      s += (i ? "xP" : "P") + std::to_string(dims_[i]);
    return s;
  }

  friend bool operator==(const ChowRing&, const ChowRing&) = default;

private:
  std::vector<int> dims_;
};

/// Exponent vector of a monomial h_1^{m_1} ... h_k^{m_k}.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

class ChowElement {
public:
  ChowElement() = default;
  explicit ChowElement(ChowRing ring) : ring_(std::move(ring)) {}

  static ChowElement constant(const ChowRing& ring, const Rational& c) {
    ChowElement e(ring);
    e.add_term(Monomial(ring.arity(), 0), c);
    return e;
  }

  /// Hyperplane class of factor i.
  static ChowElement generator(const ChowRing& ring, std::size_t i) {
    if (i >= ring.arity())
      throw std::invalid_argument("ChowElement::generator: factor index out of range");
    Monomial m(ring.arity(), 0);
    m[i] = 1;
    ChowElement e(ring);
    e.add_term(m, 1);
    return e;
  }

  /// Sum of coefficient_i * h_i.
  static ChowElement linear(const ChowRing& ring, const RationalDegree& coeffs) {
    if (coeffs.size() != ring.arity())
      throw std::invalid_argument("ChowElement::linear: arity mismatch");
    ChowElement e(ring);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Monomial m(ring.arity(), 0);
      m[i] = 1;
      e.add_term(m, coeffs[i]);
    }
    return e;
  }

  static ChowElement linear(const ChowRing& ring, const MultiDegree& d) {
    RationalDegree q;
    for (auto v : d.values())
      q.emplace_back(v);
    return linear(ring, q);
  }

  const ChowRing& ring() const noexcept { return ring_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c * m; monomials beyond the truncation are dropped.
  void add_term(const Monomial& m, const Rational& c) {
    if (m.size() != ring_.arity())
      throw std::invalid_argument("ChowElement: monomial arity mismatch");
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] < 0 || m[i] > ring_.dims()[i])
        return;
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  /// Homogeneous component of the given total degree.
  ChowElement part(int degree) const {
    ChowElement r(ring_);
    for (const auto& [m, c] : terms_)
      if (total_degree(m) == degree)
        r.terms_.emplace(m, c);
    return r;
  }

  ChowElement& operator+=(const ChowElement& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_)
      add_term(m, c);
    return *this;
  }
  ChowElement& operator-=(const ChowElement& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_)
      add_term(m, -c);
    return *this;
  }
  ChowElement& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_)
      c *= k;
    return *this;
  }

  friend ChowElement operator+(ChowElement a, const ChowElement& b) { return a += b; }
  friend ChowElement operator-(ChowElement a, const ChowElement& b) { return a -= b; }
  friend ChowElement operator-(ChowElement a) { return a *= Rational(-1); }
  friend ChowElement operator*(const Rational& k, ChowElement a) { return a *= k; }

  friend ChowElement operator*(const ChowElement& a, const ChowElement& b) {
    a.check_ring(b);
    ChowElement r(a.ring_);
    Monomial m(a.ring_.arity());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i)
          m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  ChowElement& operator*=(const ChowElement& o) { return *this = *this * o; }

  ChowElement pow(int k) const {
    ChowElement r = constant(ring_, 1);
    for (int i = 0; i < k; ++i)
      r *= *this;
    return r;
  }

  friend bool operator==(const ChowElement&, const ChowElement&) = default;

  /// Canonical text: monomials in lexicographic exponent order.
  std::string str() const {
    if (terms_.empty())
      return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first)
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
          continue;
        if (!mono.empty())
          mono += "*";
        mono += ring_.generator_name(i);
        if (m[i] > 1)
          mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty())
        out += to_string(mag);
      else if (mag == 1)
        out += mono;
      else
        out += to_string(mag) + "*" + mono;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const ChowElement& e) { return os << e.str(); }

private:
  void check_ring(const ChowElement& o) const {
    if (!(o.ring_ == ring_))
      throw std::invalid_argument("Chow ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
  }

  ChowRing ring_;
  std::map<Monomial, Rational> terms_;
};

/// Degree map: coefficient of the top monomial.
inline Rational integrate(const ChowElement& a) {
  return a.coefficient(Monomial(a.ring().dims().begin(), a.ring().dims().end()));
}

/// Inverse of an element with constant term 1, exact because the ring is
/// truncated.
inline ChowElement inverse(const ChowElement& c) {
  const auto& ring = c.ring();
  if (c.part(0) != ChowElement::constant(ring, 1))
    throw std::invalid_argument("inverse: constant term must be 1");
  ChowElement nil = ChowElement::constant(ring, 1) - c;
  ChowElement result = ChowElement::constant(ring, 1);
  ChowElement power = result;
  for (int k = 1; k <= ring.dimension(); ++k) {
    power *= nil;
    if (power.is_zero())
      break;
    result += power;
  }
  return result;
}

/// Rank plus total Chern class. Negative rank marks a virtual difference.
struct FormalBundle {
  std::int64_t rank = 0;
  ChowElement total_chern;

  const ChowRing& ring() const noexcept { return total_chern.ring(); }
  ChowElement chern(int k) const { return total_chern.part(k); }

  friend bool operator==(const FormalBundle&, const FormalBundle&) = default;
};

inline FormalBundle trivial(const ChowRing& ring, std::int64_t rank) {
  return {rank, ChowElement::constant(ring, 1)};
}

inline FormalBundle line_bundle(const ChowRing& ring, const MultiDegree& d) {
  if (d.arity() != ring.arity())
    throw std::invalid_argument("line_bundle: degree " + d.str() + " on " + ring.name());
  return {1, ChowElement::constant(ring, 1) + ChowElement::linear(ring, d)};
}

inline FormalBundle direct_sum(const FormalBundle& e, const FormalBundle& f) {
  if (!(e.ring() == f.ring()))
    throw std::invalid_argument("direct_sum: bundles live on different rings");
  return {e.rank + f.rank, e.total_chern * f.total_chern};
}

inline FormalBundle dual(const FormalBundle& e) {
  ChowElement c(e.ring());
  for (const auto& [m, q] : e.total_chern.terms())
    c.add_term(m, total_degree(m) % 2 ? Rational(-q) : q);
  return {e.rank, c};
}

/// c_k(E (x) L) = sum_i C(r-i, k-i) c_i(E) c_1(L)^{k-i}, with c_1(L) = sum l_i h_i.
inline FormalBundle twist(const FormalBundle& e, const RationalDegree& ell) {
  if (e.rank < 0)
    throw unsupported_operation("twist: virtual bundles (negative rank) cannot be twisted");
  const auto& ring = e.ring();
  ChowElement l = ChowElement::linear(ring, ell);
  const int top = ring.dimension();
  std::vector<ChowElement> lpow{ChowElement::constant(ring, 1)};
  for (int k = 1; k <= top; ++k)
    lpow.push_back(lpow.back() * l);
  ChowElement c(ring);
  for (int k = 0; k <= top; ++k)
    for (int i = 0; i <= k; ++i) {
      Integer b = binomial(Integer(e.rank - i), k - i);
      if (b != 0)
        c += Rational(b) * (e.chern(i) * lpow[k - i]);
    }
  return {e.rank, c};
}

inline FormalBundle twist(const FormalBundle& e, const MultiDegree& d) {
  RationalDegree q;
  for (auto v : d.values())
    q.emplace_back(v);
  return twist(e, q);
}

/// Tangent bundle via the Euler sequence on each factor.
inline FormalBundle tangent_chern(const ChowRing& ring) {
  ChowElement c = ChowElement::constant(ring, 1);
  for (std::size_t i = 0; i < ring.arity(); ++i) {
    ChowElement f = ChowElement::constant(ring, 1) + ChowElement::generator(ring, i);
    c *= f.pow(ring.dims()[i] + 1);
  }
  return {ring.dimension(), c};
}

/// Virtual class F - E, total Chern class c(F)/c(E).
inline FormalBundle difference(const FormalBundle& f, const FormalBundle& e) {
  if (!(e.ring() == f.ring()))
    throw std::invalid_argument("difference: bundles live on different rings");
  return {f.rank - e.rank, f.total_chern * inverse(e.total_chern)};
}

/// Topological Euler characteristic of a smooth complete intersection of
/// divisors of the given multidegrees.
inline Rational ci_euler(const ChowRing& ring, std::span<const MultiDegree> divisors) {
  const int n = ring.dimension();
  const int m = static_cast<int>(divisors.size());
  if (m > n)
    throw std::invalid_argument("ci_euler: " + std::to_string(m) + " divisors in dimension " +
                                std::to_string(n));
  ChowElement normal = ChowElement::constant(ring, 1);
  ChowElement fundamental = ChowElement::constant(ring, 1);
  for (const auto& d : divisors) {
    if (d.arity() != ring.arity())
      throw std::invalid_argument("ci_euler: divisor " + d.str() + " on " + ring.name());
    ChowElement cls = ChowElement::linear(ring, d);
    normal *= ChowElement::constant(ring, 1) + cls;
    fundamental *= cls;
  }
  ChowElement c = tangent_chern(ring).total_chern * inverse(normal);
  return integrate(c.part(n - m) * fundamental);
}

/// Determinant by cofactor expansion along the first row.
inline ChowElement determinant(const ChowRing& ring, const std::vector<std::vector<ChowElement>>& a) {
  const std::size_t n = a.size();
  if (n == 0)
    return ChowElement::constant(ring, 1);
  if (n == 1)
    return a[0][0];
  ChowElement det(ring);
  for (std::size_t col = 0; col < n; ++col) {
    if (a[0][col].is_zero())
      continue;
    std::vector<std::vector<ChowElement>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ChowElement> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col)
          row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    ChowElement term = a[0][col] * determinant(ring, minor);
    if (col % 2)
      det -= term;
    else
      det += term;
  }
  return det;
}

/// Thom-Porteous class of the locus where a map E -> F has rank <= r:
/// det(c_{f-r+j-i}(F - E)) of size (e-r) x (e-r).
inline ChowElement porteous_class(const FormalBundle& e, const FormalBundle& f, std::int64_t r) {
  if (!(e.ring() == f.ring()))
    throw std::invalid_argument("porteous_class: bundles live on different rings");
  if (e.rank < 0 || f.rank < 0)
    throw std::invalid_argument("porteous_class: source and target must be genuine bundles");
  if (r < 0 || r > std::min(e.rank, f.rank))
    throw std::invalid_argument("porteous_class: rank bound " + std::to_string(r) +
                                " exceeds min(" + std::to_string(e.rank) + ", " +
                                std::to_string(f.rank) + ")");
  const auto& ring = e.ring();
  FormalBundle virt = difference(f, e);
  const auto size = static_cast<std::size_t>(e.rank - r);
  const std::int64_t base = f.rank - r;
  std::vector<std::vector<ChowElement>> m(size, std::vector<ChowElement>(size, ChowElement(ring)));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      std::int64_t k = base + static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i);
      if (k >= 0 && k <= ring.dimension())
        m[i][j] = virt.chern(static_cast<int>(k));
    }
  return determinant(ring, m);
}

} // namespace kmut::chow
