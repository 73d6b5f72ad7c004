#pragma once

// Spaces of the projective-bundle tower, K-group classes built from line
// bundles and fiber sheaves, and their Euler characteristics and pairings.
//
// A line bundle on a bundle space is stored as (base multidegree, rho degree),
// where the rho degree is the twist by the relative O(1). The display form
// O(x,y)(ze) used in scripts converts as rho = x + z.

#include "kmut/arith.hpp"
#include "kmut/errors.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kmut::kt {

struct LineAtom {
  MultiDegree base;
  std::int64_t rho = 0;

  /// Atom from the display form O(base)(z e).
  static LineAtom from_display(const MultiDegree& base, std::int64_t z) {
    if (base.arity() == 0)
      throw std::invalid_argument("LineAtom::from_display: empty base degree");
    return {base, base[0] + z};
  }

  std::int64_t display_z() const { return rho - base[0]; }

  LineAtom inverse() const { return {-base, -rho}; }

  friend LineAtom operator*(const LineAtom& a, const LineAtom& b) { return {a.base + b.base, a.rho + b.rho}; }

  friend bool operator==(const LineAtom&, const LineAtom&) = default;
  friend auto operator<=>(const LineAtom&, const LineAtom&) = default;
};

/// O_F(d): a fiber P^1 of the blowup, twisted by d.
struct FiberAtom {
  std::int64_t twist = 0;

  friend bool operator==(const FiberAtom&, const FiberAtom&) = default;
  friend auto operator<=>(const FiberAtom&, const FiberAtom&) = default;
};

using Atom = std::variant<LineAtom, FiberAtom>;

enum class SpaceKind { proj_product, bundle, hypersurface };

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// A product of projective spaces, a split projective bundle P(sum O(a_i))
/// over one, or a hypersurface in such a bundle.
class Space {
public:
  static SpacePtr proj_product(std::string name, std::vector<int> dims,
                               std::optional<LineAtom> canonical = std::nullopt) {
    for (int n : dims)
      if (n < 1)
        throw std::invalid_argument("Space: factor dimensions must be positive");
    auto s = std::shared_ptr<Space>(new Space);
    s->kind_ = SpaceKind::proj_product;
    s->name_ = std::move(name);
    s->base_dims_ = std::move(dims);
    s->canonical_ = std::move(canonical);
    s->base_space_ = nullptr;
    return s;
  }

  /// P(E) for E = sum of O(summands[i]) over the product `base_dims`.
  static SpacePtr bundle(std::string name, std::vector<int> base_dims, std::vector<MultiDegree> summands,
                         std::optional<LineAtom> canonical = std::nullopt) {
    if (summands.size() < 2)
      throw std::invalid_argument("Space::bundle: need a bundle of rank at least 2");
    for (const auto& a : summands)
      if (a.arity() != base_dims.size())
        throw std::invalid_argument("Space::bundle: summand arity mismatch");
    auto s = std::shared_ptr<Space>(new Space);
    s->kind_ = SpaceKind::bundle;
    s->name_ = std::move(name);
    s->base_space_ = proj_product(s->name_ + ".base", base_dims);
    s->base_dims_ = std::move(base_dims);
    s->summands_ = std::move(summands);
    s->canonical_ = std::move(canonical);
    return s;
  }

  /// Hypersurface with [O_H] = [O] - [O(-H)] in the ambient bundle space.
  /// `shriek_twist` is the line bundle L with i^!(-) = i^*(- (x) L)[-1] for the
  /// exceptional divisor over the dual variety; `pencil_factor` is the base
  /// factor carrying the fibers O_F.
  static SpacePtr hypersurface(std::string name, SpacePtr ambient, LineAtom minus_h, LineAtom canonical,
                               std::optional<LineAtom> shriek_twist = std::nullopt,
                               std::optional<std::size_t> pencil_factor = std::nullopt) {
    if (!ambient || ambient->kind() != SpaceKind::bundle)
      throw std::invalid_argument("Space::hypersurface: ambient must be a bundle space");
    auto s = std::shared_ptr<Space>(new Space);
    s->kind_ = SpaceKind::hypersurface;
    s->name_ = std::move(name);
    s->base_dims_ = ambient->base_dims_;
    s->summands_ = ambient->summands_;
    s->base_space_ = ambient->base_space_;
    s->ambient_ = std::move(ambient);
    s->minus_h_ = std::move(minus_h);
    s->canonical_ = std::move(canonical);
    s->shriek_ = std::move(shriek_twist);
    if (pencil_factor && *pencil_factor >= s->base_dims_.size())
      throw std::invalid_argument("Space::hypersurface: pencil factor out of range");
    s->pencil_factor_ = pencil_factor;
    return s;
  }

  SpaceKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<int>& base_dims() const noexcept { return base_dims_; }
  std::size_t arity() const noexcept { return base_dims_.size(); }
  const std::vector<MultiDegree>& summands() const noexcept { return summands_; }
  const SpacePtr& ambient() const noexcept { return ambient_; }
  const std::optional<LineAtom>& minus_h() const noexcept { return minus_h_; }
  const std::optional<LineAtom>& canonical() const noexcept { return canonical_; }
  const std::optional<LineAtom>& shriek_twist() const noexcept { return shriek_; }
  const std::optional<std::size_t>& pencil_factor() const noexcept { return pencil_factor_; }
  bool has_rho() const noexcept { return kind_ != SpaceKind::proj_product; }
  bool supports_fibers() const noexcept { return pencil_factor_.has_value(); }

  /// The product of projective spaces at the bottom of the tower.
  SpacePtr base_space() const {
    if (kind_ == SpaceKind::proj_product)
      throw std::invalid_argument("Space::base_space: " + name_ + " is already a product of projective spaces");
    return base_space_;
  }

  int dimension() const {
    int n = 0;
    for (int d : base_dims_)
      n += d;
    switch (kind_) {
    case SpaceKind::proj_product:
      return n;
    case SpaceKind::bundle:
      return n + static_cast<int>(summands_.size()) - 1;
    case SpaceKind::hypersurface:
      return ambient_->dimension() - 1;
    }
    return n;
  }

  /// The bundle is O(delta) + O; returns delta.
  std::optional<MultiDegree> rank_two_delta() const {
    if (summands_.size() == 2 && summands_[1].is_zero())
      return summands_[0];
    return std::nullopt;
  }

  void check_atom(const LineAtom& a) const {
    if (a.base.arity() != arity())
      throw std::invalid_argument("line bundle " + a.base.str() + " does not match the " +
                                  std::to_string(arity()) + " base factors of " + name_);
    if (!has_rho() && a.rho != 0)
      throw std::invalid_argument("line bundle on " + name_ + " cannot carry a relative twist");
  }

private:
  Space() = default;

  SpaceKind kind_ = SpaceKind::proj_product;
  std::string name_;
  std::vector<int> base_dims_;
  std::vector<MultiDegree> summands_;
  SpacePtr ambient_;
  SpacePtr base_space_;
  std::optional<LineAtom> minus_h_;
  std::optional<LineAtom> canonical_;
  std::optional<LineAtom> shriek_;
  std::optional<std::size_t> pencil_factor_;
};

namespace spaces {

/// P4 x P1 with its canonical class O(-5,-2).
inline SpacePtr P4xP1() {
  static const SpacePtr s = Space::proj_product("P4xP1", {4, 1}, LineAtom{{-5, -2}, 0});
  return s;
}

/// The blowup of P5 in a point, as P(O(1) + O) over P4, with K = O(-6)(4e).
inline SpacePtr P() {
  static const SpacePtr s = Space::bundle("P", {4}, {MultiDegree{1}, MultiDegree{0}},
                                          LineAtom::from_display({-6}, 4));
  return s;
}

/// P x P1 as a bundle over P4 x P1.
inline SpacePtr PxP1() {
  static const SpacePtr s = Space::bundle("PxP1", {4, 1}, {MultiDegree{1, 0}, MultiDegree{0, 0}});
  return s;
}

/// The universal hypersurface in P x P1: O(-H) = K = O(-3,-1)(2e), and
/// i^!(-) = i^*(- (x) O(2,1)(-3e))[-1].
inline SpacePtr H() {
  static const SpacePtr s =
      Space::hypersurface("H", PxP1(), LineAtom::from_display({-3, -1}, 2), LineAtom::from_display({-3, -1}, 2),
                          LineAtom::from_display({2, 1}, -3), std::size_t{1});
  return s;
}

} // namespace spaces

inline bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b; }

/// Atom text in display form: O(x,y|z) meaning O(x,y)(ze); F(d) for O_F(d).
inline std::string atom_str(const Space& space, const Atom& atom) {
  if (const auto* f = std::get_if<FiberAtom>(&atom))
    return "F(" + std::to_string(f->twist) + ")";
  const auto& l = std::get<LineAtom>(atom);
  std::string s = "O(";
  for (std::size_t i = 0; i < l.base.arity(); ++i)
    s += (i ? "," : "") + std::to_string(l.base[i]);
  if (space.has_rho() && l.display_z() != 0)
    s += "|" + std::to_string(l.display_z());
  return s + ")";
}

/// Integer combination of atoms on a fixed space.
class KClass {
public:
  KClass() = default;
  explicit KClass(SpacePtr space) : space_(std::move(space)) {}

  static KClass line(SpacePtr space, const LineAtom& a, const Integer& mult = 1) {
    KClass k(std::move(space));
    k.add_term(a, mult);
    return k;
  }

  /// Display-form constructor: O(base)(z e).
  static KClass display(SpacePtr space, const MultiDegree& base, std::int64_t z = 0) {
    if (!space->has_rho() && z != 0)
      throw std::invalid_argument("exceptional twist requested on " + space->name());
    LineAtom a = space->has_rho() ? LineAtom::from_display(base, z) : LineAtom{base, 0};
    return line(std::move(space), a);
  }

  static KClass fiber(SpacePtr space, std::int64_t d, const Integer& mult = 1) {
    KClass k(std::move(space));
    k.add_term(FiberAtom{d}, mult);
    return k;
  }

  const SpacePtr& space() const noexcept { return space_; }
  const std::map<Atom, Integer>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_fiber() const {
    for (const auto& [a, m] : terms_)
      if (std::holds_alternative<FiberAtom>(a))
        return true;
    return false;
  }

  Integer multiplicity(const Atom& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Atom& a, const Integer& mult) {
    if (!space_)
      throw std::invalid_argument("KClass: no space");
    if (const auto* l = std::get_if<LineAtom>(&a))
      space_->check_atom(*l);
    else if (!space_->supports_fibers())
      throw std::invalid_argument("fiber sheaves are not defined on " + space_->name());
    if (mult == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(a, mult);
    if (!inserted) {
      it->second += mult;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  KClass& operator+=(const KClass& o) {
    check_space(o);
    for (const auto& [a, m] : o.terms_)
      add_term(a, m);
    return *this;
  }
  KClass& operator-=(const KClass& o) {
    check_space(o);
    for (const auto& [a, m] : o.terms_)
      add_term(a, -m);
    return *this;
  }
  KClass& operator*=(const Integer& k) {
    if (k == 0)
      terms_.clear();
    for (auto& [a, m] : terms_)
      m *= k;
    return *this;
  }

  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator-(KClass a) { return a *= Integer(-1); }
  friend KClass operator*(const Integer& k, KClass a) { return a *= k; }

  friend bool operator==(const KClass& a, const KClass& b) {
    return same_space(a.space_, b.space_) && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty())
      return "0";
    std::string out;
    bool first = true;
    for (const auto& [a, m] : terms_) {
      Integer mag = m < 0 ? Integer(-m) : m;
      if (first)
        out += m < 0 ? "-" : "";
      else
        out += m < 0 ? " - " : " + ";
      first = false;
      if (mag != 1)
        out += mag.str() + "*";
      out += atom_str(*space_, a);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const KClass& k) { return os << k.str(); }

private:
  void check_space(const KClass& o) const {
    if (!same_space(space_, o.space_))
      throw std::invalid_argument("K-classes live on different spaces");
  }

  SpacePtr space_;
  std::map<Atom, Integer> terms_;
};

namespace detail {

/// Calls f(m) for every m in N^parts with sum(m) = total.
inline void for_each_composition(std::size_t parts, std::int64_t total,
                                 const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> m(parts, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == parts) {
      m[i] = left;
      f(m);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      m[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
}

inline Integer chi_base(const Space& space, const MultiDegree& d) {
  return chi_proj_product(space.base_dims(), d);
}

} // namespace detail

using SignedDegrees = std::vector<std::pair<MultiDegree, Integer>>;

/// pi_* O(d) (x) O_pi(z) on P(E), E = sum O(a_i) of rank r+1, as signed line
/// bundles on the base: Sym^z E^v for z >= 0, and
/// (-1)^r det E (x) Sym^{-z-r-1} E for z <= -r-1.
inline SignedDegrees bundle_pushforward(const Space& bundle, const LineAtom& atom) {
  const auto& a = bundle.summands();
  const auto r = static_cast<std::int64_t>(a.size()) - 1;
  SignedDegrees out;
  if (atom.rho >= 0) {
    detail::for_each_composition(a.size(), atom.rho, [&](const std::vector<std::int64_t>& m) {
      MultiDegree d = atom.base;
      for (std::size_t i = 0; i < a.size(); ++i)
        d -= m[i] * a[i];
      out.emplace_back(d, 1);
    });
  } else if (atom.rho <= -r - 1) {
    MultiDegree det(bundle.arity());
    for (const auto& ai : a)
      det += ai;
    const Integer sign = (r % 2 == 0) ? 1 : -1;
    detail::for_each_composition(a.size(), -atom.rho - r - 1, [&](const std::vector<std::int64_t>& m) {
      MultiDegree d = atom.base + det;
      for (std::size_t i = 0; i < a.size(); ++i)
        d += m[i] * a[i];
      out.emplace_back(d, sign);
    });
  }
  return out;
}

/// Pushforward of a line bundle to the base product, as signed line bundles.
inline SignedDegrees pushforward_atom(const Space& space, const LineAtom& atom) {
  space.check_atom(atom);
  switch (space.kind()) {
  case SpaceKind::proj_product:
    return {{atom.base, 1}};
  case SpaceKind::bundle:
    return bundle_pushforward(space, atom);
  case SpaceKind::hypersurface: {
    SignedDegrees out = bundle_pushforward(*space.ambient(), atom);
    for (auto& [d, m] : bundle_pushforward(*space.ambient(), atom * *space.minus_h()))
      out.emplace_back(d, -m);
    return out;
  }
  }
  return {};
}

/// chi of a line bundle.
inline Integer chi_line(const Space& space, const LineAtom& atom) {
  space.check_atom(atom);
  switch (space.kind()) {
  case SpaceKind::proj_product:
    return detail::chi_base(space, atom.base);
  case SpaceKind::bundle: {
    auto delta = space.rank_two_delta();
    if (!delta) {
      Integer sum = 0;
      for (const auto& [d, m] : bundle_pushforward(space, atom))
        sum += m * detail::chi_base(space, d);
      return sum;
    }
    // O(delta) + O: direct sums over the fibre degree.
    if (atom.rho == -1)
      return 0;
    Integer sum = 0;
    if (atom.rho >= 0) {
      for (std::int64_t h = 0; h <= atom.rho; ++h)
        sum += detail::chi_base(space, atom.base - h * *delta);
      return sum;
    }
    for (std::int64_t k = 0; k <= -atom.rho - 2; ++k)
      sum += detail::chi_base(space, atom.base + (k + 1) * *delta);
    return -sum;
  }
  case SpaceKind::hypersurface:
    return chi_line(*space.ambient(), atom) - chi_line(*space.ambient(), atom * *space.minus_h());
  }
  return 0;
}

/// Pencil-factor degree of a line bundle; this is how it restricts to a fiber.
inline std::int64_t fiber_degree(const Space& space, const LineAtom& l) {
  if (!space.supports_fibers())
    throw std::invalid_argument("fiber sheaves are not defined on " + space.name());
  return l.base[*space.pencil_factor()];
}

/// Euler characteristic of a class.
inline Integer chi(const KClass& a) {
  Integer sum = 0;
  for (const auto& [atom, m] : a.terms()) {
    if (const auto* f = std::get_if<FiberAtom>(&atom))
      sum += m * chi_proj(1, f->twist);
    else
      sum += m * chi_line(*a.space(), std::get<LineAtom>(atom));
  }
  return sum;
}

/// Euler pairing chi(A, B) = sum (-1)^i dim Ext^i(A, B) between two atoms.
inline Integer chi_pair_atoms(const Space& space, const Atom& a, const Atom& b) {
  const auto* la = std::get_if<LineAtom>(&a);
  const auto* lb = std::get_if<LineAtom>(&b);
  if (la && lb)
    return chi_line(space, *lb * la->inverse());
  if (la)
    return chi_proj(1, std::get<FiberAtom>(b).twist - fiber_degree(space, *la));
  if (lb)
    return chi_proj(1, fiber_degree(space, *lb) - std::get<FiberAtom>(a).twist - 1);
  throw unsupported_pairing("Euler pairing between two fiber sheaves " + atom_str(space, a) + " and " +
                            atom_str(space, b) + " is not defined");
}

inline Integer chi_pair(const KClass& a, const KClass& b) {
  if (!same_space(a.space(), b.space()))
    throw std::invalid_argument("chi_pair: classes live on different spaces");
  Integer sum = 0;
  for (const auto& [x, m] : a.terms())
    for (const auto& [y, n] : b.terms())
      sum += m * n * chi_pair_atoms(*a.space(), x, y);
  return sum;
}

/// Tensor with a line bundle; O_F(d) (x) L = O_F(d + pencil degree of L).
inline KClass tensor_line(const KClass& a, const LineAtom& l) {
  a.space()->check_atom(l);
  KClass out(a.space());
  for (const auto& [atom, m] : a.terms()) {
    if (const auto* f = std::get_if<FiberAtom>(&atom))
      out.add_term(FiberAtom{f->twist + fiber_degree(*a.space(), l)}, m);
    else
      out.add_term(std::get<LineAtom>(atom) * l, m);
  }
  return out;
}

/// Derived dual; only defined on classes of line bundles.
inline KClass dual(const KClass& a) {
  KClass out(a.space());
  for (const auto& [atom, m] : a.terms()) {
    const auto* l = std::get_if<LineAtom>(&atom);
    if (!l)
      throw unsupported_operation("dual: fiber sheaf " + atom_str(*a.space(), atom) + " has no dual here");
    out.add_term(l->inverse(), m);
  }
  return out;
}

/// O_e(k e) (x) O(extra) as O(extra)(k e) - O(extra)((k-1) e).
inline KClass exc_div_class(const SpacePtr& space, std::int64_t k, const MultiDegree& extra) {
  if (!space->has_rho())
    throw std::invalid_argument("exc_div_class: " + space->name() + " has no exceptional divisor");
  return KClass::display(space, extra, k) - KClass::display(space, extra, k - 1);
}

inline KClass exc_div_class(const SpacePtr& space, std::int64_t k) {
  return exc_div_class(space, k, MultiDegree(space->arity()));
}

/// Pushforward to the base product of projective spaces.
inline KClass pushforward_to_base(const KClass& a) {
  KClass out(a.space()->base_space());
  for (const auto& [atom, m] : a.terms()) {
    const auto* l = std::get_if<LineAtom>(&atom);
    if (!l)
      throw unsupported_operation("pushforward_to_base: fiber sheaf " + atom_str(*a.space(), atom));
    for (const auto& [d, s] : pushforward_atom(*a.space(), *l))
      out.add_term(LineAtom{d, 0}, m * s);
  }
  return out;
}

/// chi of the projection to the dual variety: chi(-) - chi(- (x) L) with L the
/// i^! twist; a fiber O_F(d) contributes chi(O(d)) - chi(O(d+1)) on P1.
inline Integer euler_on_Y(const KClass& a) {
  const auto& space = *a.space();
  if (!space.shriek_twist())
    throw std::invalid_argument("euler_on_Y: " + space.name() + " has no projection twist");
  Integer sum = 0;
  for (const auto& [atom, m] : a.terms()) {
    if (const auto* f = std::get_if<FiberAtom>(&atom)) {
      sum += m * (chi_proj(1, f->twist) - chi_proj(1, f->twist + 1));
    } else {
      const auto& l = std::get<LineAtom>(atom);
      sum += m * (chi_line(space, l) - chi_line(space, l * *space.shriek_twist()));
    }
  }
  return sum;
}

} // namespace kmut::kt
