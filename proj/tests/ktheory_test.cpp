#include "kmut/ktheory.hpp"

#include <gtest/gtest.h>

using namespace kmut;
using namespace kmut::kt;

namespace {

KClass op(std::int64_t x, std::int64_t z = 0) { return KClass::display(spaces::P(), {x}, z); }
KClass oh(std::int64_t x, std::int64_t y, std::int64_t z = 0) { return KClass::display(spaces::H(), {x, y}, z); }
KClass fib(std::int64_t d) { return KClass::fiber(spaces::H(), d); }

// Independent oracle on Bl_0 P5: O(x)(ze) is xH + ze with H the pulled-back
// hyperplane, and chi(mH - ke) = C(m+5, 5) - C(k+4, 5) as polynomials.
Integer chi_blowup(std::int64_t m, std::int64_t z) {
  const std::int64_t k = -z;
  return binomial(m + 5, 5) - binomial(k + 4, 5);
}

// chi on P x P1, then the hypersurface correction with O(-H) = O(-3,-1)(2e).
Integer chi_hyper(std::int64_t x, std::int64_t y, std::int64_t z) {
  auto amb = [](std::int64_t a, std::int64_t b, std::int64_t c) { return chi_blowup(a, c) * chi_proj(1, b); };
  return amb(x, y, z) - amb(x - 3, y - 1, z + 2);
}

} // namespace

TEST(LineAtom, DisplayConversion) {
  auto a = LineAtom::from_display({2, 1}, -3);
  EXPECT_EQ(a.rho, -1);
  EXPECT_EQ(a.display_z(), -3);
  EXPECT_EQ((a * a.inverse()), (LineAtom{MultiDegree{0, 0}, 0}));
}

TEST(Spaces, Dimensions) {
  EXPECT_EQ(spaces::P()->dimension(), 5);
  EXPECT_EQ(spaces::H()->dimension(), 5);
  EXPECT_EQ(spaces::P4xP1()->dimension(), 5);
  EXPECT_TRUE(spaces::H()->supports_fibers());
  EXPECT_FALSE(spaces::P()->supports_fibers());
}

TEST(ChiOnP, MatchesBlowupOracle) {
  for (int x = -6; x <= 6; ++x)
    for (int z = -6; z <= 6; ++z)
      EXPECT_EQ(chi(op(x, z)), chi_blowup(x, z)) << "O(" << x << ")(" << z << "e)";
}

TEST(ChiOnH, MatchesHypersurfaceOracle) {
  for (int x = -5; x <= 5; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -5; z <= 5; ++z)
        EXPECT_EQ(chi(oh(x, y, z)), chi_hyper(x, y, z)) << x << "," << y << "," << z;
}

TEST(ChiOnH, SectionCounts) {
  EXPECT_EQ(chi(oh(0, 0)), 1);
  EXPECT_EQ(chi_pair(oh(0, 0), oh(1, 0)), 6);
  EXPECT_EQ(chi_pair(oh(0, 0), oh(2, 0)), 21);
  EXPECT_EQ(chi_pair(oh(2, 1, -1), oh(4, 1, -2)), 20);
  EXPECT_EQ(chi_pair(oh(1, 1), oh(5, 1, -2)), 120);
}

TEST(ChiOnH, DisputedTableEntry) {
  // The hand table lists 40; the pairing is chi(O(1,1)(-e)) = 10.
  EXPECT_EQ(chi_pair(oh(2, 0, -1), oh(3, 1, -2)), 10);
  EXPECT_EQ(chi(oh(1, 1, -1)), 10);
}

TEST(ChiOnP4xP1, Kuenneth) {
  auto s = spaces::P4xP1();
  EXPECT_EQ(chi(KClass::display(s, {1, 1})), 10);
  EXPECT_EQ(chi(KClass::display(s, {-5, -2})), -1);
  EXPECT_THROW(KClass::display(s, {1, 1}, 1), std::invalid_argument);
}

TEST(Fibers, Pairings) {
  EXPECT_EQ(chi(fib(0)), 1);
  EXPECT_EQ(chi(fib(-1)), 0);
  EXPECT_EQ(chi_pair(oh(0, 0), fib(0)), 1);
  EXPECT_EQ(chi_pair(oh(1, 1), fib(1)), 1);
  EXPECT_EQ(chi_pair(oh(1, 0), fib(1)), 2);
  // Serre duality on H gives chi(O_F, L) = y for L of pencil degree y.
  EXPECT_EQ(chi_pair(fib(0), oh(0, 0)), 0);
  EXPECT_EQ(chi_pair(fib(0), oh(0, 2)), 2);
  EXPECT_EQ(chi_pair(fib(0), oh(3, -4, 1)), -4);
  EXPECT_THROW(chi_pair(fib(0), fib(1)), unsupported_pairing);
  EXPECT_THROW(KClass::fiber(spaces::P(), 0), std::invalid_argument);
}

TEST(Fibers, TensorMovesTwist) {
  EXPECT_EQ(tensor_line(fib(0), LineAtom::from_display({3, 2}, 1)), fib(2));
  EXPECT_THROW(dual(fib(0)), unsupported_operation);
}

TEST(KClass, FormalArithmetic) {
  KClass a = oh(1, 0) + oh(1, 0) - Integer(2) * oh(1, 0);
  EXPECT_TRUE(a.is_zero());
  KClass b = fib(0) + Integer(5) * oh(1, 0) - Integer(10) * oh(0, 0) - oh(2, 0);
  EXPECT_EQ(b.multiplicity(FiberAtom{0}), 1);
  EXPECT_EQ(b.str(), "-10*O(0,0) + 5*O(1,0) - O(2,0) + F(0)");
  EXPECT_THROW(oh(0, 0) + op(0), std::invalid_argument);
}

TEST(KClass, BilinearPairing) {
  KClass a = oh(1, 0) - Integer(3) * oh(0, 1, -1), b = Integer(2) * oh(2, 1, -2) + fib(1);
  EXPECT_EQ(chi_pair(a, b), Integer(2) * chi_pair(oh(1, 0), oh(2, 1, -2)) + chi_pair(oh(1, 0), fib(1)) -
                                Integer(6) * chi_pair(oh(0, 1, -1), oh(2, 1, -2)) -
                                Integer(3) * chi_pair(oh(0, 1, -1), fib(1)));
}

TEST(ExcDivClass, DifferenceOfLineBundles) {
  EXPECT_EQ(exc_div_class(spaces::P(), 0), op(0, 0) - op(0, -1));
  EXPECT_EQ(exc_div_class(spaces::H(), -1, {0, 1}), oh(0, 1, -1) - oh(0, 1, -2));
  EXPECT_THROW(exc_div_class(spaces::P4xP1(), 0), std::invalid_argument);
  // O_e is exceptional.
  auto e = exc_div_class(spaces::P(), 0);
  EXPECT_EQ(chi_pair(e, e), 1);
  // chi(O_e) = chi(P4, O) = 1, chi(O_e(e)) = chi(P4, O(-1)) = 0.
  EXPECT_EQ(chi(e), 1);
  EXPECT_EQ(chi(exc_div_class(spaces::P(), 1)), 0);
}

TEST(Pushforward, ChiIsPreserved) {
  for (auto s : {spaces::P(), spaces::H()})
    for (int x = -4; x <= 4; ++x)
      for (int z = -4; z <= 4; ++z) {
        MultiDegree base = s->arity() == 1 ? MultiDegree{x} : MultiDegree{x, 1};
        KClass c = KClass::display(s, base, z);
        EXPECT_EQ(chi(pushforward_to_base(c)), chi(c)) << s->name() << " " << x << " " << z;
      }
}

TEST(Pushforward, RelativeMinusOneVanishes) {
  auto p = spaces::P();
  EXPECT_TRUE(pushforward_atom(*p, LineAtom{MultiDegree{3}, -1}).empty());
  EXPECT_EQ(chi_line(*p, LineAtom{MultiDegree{3}, -1}), 0);
}

TEST(Pushforward, GeneralBundleFormula) {
  // P(O + O + O) over P1 is P1 x P2, so chi(O(a)(b)) = (a+1) C(b+2,2).
  auto s = Space::bundle("P1xP2", {1}, {MultiDegree{0}, MultiDegree{0}, MultiDegree{0}});
  for (int a = -3; a <= 3; ++a)
    for (int b = -5; b <= 4; ++b)
      EXPECT_EQ(chi_line(*s, LineAtom{MultiDegree{a}, b}), Integer(a + 1) * binomial(b + 2, 2)) << a << " " << b;
}

TEST(Serre, OnH) {
  const auto& k = *spaces::H()->canonical();
  for (int x = -3; x <= 3; ++x)
    for (int z = -3; z <= 3; ++z) {
      KClass a = oh(x, 0, z), b = oh(1, 1, -1);
      EXPECT_EQ(chi_pair(a, b), -chi_pair(b, tensor_line(a, k)));
    }
}

TEST(EulerOnY, Values) {
  EXPECT_EQ(euler_on_Y(oh(1, 0)), -64);
  EXPECT_EQ(euler_on_Y(fib(0)), -1);
  EXPECT_THROW(euler_on_Y(op(0)), std::invalid_argument);
}
