#include <gtest/gtest.h>

#include "gowers/error.h"
#include "gowers/group.h"
#include "gowers/interpolation.h"
#include "gowers/modular.h"
#include "oracles.h"

namespace gowers {
namespace {

TEST(SpaceTest, IndexAndCoordsAgreeWithOracle) {
  const Space space(3, 3);
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto c = space.coords(x);
    EXPECT_EQ(c, oracle::coords_of(x, 3, 3));
    EXPECT_EQ(space.index(c), x);
    for (std::size_t y = 0; y < space.size(); y += 5) {
      EXPECT_EQ(space.add(x, y), oracle::add_points(x, y, 3, 3));
      EXPECT_EQ(space.sub(space.add(x, y), y), x);
    }
    EXPECT_EQ(space.add(x, space.neg(x)), 0u);
  }
}

TEST(SpaceTest, RejectsNonPrimeAndOversizedSpaces) {
  EXPECT_THROW(Space(4, 1), DomainError);
  EXPECT_THROW(Space(2, 40), CapacityError);
}

TEST(ArithmeticTest, PowersInversesValuations) {
  EXPECT_EQ(checked_pow(3, 4), 81);
  EXPECT_THROW(checked_pow(2, 70), CapacityError);
  for (std::int64_t a = 1; a < 27; ++a) {
    if (a % 3 == 0) {
      EXPECT_THROW(inverse_mod(a, 27), SingularityError);
    } else {
      EXPECT_EQ(mod(a * inverse_mod(a, 27), 27), 1);
    }
  }
  EXPECT_EQ(valuation(24, 2), 3);
  EXPECT_EQ(valuation(-18, 3), 2);
  EXPECT_EQ(mod(-7, 5), 3);
}

TEST(CyclicValueTest, OrderLiftAndProducts) {
  const CyclicValue a(6, 2, 3);  // e(6/8)
  EXPECT_EQ(a.order(), 4);
  EXPECT_EQ(a.lift(2).exponent(), 24);
  EXPECT_EQ(a.lift(2).order(), 4);
  EXPECT_EQ((a * a.conj()).exponent(), 0);
  EXPECT_EQ(a.pow(4).exponent(), 0);
  EXPECT_NEAR(std::abs(a.to_complex() - oracle::e(6, 8)), 0, 1e-15);
}

TEST(CharacterTest, EvaluatesDotProduct) {
  const Space space(3, 2);
  const Character chi{GroupPoint::from_index(space, 5)};
  for (std::size_t x = 0; x < space.size(); ++x) {
    const CyclicValue v = character_eval(chi, GroupPoint::from_index(space, x));
    EXPECT_EQ(v.exponent(), space.dot(5, x));
  }
}

TEST(KernelTest, GeneratorsSpanExactlyTheSolutions) {
  // Brute force over (Z/9)^3 for a fixed matrix.
  ModMatrix a(2, 3);
  a.at(0, 0) = 3; a.at(0, 1) = 1; a.at(0, 2) = 2;
  a.at(1, 0) = 0; a.at(1, 1) = 3; a.at(1, 2) = 6;
  const auto gens = kernel_mod_prime_power(a, 3, 2);
  std::size_t brute = 0;
  for (int x = 0; x < 9; ++x) {
    for (int y = 0; y < 9; ++y) {
      for (int z = 0; z < 9; ++z) {
        brute += mod(3 * x + y + 2 * z, 9) == 0 && mod(3 * y + 6 * z, 9) == 0;
      }
    }
  }
  int log_count = 0;
  for (const auto& g : gens) {
    log_count += g.log_order;
    EXPECT_EQ(mod(3 * g.generator[0] + g.generator[1] + 2 * g.generator[2], 9), 0);
    EXPECT_EQ(mod(3 * g.generator[1] + 6 * g.generator[2], 9), 0);
  }
  EXPECT_EQ(static_cast<std::size_t>(checked_pow(3, log_count)), brute);
}

TEST(InterpolationTest, ReproducesGridValues) {
  const int p = 3, l = 2, arity = 2;
  std::vector<std::int64_t> values(9);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<std::int64_t>(i * i % 9);
  const RingPolynomial f = RingPolynomial::interpolate(p, l, arity, values);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::vector<std::int64_t> args = {static_cast<std::int64_t>(i % 3),
                                            static_cast<std::int64_t>(i / 3)};
    EXPECT_EQ(f.evaluate(args), values[i]);
  }
}

}  // namespace
}  // namespace gowers
