#include "c0lab/errors.hpp"
#include "c0lab/inner_function.hpp"
#include "c0lab/serialize.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace c0lab;

namespace {

InnerFunction b(double a, int m = 1) { return InnerFunction::factor({a, 0.0}, m); }
InnerFunction z(int d) { return InnerFunction::z_power(d); }

// Random products over a small pool of points so that gcd/lcm are non-trivial.
InnerFunction random_inner(std::mt19937_64& rng) {
  static const Complex pool[] = {{0.0, 0.0}, {0.5, 0.0}, {-0.3, 0.2}, {0.1, -0.6}, {0.0, 0.45}};
  std::uniform_int_distribution<int> mult(0, 3);
  std::vector<BlaschkeZero> zs;
  for (const auto& p : pool)
    if (int m = mult(rng))
      zs.push_back({p, m});
  return InnerFunction(zs);
}

} // namespace

TEST(InnerFunction, DividesExamples) {
  EXPECT_TRUE(divides(z(1), z(2)));
  EXPECT_FALSE(divides(b(0.5), z(3)));
  EXPECT_TRUE(divides(z(1) * b(0.5), z(2) * b(0.5)));
}

TEST(InnerFunction, GcdExamples) {
  EXPECT_EQ(gcd(z(2) * b(0.5), z(1) * b(0.5, 2)), z(1) * b(0.5));
  EXPECT_EQ(gcd(z(3), InnerFunction()), InnerFunction());
  EXPECT_EQ(gcd(b(0.3), b(0.7)), InnerFunction());
}

TEST(InnerFunction, LcmExamples) {
  EXPECT_EQ(lcm(z(1), b(0.5)), z(1) * b(0.5));
  EXPECT_EQ(lcm(z(2), z(3)), z(3));
  const auto u = z(2) * b(-0.25);
  EXPECT_EQ(lcm(u, InnerFunction()), u);
}

TEST(InnerFunction, QuotientExamples) {
  EXPECT_EQ(quotient(z(3), z(1)), z(2));
  const auto theta = z(2) * b(0.5);
  EXPECT_EQ(quotient(theta, theta), InnerFunction());
  EXPECT_EQ(quotient(z(2) * b(0.5), b(0.5)), z(2));
  EXPECT_THROW(quotient(z(2), b(0.5)), NotADivisor);
}

TEST(InnerFunction, EvaluateExamples) {
  EXPECT_NEAR(std::abs(evaluate(z(2), 0.5) - 0.25), 0.0, 1e-15);
  EXPECT_EQ(evaluate(b(0.5), 0.5), Complex(0.0, 0.0));
  EXPECT_EQ(evaluate(InnerFunction(), {0.3, -0.2}), Complex(1.0, 0.0));
  EXPECT_THROW(evaluate(z(1), 1.0), OutsideDisc);
}

TEST(InnerFunction, ConstructionRules) {
  EXPECT_EQ(z(0).degree(), 0);
  EXPECT_TRUE(InnerFunction().is_one());
  // Points within the matching tolerance merge.
  InnerFunction merged({{{0.5, 0.0}, 1}, {{0.5 + 1e-10, 0.0}, 2}});
  EXPECT_EQ(merged.degree(), 3);
  EXPECT_EQ(merged.zeros().size(), 1u);
  EXPECT_THROW(InnerFunction({{{0.5, 0.0}, 1}, {{0.5 + 1e-8, 0.0}, 1}}), InvalidInnerFunction);
  EXPECT_THROW(InnerFunction({{{1.0, 0.0}, 1}}), InvalidInnerFunction);
  EXPECT_THROW(InnerFunction({{{0.2, 0.0}, 0}}), InvalidInnerFunction);
  EXPECT_THROW(z(65), InvalidInnerFunction);
  // Storage order is lexicographic on (re, im).
  InnerFunction u({{{0.3, 0.1}, 1}, {{-0.2, 0.4}, 1}, {{0.3, -0.1}, 1}});
  ASSERT_EQ(u.zeros().size(), 3u);
  EXPECT_EQ(u.zeros()[0].point, Complex(-0.2, 0.4));
  EXPECT_EQ(u.zeros()[1].point, Complex(0.3, -0.1));
}

TEST(InnerFunction, LatticeLaws) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto u = random_inner(rng), v = random_inner(rng), w = random_inner(rng);
    EXPECT_EQ(gcd(u, v), gcd(v, u));
    EXPECT_EQ(lcm(u, v), lcm(v, u));
    EXPECT_EQ(gcd(gcd(u, v), w), gcd(u, gcd(v, w)));
    EXPECT_EQ(lcm(lcm(u, v), w), lcm(u, lcm(v, w)));
    EXPECT_EQ(gcd(u, u), u);
    EXPECT_EQ(lcm(u, u), u);
    EXPECT_EQ(gcd(u, lcm(u, v)), u);
    EXPECT_EQ(lcm(u, gcd(u, v)), u);
    const bool d = divides(u, v);
    EXPECT_EQ(d, gcd(u, v) == u);
    EXPECT_EQ(d, lcm(u, v) == v);
    EXPECT_EQ(gcd(u, v).degree() + lcm(u, v).degree(), u.degree() + v.degree());
  }
}

TEST(InnerFunction, QuotientRoundTrip) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto u = random_inner(rng), w = random_inner(rng);
    const auto v = u * w;
    ASSERT_TRUE(divides(u, v));
    EXPECT_EQ(quotient(v, u) * u, v);
  }
}

TEST(InnerFunction, EvaluationIsBoundedAndMultiplicative) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> r(0.0, 0.999), arg(0.0, 6.283185307179586);
  for (int t = 0; t < 200; ++t) {
    const auto u = random_inner(rng), v = random_inner(rng);
    const Complex w = std::polar(r(rng), arg(rng));
    EXPECT_LE(std::abs(evaluate(u, w)), 1.0 + 1e-12);
    EXPECT_NEAR(std::abs(evaluate(u * v, w) - evaluate(u, w) * evaluate(v, w)), 0.0, 1e-12);
  }
}

TEST(InnerFunction, DivisorLatticeSize) {
  const auto theta = z(2) * b(0.5) * InnerFunction::factor({0.0, -0.3}, 3);
  const auto ds = divisors(theta);
  EXPECT_EQ(ds.size(), 3u * 2u * 4u);
  for (const auto& d : ds)
    EXPECT_TRUE(divides(d, theta));
}

TEST(InnerFunction, JsonRoundTrip) {
  const auto u = z(2) * InnerFunction::factor({0.123456789012345, -0.5}, 2);
  const auto back = inner_from_json(Json::parse(to_json(u).dump()));
  EXPECT_EQ(back, u);
  ASSERT_EQ(back.zeros().size(), u.zeros().size());
  for (std::size_t i = 0; i < u.zeros().size(); ++i)
    EXPECT_EQ(back.zeros()[i].point, u.zeros()[i].point);
  EXPECT_EQ(inner_from_json(Json::parse(R"({"zeros": []})")), InnerFunction());
  EXPECT_THROW(inner_from_json(Json::parse(R"({"zero": []})")), ParseError);
}
