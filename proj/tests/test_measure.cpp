#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "uodual/error.hpp"
#include "uodual/extended_real.hpp"
#include "uodual/measure.hpp"
#include "uodual/measure_io.hpp"

using namespace uodual;

namespace {

RandomVariable random_on(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Eigen::VectorXd v(space->size());
  for (auto& x : v) x = u(rng);
  return RandomVariable(space, v);
}

// Plain long double accumulation.
long double naive_integral(const RandomVariable& f) {
  long double s = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += (long double)f[i] * (long double)f.space().weights()(i);
  return s;
}

}  // namespace

TEST(Space, DyadicWeights) {
  for (int level = 0; level <= 10; ++level) {
    auto s = ProbabilitySpace::dyadic(level);
    EXPECT_EQ(s->size(), 1 << level);
    EXPECT_EQ(s->level(), level);
    EXPECT_DOUBLE_EQ(s->weights().sum(), 1.0);
  }
  EXPECT_THROW(ProbabilitySpace::dyadic(-1), Error);
  EXPECT_THROW(ProbabilitySpace::dyadic(kMaxDyadicLevel + 1), Error);
}

TEST(Space, RejectsBadWeights) {
  EXPECT_THROW(ProbabilitySpace::make({"a", "b"}, Eigen::Vector2d(0.5, 0.6)), Error);
  EXPECT_THROW(ProbabilitySpace::make({"a", "b"}, Eigen::Vector2d(1.0, 0.0)), Error);
  EXPECT_THROW(ProbabilitySpace::make({"a"}, Eigen::Vector2d(0.5, 0.5)), Error);
  EXPECT_NO_THROW(ProbabilitySpace::make({}, Eigen::Vector2d(0.25, 0.75)));
}

TEST(RandomVariable, RejectsNonFinite) {
  auto s = ProbabilitySpace::uniform(2);
  EXPECT_THROW(RandomVariable(s, Eigen::Vector2d(1.0, std::nan(""))), Error);
}

TEST(Integrate, MatchesLongDoubleSum) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = ProbabilitySpace::dyadic(int(rng() % 9));
    auto f = random_on(s, rng);
    EXPECT_NEAR(integrate(f), double(naive_integral(f)), 1e-13);
  }
}

TEST(Integrate, CompensationBeatsCancellation) {
  auto s = ProbabilitySpace::dyadic(2);
  RandomVariable f(s, Eigen::Vector4d(1e16, 1.0, -1e16, 1.0));
  EXPECT_DOUBLE_EQ(integrate(f), 0.5);
}

TEST(Refine, PreservesIntegralAndValues) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int level = int(rng() % 6);
    auto f = random_on(ProbabilitySpace::dyadic(level), rng);
    const int finer = level + int(rng() % 4);
    auto g = refine(f, finer);
    EXPECT_EQ(g.size(), Eigen::Index(1) << finer);
    EXPECT_NEAR(integrate(g), integrate(f), 1e-12);
    for (Eigen::Index i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], f[i >> (finer - level)]);
  }
}

TEST(Refine, Errors) {
  auto u = RandomVariable::constant(ProbabilitySpace::uniform(3), 1.0);
  EXPECT_THROW(refine(u, 2), Error);
  auto d = RandomVariable::constant(ProbabilitySpace::dyadic(3), 1.0);
  try {
    refine(d, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidArgument);
  }
}

TEST(Pairing, AcrossLevelsEqualsFinePairing) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_on(ProbabilitySpace::dyadic(2), rng);
    auto g = random_on(ProbabilitySpace::dyadic(5), rng);
    long double direct = 0;
    for (Eigen::Index i = 0; i < 32; ++i) direct += (long double)f[i / 8] * g[i] / 32.0L;
    EXPECT_NEAR(pairing(f, g), double(direct), 1e-12);
    EXPECT_DOUBLE_EQ(pairing(f, g), pairing(g, f));
  }
}

TEST(Pairing, Bilinear) {
  std::mt19937_64 rng(4);
  auto s = ProbabilitySpace::dyadic(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_on(s, rng), g = random_on(s, rng), h = random_on(s, rng);
    const double c = double(rng() % 7) - 3.0;
    EXPECT_NEAR(pairing(c * f + g, h), c * pairing(f, h) + pairing(g, h), 1e-10);
  }
}

TEST(Pairing, IncompatibleSpaces) {
  auto f = RandomVariable::constant(ProbabilitySpace::uniform(3), 1.0);
  auto g = RandomVariable::constant(ProbabilitySpace::dyadic(1), 1.0);
  try {
    pairing(f, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IncompatibleSpaces);
  }
  auto h = RandomVariable::constant(ProbabilitySpace::uniform(3), 2.0);
  EXPECT_DOUBLE_EQ(pairing(f, h), 2.0);
}

TEST(DyadicIndicator, Integral) {
  for (int level = 0; level <= 6; ++level)
    for (Eigen::Index b = 0; b <= (1 << level); ++b) {
      auto f = dyadic_indicator(level, b, 1 << level, 3.0);
      EXPECT_DOUBLE_EQ(integrate(f), 3.0 * double((1 << level) - b) / double(1 << level));
    }
  EXPECT_THROW(dyadic_indicator(2, 3, 5), Error);
}

TEST(Lattice, AbsAndSup) {
  auto s = ProbabilitySpace::dyadic(1);
  RandomVariable f(s, Eigen::Vector2d(-3.0, 2.0));
  EXPECT_EQ(sup_abs(f), 3.0);
  EXPECT_EQ(abs(f)[0], 3.0);
  EXPECT_EQ(product(f, f)[0], 9.0);
}

TEST(ExtendedReal, Conventions) {
  using namespace uodual::ext;
  EXPECT_EQ(add(kInf, 3.0), kInf);
  EXPECT_EQ(sub(kInf, 3.0), kInf);
  EXPECT_THROW(sub(kInf, kInf), Error);
  EXPECT_THROW(mul(0.0, kInf), Error);
  EXPECT_EQ(mul(-2.0, kInf), -kInf);
}

TEST(MeasureIo, JsonRoundTrip) {
  auto s = ProbabilitySpace::make({"x", "y", "z"}, Eigen::Vector3d(0.2, 0.3, 0.5));
  auto back = space_from_json(space_to_json(*s));
  EXPECT_TRUE(back->same_as(*s));
  auto d = space_from_json(space_to_json(*ProbabilitySpace::dyadic(3)));
  EXPECT_EQ(d->level(), 3);
}

TEST(MeasureIo, CsvRoundTrip) {
  auto s = ProbabilitySpace::dyadic(3);
  std::mt19937_64 rng(5);
  auto f = random_on(s, rng);
  std::stringstream buf;
  write_csv(buf, f);
  auto g = read_csv(buf, s);
  for (Eigen::Index i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);

  std::stringstream bad("index,weight,value\n0,0.5,1\n");
  EXPECT_THROW(read_csv(bad, ProbabilitySpace::dyadic(1)), Error);
}
