#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "uodual/error.hpp"
#include "uodual/orlicz.hpp"

using namespace uodual;

namespace {

// sup over a uniform grid of 10^6 + 1 points on [0, s_max].
double brute_conjugate(const OrliczFunction& phi, double t, double s_max) {
  constexpr int kPoints = 1'000'000;
  double best = 0.0;
  for (int i = 0; i <= kPoints; ++i) {
    const double s = s_max * i / kPoints;
    best = std::max(best, s * t - phi(s));
  }
  return best;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

RandomVariable random_on(const SpacePtr& space, std::mt19937_64& rng, double lo = -3.0, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(space->size());
  for (auto& x : v) x = u(rng);
  return RandomVariable(space, v);
}

}  // namespace

TEST(OrliczFunction, Evaluation) {
  EXPECT_DOUBLE_EQ(OrliczFunction::power(3.0, 2.0)(2.0), 16.0);
  EXPECT_DOUBLE_EQ(OrliczFunction::normalized_power(2.0)(3.0), 4.5);
  EXPECT_NEAR(OrliczFunction::exponential()(1.0), std::exp(1.0) - 1.0, 1e-15);
  auto sampled = OrliczFunction::sampled(Eigen::Vector3d(0, 1, 2), Eigen::Vector3d(0, 1, 3));
  EXPECT_DOUBLE_EQ(sampled(0.5), 0.5);
  EXPECT_DOUBLE_EQ(sampled(1.5), 2.0);
  EXPECT_DOUBLE_EQ(sampled(3.0), 5.0);
  EXPECT_EQ(sampled.domain_cap(), 2.0);
}

TEST(OrliczFunction, SampledValidation) {
  EXPECT_THROW(OrliczFunction::sampled(Eigen::Vector3d(0, 1, 2), Eigen::Vector3d(0, 2, 3)), Error);  // concave
  EXPECT_THROW(OrliczFunction::sampled(Eigen::Vector3d(0, 2, 1), Eigen::Vector3d(0, 1, 3)), Error);
  EXPECT_THROW(OrliczFunction::sampled(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(0, 1, 3)), Error);
  EXPECT_THROW(OrliczFunction::sampled(Eigen::Vector3d(0, 1, 2), Eigen::Vector3d(0, 0, 0)), Error);
  EXPECT_THROW(OrliczFunction::power(0.5), Error);
}

TEST(Conjugate, MatchesBruteForceSup) {
  const std::vector<OrliczFunction> phis = {OrliczFunction::normalized_power(2.0),
                                            OrliczFunction::normalized_power(1.5), OrliczFunction::exponential()};
  for (const auto& phi : phis) {
    const OrliczFunction psi = conjugate(phi, {4.0, 4096, 1e-9});
    for (int i = 0; i <= 20; ++i) {
      const double t = psi.domain_cap() * i / 20.0;
      EXPECT_NEAR(psi(t), brute_conjugate(phi, t, 4.0), 1e-5) << phi.describe() << " t=" << t;
    }
  }
}

TEST(Conjugate, PiecewiseLinearPhiAtKnots) {
  // Psi has kinks at the slopes 0.5, 1.5, 3 of Phi; between its own knots
  // the interpolation may overshoot there, at the knots it may not.
  const auto phi = OrliczFunction::sampled(Eigen::Vector4d(0, 1, 2, 4), Eigen::Vector4d(0, 0.5, 2, 8));
  const OrliczFunction psi = conjugate(phi, {4.0, 4096, 1e-9});
  for (Eigen::Index i = 0; i < psi.knots().size(); i += 205)
    EXPECT_NEAR(psi.values()(i), brute_conjugate(phi, psi.knots()(i), 4.0), 1e-9);
  EXPECT_NEAR(psi.domain_cap(), 3.0, 1e-6);
}

TEST(Conjugate, LinearPhiGivesZeroOnUnitInterval) {
  const OrliczFunction psi = conjugate(OrliczFunction::power(1.0));
  // The cap is Phi's slope at s_max, taken by a finite difference.
  EXPECT_NEAR(psi.domain_cap(), 1.0, 1e-8);
  for (double t : {0.0, 0.3, 0.99, psi.domain_cap()}) EXPECT_NEAR(psi(t), 0.0, 1e-12);
}

TEST(Conjugate, IsConvexNondecreasingFromZero) {
  const OrliczFunction psi = conjugate(OrliczFunction::exponential(), {6.0, 2048, 1e-9});
  EXPECT_EQ(psi(0.0), 0.0);
  const auto& v = psi.values();
  const auto& k = psi.knots();
  for (Eigen::Index i = 1; i + 1 < v.size(); ++i) {
    EXPECT_GE(v(i), v(i - 1));
    const double chord = v(i - 1) + (v(i + 1) - v(i - 1)) * (k(i) - k(i - 1)) / (k(i + 1) - k(i - 1));
    EXPECT_LE(v(i), chord + 1e-9);
  }
}

TEST(Conjugate, YoungInequality) {
  const OrliczFunction phi = OrliczFunction::normalized_power(3.0);
  const OrliczFunction psi = conjugate(phi);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> s(0.0, 8.0), t(0.0, psi.domain_cap());
  for (int i = 0; i < 2000; ++i) EXPECT_GE(young_gap(phi, psi, s(rng), t(rng)), -1e-9);
  EXPECT_EQ(code_of([&] { young_gap(phi, psi, 1.0, psi.domain_cap() * 2); }), Errc::DomainExceeded);
}

TEST(Conjugate, Errors) {
  auto sampled = OrliczFunction::sampled(Eigen::Vector3d(0, 1, 2), Eigen::Vector3d(0, 1, 3));
  EXPECT_EQ(code_of([&] { conjugate(sampled, {5.0, 4096, 1e-9}); }), Errc::DomainExceeded);
  EXPECT_EQ(code_of([&] { conjugate(sampled, {2.0, 8, 1e-9}); }), Errc::InvalidArgument);
}

TEST(Luxemburg, PowerNormsMatchLp) {
  std::mt19937_64 rng(12);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = random_on(ProbabilitySpace::dyadic(int(rng() % 7)), rng);
      long double acc = 0;
      for (Eigen::Index i = 0; i < f.size(); ++i) acc += std::pow((long double)std::abs(f[i]), p) * f.space().weights()(i);
      const double lp = double(std::pow(acc, 1.0L / p));
      const auto r = luxemburg_norm(f, OrliczFunction::power(p));
      EXPECT_NEAR(r.value, lp, 2e-10);
      EXPECT_LE(r.bracket_lo, r.bracket_hi);
      EXPECT_LE(r.modular_at_value, 1.0);
    }
  }
}

TEST(Luxemburg, NormProperties) {
  std::mt19937_64 rng(13);
  const auto phi = OrliczFunction::exponential();
  const auto space = ProbabilitySpace::dyadic(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_on(space, rng), g = random_on(space, rng);
    const double c = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const double nf = luxemburg_norm(f, phi).value;
    EXPECT_NEAR(luxemburg_norm(c * f, phi).value, std::abs(c) * nf, 2e-10);
    EXPECT_LE(luxemburg_norm(f + g, phi).value, nf + luxemburg_norm(g, phi).value + 2e-10);
    EXPECT_LE(luxemburg_norm(0.5 * f, phi).value, nf + 1e-10);
  }
  EXPECT_EQ(luxemburg_norm(RandomVariable::constant(space, 0.0), phi).value, 0.0);
}

TEST(Luxemburg, ConstantFunctionHasInverseNorm) {
  // ||c||_Phi = c / Phi^{-1}(1); for e^s - 1 that is c / log 2.
  const auto f = RandomVariable::constant(ProbabilitySpace::dyadic(2), 2.0);
  EXPECT_NEAR(luxemburg_norm(f, OrliczFunction::exponential()).value, 2.0 / std::log(2.0), 1e-9);
}

TEST(Luxemburg, Errors) {
  // Phi = 0 on [0, 1]: the modular vanishes whenever |f| / lambda <= 1.
  auto flat = OrliczFunction::sampled(Eigen::Vector3d(0, 1, 2), Eigen::Vector3d(0, 0, 1), 1e300);
  const auto f = RandomVariable::constant(ProbabilitySpace::dyadic(1), 1.0);
  EXPECT_NO_THROW(luxemburg_norm(f, flat));
  auto capped = OrliczFunction::sampled(Eigen::Vector3d(0, 1, 2), Eigen::Vector3d(0, 0.01, 0.02));
  const auto spike = dyadic_indicator(6, 0, 1, 1.0);
  EXPECT_EQ(code_of([&] { luxemburg_norm(spike, capped); }), Errc::DomainExceeded);
  EXPECT_EQ(code_of([&] { luxemburg_norm(f, flat, 0.0); }), Errc::InvalidArgument);
}

TEST(Growth, Verdicts) {
  const std::vector<double> probes = {1, 2, 4, 8, 16, 32, 64};
  EXPECT_EQ(superlinear_growth(OrliczFunction::power(2.0), probes).verdict, GrowthVerdict::IncreasingUnbounded);
  EXPECT_EQ(superlinear_growth(OrliczFunction::power(1.0, 3.0), probes).verdict, GrowthVerdict::Bounded);
  auto kinked = OrliczFunction::sampled(Eigen::Vector3d(0, 1, 100), Eigen::Vector3d(0, 1, 199));
  // Phi(t)/t = 2 - 1/t: still rising, but by well under 1% on [50, 100].
  EXPECT_EQ(superlinear_growth(kinked, {50, 60, 70, 80, 90, 100}).verdict, GrowthVerdict::Inconclusive);
  const auto j = to_json(superlinear_growth(OrliczFunction::power(2.0), probes));
  EXPECT_TRUE(j.contains("probes") && j.contains("ratios") && j.contains("verdict"));
  EXPECT_EQ(j["heuristic"], true);
}

TEST(Delta2, PowerRatioIsConstant) {
  for (double p : {1.0, 2.0, 3.5}) {
    const auto r = delta2_ratio(OrliczFunction::power(p), 0.5, 10.0, 50);
    EXPECT_NEAR(r.ratio, std::pow(2.0, p), 1e-9);
  }
  const auto e = delta2_ratio(OrliczFunction::exponential(), 1.0, 20.0, 100);
  EXPECT_GT(e.ratio, std::exp(19.0));
  EXPECT_NEAR(e.argmax, 20.0, 1e-12);
  auto flat = OrliczFunction::sampled(Eigen::Vector3d(0, 1, 8), Eigen::Vector3d(0, 0, 1));
  EXPECT_EQ(code_of([&] { delta2_ratio(flat, 0.5, 1.0, 4); }), Errc::ZeroDenominator);
  EXPECT_EQ(code_of([&] { delta2_ratio(flat, 1.0, 5.0, 4); }), Errc::DomainExceeded);
}

TEST(OrliczIo, CsvRoundTrip) {
  const auto psi = conjugate(OrliczFunction::normalized_power(2.0), {4.0, 128, 1e-9});
  std::stringstream buf;
  write_csv(buf, psi);
  const auto back = read_orlicz_csv(buf);
  ASSERT_EQ(back.knots().size(), psi.knots().size());
  for (Eigen::Index i = 0; i < psi.knots().size(); ++i) {
    EXPECT_NEAR(back.knots()(i), psi.knots()(i), 1e-15 * (1 + psi.knots()(i)));
    EXPECT_NEAR(back.values()(i), psi.values()(i), 1e-15 * (1 + psi.values()(i)));
  }
  std::stringstream out;
  EXPECT_THROW(write_csv(out, OrliczFunction::power(2.0)), Error);
}
