#include <cmath>

#include <gtest/gtest.h>

#include "uodual/error.hpp"
#include "uodual/fatou.hpp"

using namespace uodual;

namespace {

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t(1) << k) < n) ++k;
  return k;
}

// n 1_[0,1/n] averaged over cell i of width 2^-level.
double spike_oracle(std::size_t n, int level, std::size_t i) {
  const double lo = std::ldexp(double(i), -level), hi = std::ldexp(double(i + 1), -level);
  const double overlap = std::max(0.0, std::min(hi, 1.0 / double(n)) - lo);
  return double(n) * overlap / (hi - lo);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ExtendedArithmetic;
}

RandomVariable zero() { return RandomVariable::constant(ProbabilitySpace::dyadic(0), 0.0); }
RandomVariable one() { return RandomVariable::constant(ProbabilitySpace::dyadic(0), 1.0); }

}  // namespace

TEST(Sequences, SpikeMatchesCellAverages) {
  const auto s = generate("spike");
  for (std::size_t n = 1; n <= 300; ++n) {
    const auto f = s(n);
    const int level = ceil_log2(n);
    ASSERT_EQ(f.space().level(), level);
    for (Eigen::Index i = 0; i < f.size(); ++i) EXPECT_NEAR(f[i], spike_oracle(n, level, std::size_t(i)), 1e-9);
    EXPECT_NEAR(integrate(f), 1.0, 1e-12);
  }
  EXPECT_TRUE(s.declared_limit.has_value());
}

TEST(Sequences, SpikeIsExactOnPowersOfTwo) {
  const auto s = generate("spike");
  for (int k = 0; k <= 10; ++k) {
    const auto f = s(std::size_t(1) << k);
    EXPECT_EQ(f[0], double(1 << k));
    for (Eigen::Index i = 1; i < f.size(); ++i) EXPECT_EQ(f[i], 0.0);
  }
}

TEST(Sequences, TypewriterSweepsCells) {
  const auto s = generate("typewriter");
  EXPECT_FALSE(s.ae_convergent);
  EXPECT_FALSE(s.declared_limit.has_value());
  for (std::size_t n = 1; n <= 200; ++n) {
    const int k = ceil_log2(n + 1) - 1;
    const std::size_t j = n - (std::size_t(1) << k);
    const auto f = refine(s(n), 8);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      const double x = std::ldexp(double(i), -8);
      const bool inside = x >= std::ldexp(double(j), -k) && x < std::ldexp(double(j + 1), -k);
      EXPECT_EQ(f[i], inside ? 1.0 : 0.0) << n << " " << i;
    }
  }
}

TEST(Sequences, OscillatingAndConstant) {
  const auto s = generate("oscillating");
  EXPECT_EQ(s(2)[0], 1.0);
  EXPECT_EQ(s(3)[0], -1.0);
  EXPECT_EQ(s(3)[1], 0.0);
  const RandomVariable base(ProbabilitySpace::dyadic(1), Eigen::Vector2d(2.0, -1.0));
  const auto c = generate("constant", base);
  EXPECT_EQ(c(17)[0], 2.0);
  EXPECT_EQ(code_of([] { generate("constant"); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { generate("sawtooth"); }), Errc::UnknownName);
  EXPECT_EQ(code_of([&] { s(0); }), Errc::InvalidArgument);
}

TEST(Lsc, NegExpectationFailsAlongSpike) {
  const auto r = check_bounded_uo_lsc(builtin("neg-expectation"), generate("spike"));
  EXPECT_EQ(r.verdict, LscVerdict::Violated);
  EXPECT_NEAR(r.liminf, -1.0, 1e-12);
  EXPECT_EQ(r.rho_at_limit, 0.0);
  EXPECT_EQ(r.values.size(), 64u);
  const auto j = to_json(r);
  EXPECT_EQ(j["verdict"], "violated");
  EXPECT_EQ(j["n_max"], 64);
}

TEST(Lsc, RepresentableFunctionalsHoldAlongSpike) {
  for (const char* name : {"expectation", "entropic", "avar", "worst-case", "quadratic", "ball-indicator"}) {
    const auto r = check_bounded_uo_lsc(builtin(name), generate("spike"));
    EXPECT_EQ(r.verdict, LscVerdict::SatisfiedEvidence) << name;
    EXPECT_LE(r.rho_at_limit, r.liminf + 1e-9) << name;
  }
}

TEST(Lsc, Errors) {
  EXPECT_EQ(code_of([] { check_bounded_uo_lsc(builtin("expectation"), generate("typewriter")); }),
            Errc::NotConvergent);
  LscOptions tight;
  tight.norm_bound = 0.5;
  EXPECT_EQ(code_of([&] { check_bounded_uo_lsc(builtin("expectation"), generate("spike"), tight); }),
            Errc::NotNormBounded);
  LscOptions tiny;
  tiny.n_max = 1;
  EXPECT_EQ(code_of([&] { check_bounded_uo_lsc(builtin("expectation"), generate("spike"), tiny); }),
            Errc::InvalidArgument);
}

TEST(Lsc, LiminfEstimate) {
  const std::vector<double> v = {5, 4, 3, 2, 1, 0};
  EXPECT_EQ(liminf_estimate(v, {1, 3, 5}), 1.0);
  EXPECT_EQ(liminf_estimate(v, {2, 4}), 2.0);
  EXPECT_EQ(code_of([&] { liminf_estimate(v, {7}); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { liminf_estimate(v, {}); }), Errc::InvalidArgument);
}

TEST(Extraction, TypewriterPicksLastCellOfEachSweep) {
  const auto r = extract_ae_subsequence(generate("typewriter"), one(), zero(), {256, 1e-9, 0});
  EXPECT_EQ(r.indices, (std::vector<std::size_t>{2, 6, 14, 30, 62, 126, 254, 256}));
  for (std::size_t k = 0; k < r.certificates.size(); ++k)
    EXPECT_DOUBLE_EQ(r.certificates[k], std::ldexp(1.0, -int(k + 1)));
  EXPECT_TRUE(r.ae_verdict.passed);
  EXPECT_EQ(r.ae_verdict.level, 8);
  EXPECT_TRUE(r.ae_verdict.failing_cells.empty());
  const auto j = to_json(r);
  EXPECT_EQ(j["ae_verdict"]["passed"], true);
  EXPECT_EQ(j["indices"].size(), 8u);
}

TEST(Extraction, OscillatingAroundZeroStalls) {
  EXPECT_EQ(code_of([] { extract_ae_subsequence(generate("oscillating"), one(), zero(), {256, 1e-9, 0}); }),
            Errc::ExtractionStalled);
}

TEST(Extraction, OscillatingEvenTermsConverge) {
  const auto target = dyadic_indicator(1, 0, 1, 1.0);
  const auto r = extract_ae_subsequence(generate("oscillating"), one(), target, {64, 1e-9, 0});
  for (std::size_t n : r.indices) EXPECT_EQ(n % 2, 0u);
  EXPECT_TRUE(r.ae_verdict.passed);
}

TEST(Extraction, Errors) {
  EXPECT_EQ(code_of([] { extract_ae_subsequence(generate("spike"), zero(), zero()); }), Errc::InvalidArgument);
}

TEST(Recurrence, TypewriterHitsEveryCell) {
  const auto r = recurrence_report(generate("typewriter"), zero(), 256);
  EXPECT_TRUE(r.all_recurrent);
  EXPECT_GE(r.windows, 3u);
  for (std::size_t hits : r.windows_hit) EXPECT_EQ(hits, r.windows);
  const auto spike = recurrence_report(generate("spike"), zero(), 256);
  EXPECT_FALSE(spike.all_recurrent);
  EXPECT_EQ(code_of([] { recurrence_report(generate("typewriter"), zero(), 4); }), Errc::InvalidArgument);
}

TEST(NormBound, SpikeIsBoundedOnlyInL1) {
  const auto l1 = verify_norm_bounded(generate("spike"), OrliczFunction::power(1.0), 64);
  EXPECT_NEAR(l1.bound, 1.0, 1e-9);
  EXPECT_FALSE(l1.unbounded_evidence);
  const auto l2 = verify_norm_bounded(generate("spike"), OrliczFunction::power(2.0), 64);
  EXPECT_TRUE(l2.unbounded_evidence);
  // ||n 1_[0,1/n]||_2 = sqrt(n) at powers of two.
  EXPECT_NEAR(l2.norms[63], 8.0, 1e-8);
  EXPECT_EQ(to_json(l2)["unbounded_evidence"], true);
}
