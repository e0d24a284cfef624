#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "uodual/error.hpp"
#include "uodual/lattice.hpp"
#include "uodual/tail_vector.hpp"

using namespace uodual;

namespace {

constexpr std::size_t kTerms = 10'000;

// Truncated coordinate oracle, evaluated straight from the tail formula.
double raw_at(const std::vector<double>& prefix, double c, const std::vector<GeometricTerm>& terms, std::size_t k) {
  if (k < prefix.size()) return prefix[k];
  double v = c;
  for (const auto& t : terms) v += t.a * std::pow(t.r, double(k - prefix.size()));
  return v;
}

struct Raw {
  std::vector<double> prefix;
  double c = 0.0;
  std::vector<GeometricTerm> terms;
  TailVector build() const { return TailVector(prefix, Tail::mixed(c, terms)); }
  double at(std::size_t k) const { return raw_at(prefix, c, terms, k); }
};

Raw random_raw(std::mt19937_64& rng, bool vanishing) {
  std::uniform_real_distribution<double> u(-2.0, 2.0), r(0.05, 0.95);
  Raw x;
  x.prefix.resize(rng() % 8);
  for (auto& v : x.prefix) v = u(rng);
  if (!vanishing && rng() % 2) x.c = u(rng);
  const std::size_t n = rng() % 3;
  for (std::size_t i = 0; i < n; ++i) x.terms.push_back({u(rng), r(rng)});
  return x;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ExtendedArithmetic;
}

VectorSequence sequence(std::function<TailVector(std::size_t)> g, std::size_t horizon) {
  VectorSequence s;
  s.generator = std::move(g);
  s.horizon = horizon;
  return s;
}

}  // namespace

TEST(TailVector, CoordinatesMatchFormula) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Raw raw = random_raw(rng, false);
    const TailVector x = raw.build();
    for (std::size_t k = 0; k < 200; ++k) EXPECT_NEAR(x.at(k), raw.at(k), 1e-12);
  }
}

TEST(TailVector, LatticeOpsMatchTruncation) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Raw a = random_raw(rng, false), b = random_raw(rng, false);
    const TailVector x = a.build(), y = b.build();
    const TailVector ax = abs(x), m = meet(x, y), j = join(x, y), p = positive_part(x), s = x + y, d = x - y;
    for (std::size_t k = 0; k < kTerms; k += 37) {
      const double xa = a.at(k), yb = b.at(k);
      EXPECT_NEAR(ax.at(k), std::abs(xa), 1e-12);
      EXPECT_NEAR(m.at(k), std::min(xa, yb), 1e-12);
      EXPECT_NEAR(j.at(k), std::max(xa, yb), 1e-12);
      EXPECT_NEAR(p.at(k), std::max(xa, 0.0), 1e-12);
      EXPECT_NEAR(s.at(k), xa + yb, 1e-12);
      EXPECT_NEAR(d.at(k), xa - yb, 1e-12);
    }
  }
}

TEST(TailVector, LatticeIdentities) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const TailVector x = random_raw(rng, false).build(), y = random_raw(rng, false).build();
    EXPECT_TRUE(equivalent(meet(x, y) + join(x, y), x + y, 1e-12));
    EXPECT_TRUE(equivalent(positive_part(x) - positive_part(-1.0 * x), x, 1e-12));
    EXPECT_TRUE(equivalent(abs(x), join(x, -1.0 * x), 1e-12));
    EXPECT_TRUE(equivalent(meet(x, y), meet(y, x)));
  }
}

TEST(TailVector, SignSwitchover) {
  // 1 - 4 (1/2)^j is negative for j < 2 and positive from j = 2 on.
  const auto sw = sign_switchover(Tail::mixed(1.0, {{-4.0, 0.5}}));
  EXPECT_EQ(sw.sign, 1);
  for (std::size_t j = sw.index; j < sw.index + 100; ++j) EXPECT_GT(1.0 - 4.0 * std::pow(0.5, double(j)), 0.0);
  EXPECT_LE(sw.index, 8u);
  EXPECT_EQ(sign_switchover(Tail::zero()).sign, 0);
  EXPECT_EQ(sign_switchover(Tail::geometric(-1.0, 0.3)).sign, -1);
}

TEST(TailVector, DualPairingMatchesTruncation) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const Raw a = random_raw(rng, true), b = random_raw(rng, false);
    long double sum = 0;
    for (std::size_t k = 0; k < kTerms; ++k) sum += (long double)a.at(k) * b.at(k);
    EXPECT_NEAR(dual_pairing(a.build(), b.build()), double(sum), 1e-9);
    EXPECT_NEAR(dual_pairing(b.build(), a.build()), double(sum), 1e-9);
  }
  EXPECT_EQ(code_of([] { dual_pairing(TailVector::constant(1.0), TailVector::constant(2.0)); }),
            Errc::FunctionalNotBounded);
}

TEST(TailVector, ModelNorms) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const Raw a = random_raw(rng, true);
    long double l1 = 0;
    double sup = 0;
    for (std::size_t k = 0; k < kTerms; ++k) {
      l1 += std::abs(a.at(k));
      sup = std::max(sup, std::abs(a.at(k)));
    }
    const TailVector x = a.build();
    EXPECT_NEAR(model_norm(x, SpaceModel::Ell1), double(l1), 1e-9);
    EXPECT_NEAR(model_norm(x, SpaceModel::C0), sup, 1e-12);
    EXPECT_TRUE(is_member(x, SpaceModel::Ell1));
  }
  const TailVector ones = TailVector::constant(1.0);
  EXPECT_TRUE(std::isinf(model_norm(ones, SpaceModel::Ell1)));
  EXPECT_FALSE(is_member(ones, SpaceModel::C0));
  EXPECT_TRUE(is_member(ones, SpaceModel::EllInfty));
  EXPECT_EQ(model_norm(ones, SpaceModel::EllInfty), 1.0);
}

TEST(TailVector, JsonRoundTrip) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const TailVector x = random_raw(rng, false).build();
    EXPECT_TRUE(equivalent(tail_vector_from_json(to_json(x)), x));
  }
  EXPECT_EQ(code_of([] { tail_vector_from_json(nlohmann::json{{"prefix", "x"}}); }), Errc::InvalidArgument);
}

TEST(TailVector, Validation) {
  EXPECT_EQ(code_of([] { TailVector::unit(0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { Tail::geometric(1.0, 1.0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { space_model_from_string("ell2"); }), Errc::UnknownName);
  EXPECT_EQ(space_model_from_string("c0"), SpaceModel::C0);
}

TEST(UoConvergence, UnitVectorsAreUoNullButNotOrderNullInEll1) {
  const auto s = sequence([](std::size_t n) { return TailVector::unit(n); }, 64);
  EXPECT_TRUE(is_uo_null(s, SpaceModel::Ell1, 1e-12).null_evidence);
  EXPECT_FALSE(is_order_null(s, SpaceModel::Ell1, 1e-9).order_null_evidence);
  EXPECT_TRUE(is_disjoint(s).disjoint);
}

TEST(UoConvergence, GeometricallyScaledUnitsAreOrderNull) {
  const auto s = sequence([](std::size_t n) { return TailVector::unit(n, std::pow(0.5, double(n))); }, 64);
  EXPECT_TRUE(is_order_null(s, SpaceModel::Ell1, 1e-9).order_null_evidence);
  // With weights 1/n^2 the envelope still gains ~1/(2H) when the window
  // doubles, which the stability test reads as unbounded.
  const auto slow = sequence([](std::size_t n) { return TailVector::unit(n, 1.0 / double(n * n)); }, 64);
  EXPECT_FALSE(is_order_null(slow, SpaceModel::Ell1, 1e-9).order_bounded_tail);
}

TEST(UoConvergence, ConstantIsNotUoNull) {
  const auto s = sequence([](std::size_t) { return TailVector::unit(3); }, 64);
  const auto r = is_uo_null(s, SpaceModel::C0, 1e-12);
  EXPECT_FALSE(r.null_evidence);
  EXPECT_EQ(r.witness_coordinate, 3u);
  EXPECT_EQ(to_json(r)["witness"]["coordinate"], 3);
}

TEST(UoConvergence, HarmonicDecayCounts) {
  const auto s = sequence([](std::size_t n) { return TailVector::constant(1.0 / double(n)); }, 64);
  EXPECT_TRUE(is_uo_null(s, SpaceModel::EllInfty, 1e-12).null_evidence);
}

TEST(UoConvergence, OverlappingBlocksAreNotDisjoint) {
  const auto s = sequence([](std::size_t n) { return TailVector::block(n, n + 2); }, 10);
  const auto r = is_disjoint(s);
  EXPECT_FALSE(r.disjoint);
  EXPECT_EQ(r.first, 1u);
  EXPECT_EQ(r.second, 2u);
  EXPECT_EQ(code_of([] { is_uo_null(sequence([](std::size_t) { return TailVector(); }, 4), SpaceModel::C0, 0.0); }),
            Errc::InvalidArgument);
}

TEST(OcPart, EllInftyNeedsVanishingTail) {
  EXPECT_TRUE(oc_part_membership(TailVector({5.0}, Tail::geometric(1.0, 0.5)), SpaceModel::EllInfty).member);
  const auto r = oc_part_membership(TailVector({3.0}, Tail::constant(-2.0)), SpaceModel::EllInfty);
  EXPECT_FALSE(r.member);
  ASSERT_EQ(r.witness_blocks.size(), 8u);
  for (double n : r.witness_norms) EXPECT_GE(n, 1.0);
  EXPECT_TRUE(oc_part_membership(TailVector({1.0}), SpaceModel::Ell1).member);
  EXPECT_EQ(code_of([] { oc_part_membership(TailVector::constant(1.0), SpaceModel::C0); }), Errc::InvalidArgument);
}

TEST(UoDual, OnesOnEll1IsViolatedByUnitVectors) {
  const auto r = uo_dual_test(TailVector::constant(1.0), SpaceModel::Ell1, 200, 7);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.generator, "unit-vectors");
  ASSERT_FALSE(r.witness_indices.empty());
  EXPECT_EQ(r.witness_indices.front(), 151u);
  EXPECT_TRUE(equivalent(*r.witness_element, TailVector::unit(151)));
  EXPECT_EQ(r.witness_values.front(), 1.0);
}

TEST(UoDual, SummablePhiIsConsistent) {
  for (SpaceModel m : {SpaceModel::Ell1, SpaceModel::C0, SpaceModel::EllInfty}) {
    const auto r = uo_dual_test(TailVector({1.0, -2.0}, Tail::geometric(1.0, 0.5)), m, 200, 7);
    EXPECT_TRUE(r.consistent) << to_string(m);
    EXPECT_TRUE(to_json(r)["witness"].is_null());
  }
}

TEST(UoDual, Errors) {
  EXPECT_EQ(code_of([] { uo_dual_test(TailVector::constant(1.0), SpaceModel::C0, 200, 7); }),
            Errc::FunctionalNotBounded);
  EXPECT_EQ(code_of([] { uo_dual_test(TailVector::zero(), SpaceModel::Ell1, 99, 7); }), Errc::InvalidArgument);
}

TEST(UoDual, Deterministic) {
  const TailVector phi({0.5}, Tail::mixed(0.25, {{1.0, 0.9}}));
  const auto a = uo_dual_test(phi, SpaceModel::Ell1, 300, 42), b = uo_dual_test(phi, SpaceModel::Ell1, 300, 42);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(uo_dual_expected(SpaceModel::Ell1), SpaceModel::C0);
  EXPECT_EQ(uo_dual_expected(SpaceModel::EllInfty), SpaceModel::Ell1);
}
