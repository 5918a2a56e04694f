#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "epr/analytics.hpp"
#include "epr/rng.hpp"

using namespace epr;

namespace {

const SourceModel kEnt = EntangledPair{};
const SourceModel kDis = DisentangledEnsemble{};

CoincidenceCounts counts(std::uint64_t pp, std::uint64_t pm, std::uint64_t mp, std::uint64_t mm) {
  return {pp, pm, mp, mm, pp + pm + mp + mm, 0};
}

}  // namespace

TEST(Analytics, CorrelationFromCounts) {
  EXPECT_EQ(correlation_from_counts(counts(0, 500, 500, 0)).value, -1.0);
  EXPECT_EQ(correlation_from_counts(counts(250, 250, 250, 250)).value, 0.0);
  const auto e = correlation_from_counts(counts(125, 375, 375, 125));
  EXPECT_EQ(e.value, -0.5);
  EXPECT_EQ(e.n, 1000u);
  EXPECT_NEAR(e.std_err, std::sqrt(0.75 / 1000), 1e-15);
  EXPECT_THROW(correlation_from_counts(CoincidenceCounts{}), ValidationError);
}

TEST(Analytics, FitVisibilityExamples) {
  const std::vector<double> ang{0.0, kPi / 8, kPi / 4, 3 * kPi / 8};
  for (double v : {1.0, 0.5}) {
    std::vector<double> e;
    for (double a : ang) e.push_back(-v * std::cos(2 * a));
    const auto fit = fit_visibility(ang, e);
    EXPECT_NEAR(fit.v, v, 1e-12);
    EXPECT_NEAR(fit.rms_residual, 0.0, 1e-12);
  }
  EXPECT_NEAR(fit_visibility(std::vector<double>{0.0}, std::vector<double>{-0.46}).v, 0.46, 1e-15);
}

TEST(Analytics, FitVisibilityScaleEquivariant) {
  const std::vector<double> ang{0.1, 0.4, 0.9};
  const std::vector<double> e{-0.8, -0.2, 0.1};
  std::vector<double> e3;
  for (double x : e) e3.push_back(3.0 * x);
  EXPECT_NEAR(fit_visibility(ang, e3).v, 3.0 * fit_visibility(ang, e).v, 1e-15);
}

TEST(Analytics, FitVisibilityRejections) {
  const std::vector<double> q{kPi / 4, 3 * kPi / 4};
  EXPECT_THROW(fit_visibility(q, std::vector<double>{0.1, 0.2}), ValidationError);
  EXPECT_THROW(fit_visibility(q, std::vector<double>{0.1}), ValidationError);
  EXPECT_THROW(fit_visibility(std::vector<double>{}, std::vector<double>{}), ValidationError);
}

TEST(Analytics, WeightedFit) {
  const std::vector<double> ang{0.0, kPi / 8};
  const std::vector<double> e{-1.0, -std::cos(kPi / 4)};
  const std::vector<double> se{0.01, 0.02};
  EXPECT_NEAR(fit_visibility(ang, e, se).v, 1.0, 1e-12);
  EXPECT_THROW(fit_visibility(ang, e, std::vector<double>{0.01}), ValidationError);
}

TEST(Analytics, ChshExamples) {
  const ChshAngles opt{0.0, kPi / 4, kPi / 8, 3 * kPi / 8};
  EXPECT_NEAR(std::abs(chsh_analytic(kEnt, opt)), 2 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(std::abs(chsh_analytic(kDis, opt)), std::sqrt(2.0), 1e-9);
  EXPECT_EQ(chsh(0, 0, 0, 0), 0.0);
  for (double v : {0.0, 0.3, 0.5, 1.0}) {
    const double s = chsh(-v * std::cos(2 * (opt.a - opt.b)), -v * std::cos(2 * (opt.a - opt.b2)),
                          -v * std::cos(2 * (opt.a2 - opt.b)), -v * std::cos(2 * (opt.a2 - opt.b2)));
    EXPECT_NEAR(std::abs(s), 2 * std::sqrt(2.0) * v, 1e-12);
  }
}

TEST(Analytics, ChshBoundsOverRandomQuadruples) {
  RandomStream rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const ChshAngles x{kPi * rng.uniform(), kPi * rng.uniform(), kPi * rng.uniform(), kPi * rng.uniform()};
    EXPECT_LE(std::abs(chsh_analytic(kDis, x)), 2.0 + 1e-9);
    EXPECT_LE(std::abs(chsh_analytic(kEnt, x)), 2 * std::sqrt(2.0) + 1e-9);
  }
}

TEST(Analytics, OffsetPeakRatio) {
  Curve c;
  c.points = {{0, 0.5, {}}, {1, 0.5, {}}};
  EXPECT_EQ(offset_peak_ratio(c), 1.0);
  c.points = {{0, 0.0, {}}, {1, 0.0, {}}};
  EXPECT_THROW(offset_peak_ratio(c), ValidationError);
  EXPECT_THROW(offset_peak_ratio(Curve{}), ValidationError);
}

TEST(Analytics, SubtractAccidentals) {
  const auto raw = counts(100, 300, 280, 120);
  EXPECT_EQ(subtract_accidentals(raw, 0), raw);
  const auto sub = subtract_accidentals(raw, 50);
  EXPECT_EQ(sub.n_pp, 50u);
  EXPECT_EQ(sub.n_mp, 230u);
  const double e0 = correlation_from_counts(raw).value;
  const double e1 = correlation_from_counts(sub).value;
  EXPECT_GT(std::abs(e1), std::abs(e0));
  EXPECT_EQ(std::signbit(e0), std::signbit(e1));
  EXPECT_THROW(subtract_accidentals(raw, 101), ValidationError);
}

TEST(Analytics, VisibilityCorrectionBruteForce) {
  // T = 1e6 detected, raw V 0.46; floor A = round(T * fraction) per channel.
  const double frac = accidental_floor_fraction(0.46, 0.87);
  EXPECT_NEAR(frac, 0.11781609195402298, 1e-15);
  const auto raw = counts(135000, 365000, 365000, 135000);
  EXPECT_NEAR(correlation_from_counts(raw).value, -0.46, 1e-15);
  const auto a = static_cast<std::uint64_t>(std::llround(1e6 * frac));
  EXPECT_EQ(a, 117816u);
  const auto corr = subtract_accidentals(raw, a);
  EXPECT_NEAR(correlation_from_counts(corr).value, -0.8699993947830297, 1e-15);
  EXPECT_THROW(accidental_floor_fraction(0.9, 0.5), ValidationError);
}
