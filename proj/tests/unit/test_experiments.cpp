#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "epr/analytics.hpp"
#include "epr/experiments.hpp"

using namespace epr;

namespace {

const SourceModel kEnt = EntangledPair{};
const SourceModel kDis = DisentangledEnsemble{};

std::vector<double> full_turn(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(kTwoPi * i / n);
  return g;
}

double mean_y(const Curve& c) {
  double s = 0.0;
  for (const auto& p : c.points) s += p.y;
  return s / static_cast<double>(c.points.size());
}

double span_y(const Curve& c) {
  const auto [lo, hi] = std::minmax_element(c.points.begin(), c.points.end(),
                                            [](auto& p, auto& q) { return p.y < q.y; });
  return hi->y - lo->y;
}

}  // namespace

TEST(Experiments, AspectProbabilities) {
  const auto e = aspect_probabilities(kEnt, PolarizerSetting(0.0), PolarizerSetting(0.0));
  EXPECT_NEAR(e.pp, 0.0, 1e-15);
  EXPECT_NEAR(e.pm, 0.5, 1e-15);
  EXPECT_NEAR(e.mp, 0.5, 1e-15);
  EXPECT_NEAR(e.mm, 0.0, 1e-15);
  const auto d = aspect_probabilities(kDis, PolarizerSetting(0.0), PolarizerSetting(0.0));
  EXPECT_NEAR(d.pp, 0.125, 1e-15);
  EXPECT_NEAR(d.pm, 0.375, 1e-15);
  const auto q = aspect_probabilities(kDis, PolarizerSetting(kPi / 4), PolarizerSetting(0.0));
  for (double p : {q.pp, q.pm, q.mp, q.mm}) EXPECT_NEAR(p, 0.25, 1e-12);
}

TEST(Experiments, GisinAnchors) {
  EXPECT_NEAR(gisin_expectation(kEnt, 0.0, M_SQRT1_2, M_SQRT1_2), 0.0, 1e-15);
  EXPECT_NEAR(gisin_expectation(kEnt, kPi, M_SQRT1_2, M_SQRT1_2), 0.25, 1e-15);
  EXPECT_NEAR(gisin_expectation(kDis, 0.0, M_SQRT1_2, M_SQRT1_2), 0.0625, 1e-15);
  EXPECT_NEAR(gisin_expectation(kDis, kPi, M_SQRT1_2, M_SQRT1_2), 0.1875, 1e-15);
  EXPECT_NEAR(gisin_expectation(kDis, kPi / 2, M_SQRT1_2, M_SQRT1_2), 0.125, 1e-15);
}

TEST(Experiments, GisinUnequalAmplitudes) {
  // a0 a1 = 0 removes the beta dependence.
  EXPECT_EQ(gisin_expectation(kEnt, 0.0, 1.0, 0.0), 0.125);
  EXPECT_EQ(gisin_expectation(kDis, 2.0, 0.0, 1.0), 0.125);
  const double a0 = std::cos(0.3), a1 = std::sin(0.3);
  EXPECT_NEAR(gisin_expectation(kEnt, 0.7, a0, a1), (1 - 2 * a0 * a1 * std::cos(0.7)) / 8, 1e-15);
  EXPECT_THROW(gisin_expectation(kEnt, 0.0, 0.9, 0.9), ValidationError);
}

TEST(Experiments, ZeilingerTable) {
  EXPECT_EQ(zeilinger_rate(kEnt, Diagonal::Plus, Diagonal::Plus), 0.25);
  EXPECT_EQ(zeilinger_rate(kEnt, Diagonal::Plus, Diagonal::Minus), 0.0);
  EXPECT_EQ(zeilinger_rate(kDis, Diagonal::Minus, Diagonal::Minus), 0.1875);
  EXPECT_EQ(zeilinger_rate(kDis, Diagonal::Minus, Diagonal::Plus), 0.0625);
  EXPECT_NEAR(zeilinger_relative_intensity(kDis), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(zeilinger_relative_intensity(kEnt), 0.0);
}

TEST(Experiments, KimAnchors) {
  EXPECT_NEAR(kim_expectation(kEnt, KimDetector::I, kPi / 4), 0.25, 1e-15);
  EXPECT_NEAR(kim_expectation(kEnt, KimDetector::II, kPi / 4), 0.0, 1e-15);
  EXPECT_NEAR(kim_expectation(kDis, KimDetector::I, kPi / 4), 0.1875, 1e-15);
  EXPECT_NEAR(kim_expectation(kDis, KimDetector::II, kPi / 4), 0.0625, 1e-15);
  for (auto m : {kEnt, kDis}) {
    for (auto d : {KimDetector::I, KimDetector::II}) {
      EXPECT_NEAR(kim_expectation(m, d, kPi / 2), 0.125, 1e-15);
    }
  }
}

TEST(Experiments, CurveMeansAmplitudesAndRatios) {
  const auto grid = full_turn(64);
  for (auto kind : {ExperimentKind::GisinTriple, ExperimentKind::KimCompleteBsm}) {
    const Curve e = sweep(kind, kEnt, grid, Engine::Analytic);
    const Curve d = sweep(kind, kDis, grid, Engine::Analytic);
    EXPECT_NEAR(mean_y(e), 0.125, 1e-12);
    EXPECT_NEAR(mean_y(d), 0.125, 1e-12);
    EXPECT_NEAR(span_y(d), 0.5 * span_y(e), 1e-15);
    for (const auto& c : {e, d}) {
      for (const auto& p : c.points) {
        EXPECT_GE(p.y, -1e-15);
        EXPECT_LE(p.y, 0.25 + 1e-15);
      }
    }
  }
  const Curve gd = sweep(ExperimentKind::GisinTriple, kDis, grid, Engine::Analytic);
  const Curve ge = sweep(ExperimentKind::GisinTriple, kEnt, grid, Engine::Analytic);
  EXPECT_NEAR(offset_peak_ratio(gd), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(offset_peak_ratio(ge), 0.0, 1e-12);
}

TEST(Experiments, SweepExamples) {
  const Curve g = sweep(ExperimentKind::GisinTriple, kDis, {0.0, kPi / 2, kPi}, Engine::Analytic);
  EXPECT_NEAR(g.points[0].y, 1.0 / 16, 1e-15);
  EXPECT_NEAR(g.points[1].y, 1.0 / 8, 1e-15);
  EXPECT_NEAR(g.points[2].y, 3.0 / 16, 1e-15);
  EXPECT_FALSE(g.points[0].std_err.has_value());
  const Curve k =
      sweep(ExperimentKind::KimCompleteBsm, kEnt, {kPi / 4, kPi / 2, 3 * kPi / 4}, Engine::Analytic);
  EXPECT_NEAR(k.points[0].y, 0.25, 1e-15);
  EXPECT_NEAR(k.points[1].y, 0.125, 1e-15);
  EXPECT_NEAR(k.points[2].y, 0.0, 1e-15);
  const Curve one = sweep(ExperimentKind::GisinTriple, kEnt, {1.3}, Engine::Analytic);
  EXPECT_EQ(one.points[0].y, gisin_expectation(kEnt, 1.3, M_SQRT1_2, M_SQRT1_2));
}

TEST(Experiments, SweepValidation) {
  EXPECT_THROW(sweep(ExperimentKind::GisinTriple, kEnt, {}, Engine::Analytic), ValidationError);
  EXPECT_THROW(sweep(ExperimentKind::GisinTriple, kEnt, {1.0, 0.5}, Engine::Analytic), ValidationError);
  EXPECT_THROW(sweep(ExperimentKind::ZeilingerTeleport, kEnt, {0.0}, Engine::Analytic), UnsupportedError);
  EXPECT_THROW(sweep(ExperimentKind::GisinTriple, kEnt, {0.0}, Engine::MonteCarlo), ValidationError);
}

TEST(Experiments, FirstPrinciplesGisinAndZeilinger) {
  for (int i = 0; i < 16; ++i) {
    const double beta = kTwoPi * i / 16;
    const GisinSettings s{beta};
    const SourceModel src = EntangledPair{source_kind(ExperimentKind::GisinTriple)};
    EXPECT_NEAR(entangled_first_principles(src, ExperimentKind::GisinTriple, s),
                gisin_expectation(kEnt, beta, s.a0, s.a1), 1e-12);
  }
  for (auto a : {Diagonal::Plus, Diagonal::Minus}) {
    for (auto b : {Diagonal::Plus, Diagonal::Minus}) {
      EXPECT_NEAR(entangled_first_principles(kEnt, ExperimentKind::ZeilingerTeleport,
                                             ZeilingerSettings{a, b}),
                  zeilinger_rate(kEnt, a, b), 1e-12);
    }
  }
}

TEST(Experiments, FirstPrinciplesKimBranchConvention) {
  // Projecting on detector II's pair state yields the 1 + sin 2phi branch.
  EXPECT_NEAR(entangled_first_principles(kEnt, ExperimentKind::KimCompleteBsm,
                                         KimSettings{KimDetector::II, kPi / 4}),
              0.25, 1e-12);
  for (int i = 0; i < 16; ++i) {
    const double phi = kTwoPi * i / 16;
    for (auto d : {KimDetector::I, KimDetector::II}) {
      EXPECT_NEAR(entangled_first_principles(kEnt, ExperimentKind::KimCompleteBsm, KimSettings{d, phi}),
                  kim_expectation(kEnt, kim_closed_form_branch(d), phi), 1e-12);
    }
  }
}

TEST(Experiments, FirstPrinciplesRejections) {
  EXPECT_THROW(entangled_first_principles(kDis, ExperimentKind::GisinTriple, GisinSettings{}),
               UnsupportedError);
  EXPECT_THROW(entangled_first_principles(kEnt, ExperimentKind::KimCompleteBsm, GisinSettings{}),
               ValidationError);
}

TEST(Experiments, FirstPrinciplesAspect) {
  for (int i = 0; i < 16; ++i) {
    const double t = kPi * i / 16;
    const AspectSettings s{PolarizerSetting(t), PolarizerSetting(0.0)};
    EXPECT_NEAR(entangled_first_principles(kEnt, ExperimentKind::AspectDouble, s),
                correlation_analytic(kEnt, t, 0.0), 1e-12);
  }
}
