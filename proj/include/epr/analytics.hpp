#pragma once

#include <cstdint>
#include <span>

#include "epr/experiments.hpp"
#include "epr/mc_engine.hpp"

namespace epr {

struct CorrelationEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::uint64_t n = 0;
};

// E = P++ - P+- - P-+ + P-- with probabilities normalized by the number of
// detected coincidences; std_err = sqrt((1 - E^2) / n).
CorrelationEstimate correlation_from_counts(const CoincidenceCounts& c);

struct VisibilityFit {
  double v = 0.0;
  double rms_residual = 0.0;
};

// Least-squares V for E_i = -V cos 2 theta_i: V = -sum(E cos2t) / sum(cos2t^2).
VisibilityFit fit_visibility(std::span<const double> angles, std::span<const double> correlations);

// Weighted by 1/std_err^2.
VisibilityFit fit_visibility(std::span<const double> angles, std::span<const double> correlations,
                             std::span<const double> std_errs);

// S = E(a,b) - E(a,b') + E(a',b) + E(a',b')
double chsh(double e_ab, double e_ab2, double e_a2b, double e_a2b2);

struct ChshAngles {
  double a = 0.0;
  double a2 = 0.0;
  double b = 0.0;
  double b2 = 0.0;
};

double chsh_analytic(const SourceModel& model, const ChshAngles& angles);

// min(y) / max(y)
double offset_peak_ratio(const Curve& curve);

// Removes a uniform accidental floor from each of the four channels.
CoincidenceCounts subtract_accidentals(const CoincidenceCounts& c, std::uint64_t floor_per_channel);

// Per-channel floor fraction A/T that turns a raw visibility into a corrected
// one under uniform-floor subtraction: V_corr = V_raw T / (T - 4A).
double accidental_floor_fraction(double v_raw, double v_corrected);

}  // namespace epr
