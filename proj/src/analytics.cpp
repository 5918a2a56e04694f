#include "epr/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace epr {

CorrelationEstimate correlation_from_counts(const CoincidenceCounts& c) {
  const std::uint64_t total = c.detected();
  if (total == 0) {
    throw ValidationError("correlation_from_counts: no detected coincidences");
  }
  const double n = static_cast<double>(total);
  const double same = static_cast<double>(c.n_pp + c.n_mm);
  const double diff = static_cast<double>(c.n_pm + c.n_mp);
  const double e = std::clamp((same - diff) / n, -1.0, 1.0);
  return {e, std::sqrt((1.0 - e * e) / n), total};
}

namespace {

VisibilityFit fit_impl(std::span<const double> angles, std::span<const double> correlations,
                       std::span<const double> std_errs) {
  if (angles.size() != correlations.size()) {
    throw ValidationError("fit_visibility: angle and correlation counts differ");
  }
  if (angles.empty()) {
    throw ValidationError("fit_visibility: no data");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double w = 1.0;
    if (!std_errs.empty()) {
      if (!(std_errs[i] > 0.0)) throw ValidationError("fit_visibility: std_err must be positive");
      w = 1.0 / (std_errs[i] * std_errs[i]);
    }
    const double c = std::cos(2.0 * angles[i]);
    num += w * correlations[i] * c;
    den += w * c * c;
  }
  if (den <= tol::kAlgebraic) {
    throw ValidationError("fit_visibility: degenerate design, every cos 2theta is zero");
  }
  VisibilityFit fit;
  fit.v = -num / den;
  double ss = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double r = correlations[i] + fit.v * std::cos(2.0 * angles[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(angles.size()));
  return fit;
}

}  // namespace

VisibilityFit fit_visibility(std::span<const double> angles, std::span<const double> correlations) {
  return fit_impl(angles, correlations, {});
}

VisibilityFit fit_visibility(std::span<const double> angles, std::span<const double> correlations,
                             std::span<const double> std_errs) {
  if (std_errs.size() != angles.size()) {
    throw ValidationError("fit_visibility: one std_err per point is required");
  }
  return fit_impl(angles, correlations, std_errs);
}

double chsh(double e_ab, double e_ab2, double e_a2b, double e_a2b2) {
  return e_ab - e_ab2 + e_a2b + e_a2b2;
}

double chsh_analytic(const SourceModel& model, const ChshAngles& x) {
  return chsh(correlation_analytic(model, x.a, x.b), correlation_analytic(model, x.a, x.b2),
              correlation_analytic(model, x.a2, x.b), correlation_analytic(model, x.a2, x.b2));
}

double offset_peak_ratio(const Curve& curve) {
  if (curve.points.empty()) {
    throw ValidationError("offset_peak_ratio: empty curve");
  }
  const auto [lo, hi] = std::minmax_element(
      curve.points.begin(), curve.points.end(),
      [](const CurvePoint& p, const CurvePoint& q) { return p.y < q.y; });
  if (!(hi->y > 0.0)) {
    throw ValidationError("offset_peak_ratio: curve maximum must be positive");
  }
  return lo->y / hi->y;
}

CoincidenceCounts subtract_accidentals(const CoincidenceCounts& c, std::uint64_t floor_per_channel) {
  const std::uint64_t smallest = std::min({c.n_pp, c.n_pm, c.n_mp, c.n_mm});
  if (floor_per_channel > smallest) {
    throw ValidationError("subtract_accidentals: floor exceeds a channel count");
  }
  CoincidenceCounts out = c;
  out.n_pp -= floor_per_channel;
  out.n_pm -= floor_per_channel;
  out.n_mp -= floor_per_channel;
  out.n_mm -= floor_per_channel;
  return out;
}

double accidental_floor_fraction(double v_raw, double v_corrected) {
  if (!(v_corrected > 0.0) || !(v_raw >= 0.0) || v_raw > v_corrected) {
    throw ValidationError("accidental_floor_fraction: need 0 <= v_raw <= v_corrected, v_corrected > 0");
  }
  return (1.0 - v_raw / v_corrected) / 4.0;
}

}  // namespace epr
