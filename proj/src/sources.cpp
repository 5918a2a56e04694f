#include "epr/sources.hpp"

#include <cmath>

#include "epr/rng.hpp"

namespace epr {

std::string_view model_name(const SourceModel& m) {
  return is_entangled(m) ? "entangled" : "disentangled";
}

double visibility(const SourceModel& m) {
  if (const auto* pair = std::get_if<EntangledPair>(&m)) {
    if (pair->kind != BellKind::PsiMinus) {
      throw UnsupportedError("double-coincidence correlation is defined for the psi- source only");
    }
    return 1.0;
  }
  return 0.5;
}

DensityOperator entangled_pair_density(BellKind kind) { return projector(bell_state(kind)); }

double partner_axis(double theta, bool anticorrelated) {
  return anticorrelated ? theta + 0.5 * kPi : theta;
}

PairSample make_pair(const AxisSample& axis, bool anticorrelated) {
  const double c = std::cos(axis.theta);
  const double s = std::sin(axis.theta);
  const Complex e2 = std::polar(1.0, axis.phi2);
  const Complex e3 = std::polar(1.0, axis.phi3);

  Eigen::VectorXcd v2(2);
  v2 << c, e2 * s;
  Eigen::VectorXcd v3(2);
  if (anticorrelated) {
    v3 << s, -e3 * c;
  } else {
    v3 << c, e3 * s;
  }
  return PairSample{PureState(std::move(v2)), PureState(std::move(v3)), axis};
}

AxisSample sample_axis(RandomStream& rng, const DisentangledEnsemble& ensemble) {
  AxisSample axis;
  axis.theta = kPi * rng.uniform();
  axis.phi2 = kTwoPi * rng.uniform();
  const double phi3 = kTwoPi * rng.uniform();
  axis.phi3 = ensemble.phases == PhaseDistribution::Locked ? axis.phi2 : phi3;
  return axis;
}

PairSample sample_disentangled_pair(RandomStream& rng, const DisentangledEnsemble& ensemble) {
  return make_pair(sample_axis(rng, ensemble), ensemble.anticorrelated);
}

double correlation_analytic(const SourceModel& model, double a, double b) {
  const double v = visibility(model);
  const auto* ens = std::get_if<DisentangledEnsemble>(&model);
  const double sign = (ens && !ens->anticorrelated) ? 1.0 : -1.0;
  return sign * v * std::cos(2.0 * (a - b));
}

}  // namespace epr
