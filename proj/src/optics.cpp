#include "epr/optics.hpp"

#include <cmath>
#include <utility>

namespace epr {

namespace {

double wrap_positive(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0.0) r += period;
  // fmod of a value just below a multiple of the period can round up to it.
  return r >= period ? 0.0 : r;
}

}  // namespace

PolarizerSetting::PolarizerSetting(double angle) : angle_(wrap_positive(angle, kPi)) {}

PolarizerSetting PolarizerSetting::degrees(double deg) { return PolarizerSetting(deg * kPi / 180.0); }

double malus_probability(double photon_axis, const PolarizerSetting& polarizer) {
  const double c = std::cos(polarizer.angle() - photon_axis);
  return c * c;
}

PureState sfg_transform(SfgType type, const PureState& state) {
  if (state.dim() != 4) {
    throw ValidationError("sfg_transform: expects a two-photon state");
  }
  Eigen::VectorXcd v = state.amplitudes();
  if (type == SfgType::TypeI) {
    std::swap(v(0), v(3));
  } else {
    std::swap(v(1), v(2));
  }
  return PureState(std::move(v));
}

AxisSample sfg_axis_transform(SfgType type, const AxisSample& axis) {
  if (type != SfgType::TypeI) {
    throw UnsupportedError("sfg_axis_transform: azimuthal rule is only known for type-I crystals");
  }
  AxisSample out = axis;
  out.phi2 = wrap_positive(axis.phi2 + kPi, kTwoPi);
  out.phi3 = wrap_positive(axis.phi3 + kPi, kTwoPi);
  return out;
}

Operator bsm_projector(BellKind kind, PhotonPair pair) {
  if (pair.first != 1 || pair.second != 2) {
    throw UnsupportedError("bsm_projector: only the photon pair (1,2) is supported");
  }
  return tensor(projector(bell_state(kind)).as_operator(), Operator::identity(2));
}

}  // namespace epr
