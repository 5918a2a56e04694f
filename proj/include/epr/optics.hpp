#pragma once

#include "epr/qcore.hpp"
#include "epr/sources.hpp"

namespace epr {

// Linear polarizer axis, stored reduced to [0, pi).
class PolarizerSetting {
 public:
  PolarizerSetting() = default;
  explicit PolarizerSetting(double angle);

  static PolarizerSetting degrees(double deg);

  double angle() const { return angle_; }

 private:
  double angle_ = 0.0;
};

enum class SfgType { TypeI, TypeII };

// cos^2(polarizer - photon_axis)
double malus_probability(double photon_axis, const PolarizerSetting& polarizer);

// Type I swaps the |++> and |--> amplitudes, type II swaps |+-> and |-+>.
PureState sfg_transform(SfgType type, const PureState& state);

// Type-I passage advances both azimuthal phases by pi (mod 2pi). The type-II
// azimuthal rule is not known and is rejected.
AxisSample sfg_axis_transform(SfgType type, const AxisSample& axis);

struct PhotonPair {
  int first = 1;
  int second = 2;
};

// |bell><bell| on photons 1,2 tensored with the identity on photon 3.
Operator bsm_projector(BellKind kind, PhotonPair pair = {});

}  // namespace epr
