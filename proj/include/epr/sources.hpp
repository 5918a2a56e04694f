#pragma once

// Photon-pair source models: Born-rule entangled Bell pairs, and the
// disentangled ensemble with a shared random quantization axis and random
// per-photon phases.

#include <string_view>
#include <variant>

#include "epr/qcore.hpp"

namespace epr {

class RandomStream;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct EntangledPair {
  BellKind kind = BellKind::PsiMinus;
};

enum class AxisDistribution { Uniform };

enum class PhaseDistribution {
  // phi2, phi3 independent and uniform on [0, 2pi).
  IndependentUniform,
  // phi3 = phi2, uniform on [0, 2pi).
  Locked,
};

struct DisentangledEnsemble {
  AxisDistribution axis_distribution = AxisDistribution::Uniform;
  PhaseDistribution phases = PhaseDistribution::IndependentUniform;
  bool anticorrelated = true;
};

using SourceModel = std::variant<EntangledPair, DisentangledEnsemble>;

inline bool is_entangled(const SourceModel& m) { return std::holds_alternative<EntangledPair>(m); }

std::string_view model_name(const SourceModel& m);

// Fringe visibility of the double-coincidence probabilities: 1 for the
// entangled singlet, 1/2 for the disentangled ensemble. Other Bell kinds are
// unsupported because the double-coincidence geometry is singlet-specific.
double visibility(const SourceModel& m);

struct AxisSample {
  double theta = 0.0;  // photon-2 polarization axis, [0, pi)
  double phi2 = 0.0;   // [0, 2pi)
  double phi3 = 0.0;   // [0, 2pi)
};

struct PairSample {
  PureState state2;
  PureState state3;
  AxisSample axis;
};

DensityOperator entangled_pair_density(BellKind kind);

// Builds the photon-2/photon-3 product states for a given axis draw:
//   state2 = cos(theta)|+> + e^{i phi2} sin(theta)|->
//   state3 = sin(theta)|+> - e^{i phi3} cos(theta)|->   (anticorrelated)
//   state3 = cos(theta)|+> + e^{i phi3} sin(theta)|->   (correlated)
PairSample make_pair(const AxisSample& axis, bool anticorrelated = true);

// Draws theta, then phi2, then phi3 from `rng` (three uniforms per call).
AxisSample sample_axis(RandomStream& rng, const DisentangledEnsemble& ensemble = {});

PairSample sample_disentangled_pair(RandomStream& rng, const DisentangledEnsemble& ensemble = {});

// Polarization axis of photon 3 given the shared axis draw.
double partner_axis(double theta, bool anticorrelated);

// E(a,b) = -V cos 2(a-b).
double correlation_analytic(const SourceModel& model, double a, double b);

}  // namespace epr
