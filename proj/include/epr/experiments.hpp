#pragma once

// Closed-form predictions for the four coincidence-experiment families under
// both source models, and direct Born-rule evaluation of the entangled cases.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "epr/mc_config.hpp"
#include "epr/optics.hpp"
#include "epr/qcore.hpp"
#include "epr/sources.hpp"

namespace epr {

enum class ExperimentKind { AspectDouble, GisinTriple, ZeilingerTeleport, KimCompleteBsm };
enum class Engine { Analytic, MonteCarlo };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(Engine engine);

// Linear polarization at +45 or -45 degrees.
enum class Diagonal { Plus, Minus };

double diagonal_angle(Diagonal d);

enum class KimDetector { I, II };

std::string_view to_string(KimDetector d);

struct ChannelProbabilities {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double correlation() const { return pp - pm - mp + mm; }
};

struct AspectSettings {
  PolarizerSetting a;
  PolarizerSetting b;
};

struct GisinSettings {
  double beta = 0.0;
  double a0 = 0.70710678118654752440;
  double a1 = 0.70710678118654752440;
};

struct ZeilingerSettings {
  Diagonal alice = Diagonal::Plus;
  Diagonal bob = Diagonal::Plus;
};

struct KimSettings {
  KimDetector detector = KimDetector::I;
  double phi = 0.0;
};

using TripleSettings = std::variant<GisinSettings, ZeilingerSettings, KimSettings>;
using ExperimentSettings = std::variant<AspectSettings, GisinSettings, ZeilingerSettings, KimSettings>;

ExperimentKind kind_of(const ExperimentSettings& settings);
ExperimentKind kind_of(const TripleSettings& settings);

// P+- = P-+ = (1 + V cos 2(a-b))/4, P++ = P-- = (1 - V cos 2(a-b))/4.
ChannelProbabilities aspect_probabilities(const SourceModel& model, const PolarizerSetting& a,
                                          const PolarizerSetting& b);

// Triple coincidence against |psi-_12>|psi_3(beta)>, psi_3 = a0|+> + e^{i beta} a1|->.
// Entangled: (1 - 2 a0 a1 cos beta)/8; disentangled: (1 - a0 a1 cos beta)/8.
// For a0 != a1 these are an extrapolation of the equal-amplitude forms.
double gisin_expectation(const SourceModel& model, double beta, double a0, double a1);

// Matched diagonals: 1/4 entangled, 3/16 disentangled. Mismatched: 0 and 1/16.
// The disentangled values evaluate the axis average at theta = 45 degrees.
double zeilinger_rate(const SourceModel& model, Diagonal alice, Diagonal bob);

// Mismatched/matched rate ratio.
double zeilinger_relative_intensity(const SourceModel& model);

// Entangled: (1 +- 2 cos phi sin phi)/8; disentangled: (1 +- cos phi sin phi)/8,
// "+" for detector I. Periodic in phi, so any real angle is accepted.
double kim_expectation(const SourceModel& model, KimDetector detector, double phi);

// Closed form for a triple-coincidence setting.
double triple_expectation(const SourceModel& model, const TripleSettings& settings);

// Bell state emitted by the source in each experiment: phi+ for the Gisin
// arrangement, psi- elsewhere.
BellKind source_kind(ExperimentKind kind);

// Three-photon state projected onto by the coincidence measurement, and the
// state Alice prepares on photon 1.
struct TripleMeasurement {
  PureState measured;
  PureState alice;
};

TripleMeasurement triple_measurement(const TripleSettings& settings);

// Two-photon vector of the Kim coincidence state for a detector:
// I -> (1,0,0,1)/sqrt2, II -> (-1,0,0,1)/sqrt2.
PureState kim_observed_pair(KimDetector detector);

// The direct Born evaluation for the Kim state of detector l reproduces the
// closed-form branch of the other detector (the "+" branch belongs to the
// (-1,0,0,1) vector). Returns that closed-form detector.
KimDetector kim_closed_form_branch(KimDetector projected);

// Direct evaluation of <Phi_123| rho1 (x) rho23 |Phi_123> for the entangled
// source; for AspectDouble returns the correlation E(a,b) built from Born
// probabilities of the four polarizer outcomes. Disentangled models are
// unsupported.
double entangled_first_principles(const SourceModel& model, ExperimentKind kind,
                                  const ExperimentSettings& settings);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> std_err;
};

struct CurveMeta {
  ExperimentKind kind = ExperimentKind::GisinTriple;
  std::string_view model = "entangled";
  Engine engine = Engine::Analytic;
};

struct Curve {
  CurveMeta meta;
  std::vector<CurvePoint> points;
};

// Fixed parameters for a sweep. The grid variable is theta_ab for Aspect
// (polarizer a = x, b = 0), beta for Gisin and phi for Kim.
struct SweepParams {
  double a0 = 0.70710678118654752440;
  double a1 = 0.70710678118654752440;
  KimDetector detector = KimDetector::I;
};

// One point per grid value, in grid order. Grid point i of a Monte Carlo
// sweep is seeded with derive_seed(config.seed, i).
Curve sweep(ExperimentKind kind, const SourceModel& model, const std::vector<double>& grid,
            Engine engine, const SweepParams& params = {},
            const std::optional<McConfig>& mc = std::nullopt);

}  // namespace epr
