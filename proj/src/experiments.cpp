#include "epr/experiments.hpp"

#include <cmath>
#include <string>

#include "epr/analytics.hpp"
#include "epr/mc_engine.hpp"
#include "epr/rng.hpp"

namespace epr {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Mismatch 2*a0*a1 normalized by a0^2 + a1^2, so that equal amplitudes give
// exactly one.
double amplitude_coherence(double a0, double a1) {
  if (std::abs(a0 * a0 + a1 * a1 - 1.0) > tol::kAlgebraic) {
    throw ValidationError("gisin: amplitudes must satisfy a0^2 + a1^2 = 1");
  }
  return 2.0 * (a0 * a1) / (a0 * a0 + a1 * a1);
}

PureState gisin_analyzer(double beta, double a0, double a1) {
  amplitude_coherence(a0, a1);
  Eigen::VectorXcd v(2);
  v << a0, std::polar(a1, beta);
  return PureState(std::move(v));
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::AspectDouble: return "aspect";
    case ExperimentKind::GisinTriple: return "gisin";
    case ExperimentKind::ZeilingerTeleport: return "zeilinger";
    case ExperimentKind::KimCompleteBsm: return "kim";
  }
  return "?";
}

std::string_view to_string(Engine engine) {
  return engine == Engine::Analytic ? "analytic" : "montecarlo";
}

std::string_view to_string(KimDetector d) { return d == KimDetector::I ? "I" : "II"; }

double diagonal_angle(Diagonal d) { return d == Diagonal::Plus ? 0.25 * kPi : -0.25 * kPi; }

ExperimentKind kind_of(const ExperimentSettings& settings) {
  switch (settings.index()) {
    case 0: return ExperimentKind::AspectDouble;
    case 1: return ExperimentKind::GisinTriple;
    case 2: return ExperimentKind::ZeilingerTeleport;
    default: return ExperimentKind::KimCompleteBsm;
  }
}

ExperimentKind kind_of(const TripleSettings& settings) {
  switch (settings.index()) {
    case 0: return ExperimentKind::GisinTriple;
    case 1: return ExperimentKind::ZeilingerTeleport;
    default: return ExperimentKind::KimCompleteBsm;
  }
}

ChannelProbabilities aspect_probabilities(const SourceModel& model, const PolarizerSetting& a,
                                          const PolarizerSetting& b) {
  const double v = visibility(model);
  const double fringe = v * std::cos(2.0 * (a.angle() - b.angle()));
  ChannelProbabilities p;
  p.pm = p.mp = 0.25 * (1.0 + fringe);
  p.pp = p.mm = 0.25 * (1.0 - fringe);
  return p;
}

double gisin_expectation(const SourceModel& model, double beta, double a0, double a1) {
  const double coherence = amplitude_coherence(a0, a1);
  const double depth = is_entangled(model) ? coherence : 0.5 * coherence;
  return 0.125 * (1.0 - depth * std::cos(beta));
}

double zeilinger_rate(const SourceModel& model, Diagonal alice, Diagonal bob) {
  const bool matched = alice == bob;
  if (is_entangled(model)) {
    return matched ? 0.25 : 0.0;
  }
  return matched ? 3.0 / 16.0 : 1.0 / 16.0;
}

double zeilinger_relative_intensity(const SourceModel& model) {
  return zeilinger_rate(model, Diagonal::Plus, Diagonal::Minus) /
         zeilinger_rate(model, Diagonal::Plus, Diagonal::Plus);
}

double kim_expectation(const SourceModel& model, KimDetector detector, double phi) {
  const double sign = detector == KimDetector::I ? 1.0 : -1.0;
  // 2 cos(phi) sin(phi) == sin(2 phi)
  const double swing = is_entangled(model) ? std::sin(2.0 * phi) : 0.5 * std::sin(2.0 * phi);
  return 0.125 * (1.0 + sign * swing);
}

double triple_expectation(const SourceModel& model, const TripleSettings& settings) {
  if (const auto* g = std::get_if<GisinSettings>(&settings)) {
    return gisin_expectation(model, g->beta, g->a0, g->a1);
  }
  if (const auto* z = std::get_if<ZeilingerSettings>(&settings)) {
    return zeilinger_rate(model, z->alice, z->bob);
  }
  const auto& k = std::get<KimSettings>(settings);
  return kim_expectation(model, k.detector, k.phi);
}

BellKind source_kind(ExperimentKind kind) {
  return kind == ExperimentKind::GisinTriple ? BellKind::PhiPlus : BellKind::PsiMinus;
}

PureState kim_observed_pair(KimDetector detector) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = detector == KimDetector::I ? kInvSqrt2 : -kInvSqrt2;
  v(3) = kInvSqrt2;
  return PureState(std::move(v));
}

KimDetector kim_closed_form_branch(KimDetector projected) {
  return projected == KimDetector::I ? KimDetector::II : KimDetector::I;
}

TripleMeasurement triple_measurement(const TripleSettings& settings) {
  const PureState alice_plus45 = linear_polarization_state(0.25 * kPi);
  if (const auto* g = std::get_if<GisinSettings>(&settings)) {
    return {tensor(bell_state(BellKind::PsiMinus), gisin_analyzer(g->beta, g->a0, g->a1)),
            alice_plus45};
  }
  if (const auto* z = std::get_if<ZeilingerSettings>(&settings)) {
    return {tensor(bell_state(BellKind::PsiMinus), linear_polarization_state(diagonal_angle(z->bob))),
            linear_polarization_state(diagonal_angle(z->alice))};
  }
  const auto& k = std::get<KimSettings>(settings);
  return {tensor(kim_observed_pair(k.detector), linear_polarization_state(k.phi)), alice_plus45};
}

double entangled_first_principles(const SourceModel& model, ExperimentKind kind,
                                  const ExperimentSettings& settings) {
  if (!is_entangled(model)) {
    throw UnsupportedError("first-principles evaluation needs the entangled model");
  }
  if (kind_of(settings) != kind) {
    throw ValidationError("first-principles evaluation: settings do not match experiment kind");
  }

  if (const auto* aspect = std::get_if<AspectSettings>(&settings)) {
    const DensityOperator rho = entangled_pair_density(source_kind(kind));
    const double a = aspect->a.angle();
    const double b = aspect->b.angle();
    double e = 0.0;
    for (int oa = 0; oa < 2; ++oa) {
      for (int ob = 0; ob < 2; ++ob) {
        const PureState outcome = tensor(linear_polarization_state(a + 0.5 * kPi * oa),
                                         linear_polarization_state(b + 0.5 * kPi * ob));
        const double sign = oa == ob ? 1.0 : -1.0;
        e += sign * born_expectation(rho, outcome);
      }
    }
    return e;
  }

  TripleSettings triple;
  if (const auto* g = std::get_if<GisinSettings>(&settings)) {
    triple = *g;
  } else if (const auto* z = std::get_if<ZeilingerSettings>(&settings)) {
    triple = *z;
  } else {
    triple = std::get<KimSettings>(settings);
  }
  const TripleMeasurement m = triple_measurement(triple);
  const DensityOperator rho = tensor(projector(m.alice), entangled_pair_density(source_kind(kind)));
  return born_expectation(rho, m.measured);
}

Curve sweep(ExperimentKind kind, const SourceModel& model, const std::vector<double>& grid,
            Engine engine, const SweepParams& params, const std::optional<McConfig>& mc) {
  if (grid.empty()) {
    throw ValidationError("sweep: grid is empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("sweep: grid must be strictly increasing");
    }
  }
  if (kind == ExperimentKind::ZeilingerTeleport) {
    throw UnsupportedError("sweep: the Zeilinger arrangement has no continuous sweep variable");
  }
  if (engine == Engine::MonteCarlo) {
    if (!mc) {
      throw ValidationError("sweep: the montecarlo engine needs a McConfig");
    }
    mc->validate();
  }

  Curve curve;
  curve.meta = CurveMeta{kind, model_name(model), engine};
  curve.points.reserve(grid.size());

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    CurvePoint point{x, 0.0, std::nullopt};

    if (kind == ExperimentKind::AspectDouble) {
      const PolarizerSetting a(x);
      const PolarizerSetting b(0.0);
      if (engine == Engine::Analytic) {
        point.y = correlation_analytic(model, x, 0.0);
      } else {
        McConfig cfg = *mc;
        cfg.seed = derive_seed(mc->seed, i);
        const CorrelationEstimate est = correlation_from_counts(run_double_coincidence(model, a, b, cfg));
        point.y = est.value;
        point.std_err = est.std_err;
      }
    } else {
      const TripleSettings settings =
          kind == ExperimentKind::GisinTriple
              ? TripleSettings{GisinSettings{x, params.a0, params.a1}}
              : TripleSettings{KimSettings{params.detector, x}};
      if (engine == Engine::Analytic) {
        point.y = triple_expectation(model, settings);
      } else {
        McConfig cfg = *mc;
        cfg.seed = derive_seed(mc->seed, i);
        const TripleEstimate est = run_triple_coincidence(settings, model, cfg);
        point.y = est.value;
        point.std_err = est.std_err;
      }
    }
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace epr
