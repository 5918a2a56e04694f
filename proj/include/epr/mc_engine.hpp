#pragma once

// Seeded Monte Carlo for coincidence experiments.
//
// Trials are split into `streams` contiguous blocks; block b runs
// trials/streams trials (plus one for b < trials % streams) on
// RandomStream::for_block(seed, b). Blocks run concurrently and are reduced in
// block order, so results depend only on (seed, trials, streams).

#include <cstdint>

#include "epr/experiments.hpp"
#include "epr/mc_config.hpp"
#include "epr/optics.hpp"
#include "epr/sources.hpp"

namespace epr {

class RandomStream;

struct CoincidenceCounts {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t n_trials = 0;
  // Injected accidental coincidences, already included in the channel counts.
  std::uint64_t n_accidental = 0;

  std::uint64_t detected() const { return n_pp + n_pm + n_mp + n_mm; }

  friend bool operator==(const CoincidenceCounts&, const CoincidenceCounts&) = default;
};

// Maps an angle difference to (-pi, pi].
double wrap_phase(double delta);

// |wrap(phi3 - phi2)| < window. Same arithmetic as the batch kernels.
bool phase_accept(double phi2, double phi3, double window);

// Entangled: each trial draws one joint outcome from the V=1 channel
// probabilities. Disentangled: each trial draws an axis sample (theta, phi2,
// phi3, then one uniform per photon); trials failing phase matching count
// toward n_trials but register no coincidence. Photon 2 meets polarizer a and
// photon 3 meets polarizer b. Accidentals are injected afterwards when
// cfg.accidental_rate > 0.
CoincidenceCounts run_double_coincidence(const SourceModel& model, const PolarizerSetting& a,
                                         const PolarizerSetting& b, const McConfig& cfg);

struct TripleEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t n_accepted = 0;
  // Closed-form value for the same model and settings.
  double analytic = 0.0;

  double difference() const { return value - analytic; }
};

// Entangled: Bernoulli sampling of the projective coincidence outcome with
// its Born probability; the estimate is the hit fraction. Disentangled: the
// mean over accepted ensemble draws of <Phi|rho1 (x) |s2><s2| (x) |s3><s3||Phi>,
// with the standard error from the sample variance.
//
// Kim settings are measured with the coincidence state whose Born value
// carries the closed-form branch of the requested detector (see
// kim_closed_form_branch).
TripleEstimate run_triple_coincidence(const TripleSettings& settings, const SourceModel& model,
                                      const McConfig& cfg);

// Adds Binomial(n_trials, rate) accidental events. Each channel receives
// floor(n/4) of them and the n mod 4 remaining events go to distinct,
// uniformly chosen channels.
CoincidenceCounts inject_accidentals(const CoincidenceCounts& counts, double rate, RandomStream& rng);

// Fraction of independent uniform (phi2, phi3) draws passing phase_accept.
// The expected value is min(window, pi) / pi.
double estimate_detection_rate(double window, std::uint64_t trials, std::uint64_t seed,
                               unsigned streams = 1);

}  // namespace epr
