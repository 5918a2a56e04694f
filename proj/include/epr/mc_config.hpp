#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "epr/kernels.hpp"

namespace epr {

// 0.58 degrees: the phase-matching half-width quoted for a 1% detection rate.
inline constexpr double kDefaultPhaseWindow = 0.58 * 3.14159265358979323846 / 180.0;

struct McConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  // Acceptance half-width for |phi3 - phi2|; infinity disables phase matching.
  double phase_window = std::numeric_limits<double>::infinity();
  // Probability per trial of an uncorrelated extra coincidence.
  double accidental_rate = 0.0;
  // Number of independently seeded trial blocks.
  unsigned streams = 1;
  // Pass every ensemble draw through a type-I SFG axis transform before
  // phase matching.
  bool sfg_type1 = false;
  // Kernel variant; empty selects the best one the host supports.
  std::optional<Isa> isa;

  // Throws ValidationError when a field is out of range.
  void validate() const;
};

}  // namespace epr
