#pragma once

// Batch kernels for the Monte Carlo inner loops, with a scalar reference and
// SIMD variants selected at runtime. Every variant vectorizes across samples
// and performs the same IEEE operations in the same order per sample, so all
// variants produce bit-identical output.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace epr {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

bool isa_supported(Isa isa);
Isa best_isa();
std::vector<Isa> supported_isas();

namespace kernels::detail {
struct KernelTable;
}

// Counts indexed pp, pm, mp, mm.
using ChannelTally = std::array<std::uint64_t, 4>;

// One double-coincidence batch: the shared axis enters through cos 2theta and
// sin 2theta, and each photon consumes one uniform for its polarizer outcome.
struct MalusBatch {
  std::span<const double> cos2theta;
  std::span<const double> sin2theta;
  std::span<const double> u_first;
  std::span<const double> u_second;
  std::span<const std::uint8_t> accepted;
};

struct AnalyzerPair {
  double cos2a = 1.0;
  double sin2a = 0.0;
  double cos2b = 1.0;
  double sin2b = 0.0;
  // -1 when the partner axis is orthogonal to the first photon's axis.
  double partner_sign = -1.0;
};

// Photon-2 and photon-3 amplitude pairs, split into real and imaginary parts.
struct ProductBatch {
  std::span<const double> s2_0_re, s2_0_im, s2_1_re, s2_1_im;
  std::span<const double> s3_0_re, s3_0_im, s3_1_re, s3_1_im;
};

// amplitude = sum_jk m[2j+k] * s2_j * s3_k
struct ProductContraction {
  std::array<std::complex<double>, 4> m{};
};

class Kernels {
 public:
  static Kernels best();
  // Throws ValidationError when the host cannot run `isa`.
  static Kernels for_isa(Isa isa);

  Isa isa() const;

  // accept[i] = |wrap(phi3[i] - phi2[i])| < window
  void phase_accept(std::span<const double> phi2, std::span<const double> phi3, double window,
                    std::span<std::uint8_t> accept) const;

  // Adds the outcome channel of every accepted sample to `tally`. A photon
  // reports "+" when its uniform is below its Malus probability.
  void malus_tally(const MalusBatch& batch, const AnalyzerPair& analyzers, ChannelTally& tally) const;

  // out[i] = |amplitude_i|^2
  void product_born(const ProductBatch& batch, const ProductContraction& contraction,
                    std::span<double> out) const;

 private:
  explicit Kernels(const kernels::detail::KernelTable* table) : table_(table) {}

  const kernels::detail::KernelTable* table_;
};

}  // namespace epr
