#pragma once

// Internal kernel ABI. The SIMD translation units are compiled with extra
// target flags, so they include nothing but this header and the intrinsics
// headers: no inline library code may be instantiated there.

#include <cstddef>
#include <cstdint>

namespace epr::kernels::detail {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kInvTwoPi = 0.15915494309189533576888376337251;

struct MalusArgs {
  const double* cos2theta;
  const double* sin2theta;
  const double* u_first;
  const double* u_second;
  const std::uint8_t* accepted;
  std::size_t n;
  double cos2a, sin2a, cos2b, sin2b, partner_sign;
};

struct ProductArgs {
  // s2_0 re/im, s2_1 re/im, s3_0 re/im, s3_1 re/im
  const double* in[8];
  std::size_t n;
  // m00 re/im, m01 re/im, m10 re/im, m11 re/im
  double m[8];
  double* out;
};

using PhaseAcceptFn = void (*)(const double* phi2, const double* phi3, std::size_t n,
                               double window, std::uint8_t* accept);
using MalusTallyFn = void (*)(const MalusArgs& args, std::uint64_t* tally);
using ProductBornFn = void (*)(const ProductArgs& args);

struct KernelTable {
  int isa;
  PhaseAcceptFn phase_accept;
  MalusTallyFn malus_tally;
  ProductBornFn product_born;
};

void phase_accept_scalar(const double* phi2, const double* phi3, std::size_t n, double window,
                         std::uint8_t* accept);
void malus_tally_scalar(const MalusArgs& args, std::uint64_t* tally);
void product_born_scalar(const ProductArgs& args);

void phase_accept_avx2(const double* phi2, const double* phi3, std::size_t n, double window,
                       std::uint8_t* accept);
void malus_tally_avx2(const MalusArgs& args, std::uint64_t* tally);
void product_born_avx2(const ProductArgs& args);

void phase_accept_neon(const double* phi2, const double* phi3, std::size_t n, double window,
                       std::uint8_t* accept);
void malus_tally_neon(const MalusArgs& args, std::uint64_t* tally);
void product_born_neon(const ProductArgs& args);

}  // namespace epr::kernels::detail
