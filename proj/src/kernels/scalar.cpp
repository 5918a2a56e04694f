#include <cmath>

#include "kernel_impl.hpp"

namespace epr::kernels::detail {

void phase_accept_scalar(const double* phi2, const double* phi3, std::size_t n, double window,
                         std::uint8_t* accept) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = phi3[i] - phi2[i];
    const double turns = std::nearbyint(d * kInvTwoPi);
    const double r = d - kTwoPi * turns;
    accept[i] = std::fabs(r) < window ? 1 : 0;
  }
}

void malus_tally_scalar(const MalusArgs& a, std::uint64_t* tally) {
  for (std::size_t i = 0; i < a.n; ++i) {
    if (!a.accepted[i]) continue;
    const double c = a.cos2theta[i];
    const double s = a.sin2theta[i];
    const double p_first = 0.5 * (1.0 + (c * a.cos2a + s * a.sin2a));
    const double p_second = 0.5 * (1.0 + a.partner_sign * (c * a.cos2b + s * a.sin2b));
    const int minus_first = a.u_first[i] < p_first ? 0 : 1;
    const int minus_second = a.u_second[i] < p_second ? 0 : 1;
    ++tally[2 * minus_first + minus_second];
  }
}

void product_born_scalar(const ProductArgs& a) {
  const double* const* in = a.in;
  const double* m = a.m;
  for (std::size_t i = 0; i < a.n; ++i) {
    const double x0r = in[0][i], x0i = in[1][i], x1r = in[2][i], x1i = in[3][i];
    const double y0r = in[4][i], y0i = in[5][i], y1r = in[6][i], y1i = in[7][i];

    // t_j = m_j0 * y0 + m_j1 * y1
    const double t0r = (m[0] * y0r - m[1] * y0i) + (m[2] * y1r - m[3] * y1i);
    const double t0i = (m[0] * y0i + m[1] * y0r) + (m[2] * y1i + m[3] * y1r);
    const double t1r = (m[4] * y0r - m[5] * y0i) + (m[6] * y1r - m[7] * y1i);
    const double t1i = (m[4] * y0i + m[5] * y0r) + (m[6] * y1i + m[7] * y1r);

    // amp = t0 * x0 + t1 * x1
    const double ar = (t0r * x0r - t0i * x0i) + (t1r * x1r - t1i * x1i);
    const double ai = (t0r * x0i + t0i * x0r) + (t1r * x1i + t1i * x1r);
    a.out[i] = ar * ar + ai * ai;
  }
}

}  // namespace epr::kernels::detail
