#include <arm_neon.h>

#include "kernel_impl.hpp"

namespace epr::kernels::detail {

void phase_accept_neon(const double* phi2, const double* phi3, std::size_t n, double window,
                       std::uint8_t* accept) {
  const float64x2_t two_pi = vdupq_n_f64(kTwoPi);
  const float64x2_t inv_two_pi = vdupq_n_f64(kInvTwoPi);
  const float64x2_t w = vdupq_n_f64(window);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(phi3 + i), vld1q_f64(phi2 + i));
    const float64x2_t turns = vrndnq_f64(vmulq_f64(d, inv_two_pi));
    const float64x2_t r = vsubq_f64(d, vmulq_f64(two_pi, turns));
    const uint64x2_t lt = vcltq_f64(vabsq_f64(r), w);
    accept[i + 0] = vgetq_lane_u64(lt, 0) ? 1 : 0;
    accept[i + 1] = vgetq_lane_u64(lt, 1) ? 1 : 0;
  }
  phase_accept_scalar(phi2 + i, phi3 + i, n - i, window, accept + i);
}

void malus_tally_neon(const MalusArgs& a, std::uint64_t* tally) {
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t ca = vdupq_n_f64(a.cos2a);
  const float64x2_t sa = vdupq_n_f64(a.sin2a);
  const float64x2_t cb = vdupq_n_f64(a.cos2b);
  const float64x2_t sb = vdupq_n_f64(a.sin2b);
  const float64x2_t sign = vdupq_n_f64(a.partner_sign);

  std::size_t i = 0;
  for (; i + 2 <= a.n; i += 2) {
    const float64x2_t c = vld1q_f64(a.cos2theta + i);
    const float64x2_t s = vld1q_f64(a.sin2theta + i);
    // Separate multiply and add: no fused operations.
    const float64x2_t t1 = vaddq_f64(vmulq_f64(c, ca), vmulq_f64(s, sa));
    const float64x2_t t2 = vaddq_f64(vmulq_f64(c, cb), vmulq_f64(s, sb));
    const float64x2_t p1 = vmulq_f64(half, vaddq_f64(one, t1));
    const float64x2_t p2 = vmulq_f64(half, vaddq_f64(one, vmulq_f64(sign, t2)));
    const uint64x2_t plus1 = vcltq_f64(vld1q_f64(a.u_first + i), p1);
    const uint64x2_t plus2 = vcltq_f64(vld1q_f64(a.u_second + i), p2);
    for (int lane = 0; lane < 2; ++lane) {
      if (!a.accepted[i + lane]) continue;
      const std::uint64_t f = lane == 0 ? vgetq_lane_u64(plus1, 0) : vgetq_lane_u64(plus1, 1);
      const std::uint64_t g = lane == 0 ? vgetq_lane_u64(plus2, 0) : vgetq_lane_u64(plus2, 1);
      ++tally[2 * (f ? 0 : 1) + (g ? 0 : 1)];
    }
  }

  MalusArgs tail = a;
  tail.cos2theta += i;
  tail.sin2theta += i;
  tail.u_first += i;
  tail.u_second += i;
  tail.accepted += i;
  tail.n = a.n - i;
  malus_tally_scalar(tail, tally);
}

namespace {

struct CVec {
  float64x2_t re, im;
};

inline CVec cmul_scalar(double mr, double mi, CVec y) {
  const float64x2_t r = vdupq_n_f64(mr);
  const float64x2_t i = vdupq_n_f64(mi);
  return {vsubq_f64(vmulq_f64(r, y.re), vmulq_f64(i, y.im)),
          vaddq_f64(vmulq_f64(r, y.im), vmulq_f64(i, y.re))};
}

inline CVec cmul(CVec x, CVec y) {
  return {vsubq_f64(vmulq_f64(x.re, y.re), vmulq_f64(x.im, y.im)),
          vaddq_f64(vmulq_f64(x.re, y.im), vmulq_f64(x.im, y.re))};
}

inline CVec cadd(CVec x, CVec y) { return {vaddq_f64(x.re, y.re), vaddq_f64(x.im, y.im)}; }

}  // namespace

void product_born_neon(const ProductArgs& a) {
  const double* m = a.m;
  std::size_t i = 0;
  for (; i + 2 <= a.n; i += 2) {
    const CVec x0{vld1q_f64(a.in[0] + i), vld1q_f64(a.in[1] + i)};
    const CVec x1{vld1q_f64(a.in[2] + i), vld1q_f64(a.in[3] + i)};
    const CVec y0{vld1q_f64(a.in[4] + i), vld1q_f64(a.in[5] + i)};
    const CVec y1{vld1q_f64(a.in[6] + i), vld1q_f64(a.in[7] + i)};

    const CVec t0 = cadd(cmul_scalar(m[0], m[1], y0), cmul_scalar(m[2], m[3], y1));
    const CVec t1 = cadd(cmul_scalar(m[4], m[5], y0), cmul_scalar(m[6], m[7], y1));
    const CVec amp = cadd(cmul(t0, x0), cmul(t1, x1));
    vst1q_f64(a.out + i, vaddq_f64(vmulq_f64(amp.re, amp.re), vmulq_f64(amp.im, amp.im)));
  }

  ProductArgs tail = a;
  for (auto& p : tail.in) p += i;
  tail.out += i;
  tail.n = a.n - i;
  product_born_scalar(tail);
}

}  // namespace epr::kernels::detail
