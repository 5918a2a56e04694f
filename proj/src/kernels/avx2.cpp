#include <immintrin.h>

#include "kernel_impl.hpp"

namespace epr::kernels::detail {

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline unsigned accepted_bits(const std::uint8_t* acc) {
  return (acc[0] ? 1u : 0u) | (acc[1] ? 2u : 0u) | (acc[2] ? 4u : 0u) | (acc[3] ? 8u : 0u);
}

}  // namespace

void phase_accept_avx2(const double* phi2, const double* phi3, std::size_t n, double window,
                       std::uint8_t* accept) {
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256d inv_two_pi = _mm256_set1_pd(kInvTwoPi);
  const __m256d w = _mm256_set1_pd(window);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(phi3 + i), _mm256_loadu_pd(phi2 + i));
    const __m256d turns = _mm256_round_pd(_mm256_mul_pd(d, inv_two_pi),
                                          _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d r = _mm256_sub_pd(d, _mm256_mul_pd(two_pi, turns));
    const int bits = _mm256_movemask_pd(_mm256_cmp_pd(vabs(r), w, _CMP_LT_OQ));
    accept[i + 0] = static_cast<std::uint8_t>(bits & 1);
    accept[i + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
    accept[i + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
    accept[i + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
  }
  phase_accept_scalar(phi2 + i, phi3 + i, n - i, window, accept + i);
}

void malus_tally_avx2(const MalusArgs& a, std::uint64_t* tally) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d ca = _mm256_set1_pd(a.cos2a);
  const __m256d sa = _mm256_set1_pd(a.sin2a);
  const __m256d cb = _mm256_set1_pd(a.cos2b);
  const __m256d sb = _mm256_set1_pd(a.sin2b);
  const __m256d sign = _mm256_set1_pd(a.partner_sign);

  std::size_t i = 0;
  for (; i + 4 <= a.n; i += 4) {
    const unsigned acc = accepted_bits(a.accepted + i);
    if (acc == 0) continue;
    const __m256d c = _mm256_loadu_pd(a.cos2theta + i);
    const __m256d s = _mm256_loadu_pd(a.sin2theta + i);
    const __m256d t1 = _mm256_add_pd(_mm256_mul_pd(c, ca), _mm256_mul_pd(s, sa));
    const __m256d t2 = _mm256_add_pd(_mm256_mul_pd(c, cb), _mm256_mul_pd(s, sb));
    const __m256d p1 = _mm256_mul_pd(half, _mm256_add_pd(one, t1));
    const __m256d p2 = _mm256_mul_pd(half, _mm256_add_pd(one, _mm256_mul_pd(sign, t2)));
    const unsigned plus1 = static_cast<unsigned>(
        _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(a.u_first + i), p1, _CMP_LT_OQ)));
    const unsigned plus2 = static_cast<unsigned>(
        _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(a.u_second + i), p2, _CMP_LT_OQ)));
    const unsigned minus1 = ~plus1 & 0xFu;
    const unsigned minus2 = ~plus2 & 0xFu;
    tally[0] += static_cast<std::uint64_t>(__builtin_popcount(acc & plus1 & plus2));
    tally[1] += static_cast<std::uint64_t>(__builtin_popcount(acc & plus1 & minus2));
    tally[2] += static_cast<std::uint64_t>(__builtin_popcount(acc & minus1 & plus2));
    tally[3] += static_cast<std::uint64_t>(__builtin_popcount(acc & minus1 & minus2));
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
  __m256d re, im;
};

inline CVec cmul_scalar(double mr, double mi, CVec y) {
  const __m256d r = _mm256_set1_pd(mr);
  const __m256d i = _mm256_set1_pd(mi);
  return {_mm256_sub_pd(_mm256_mul_pd(r, y.re), _mm256_mul_pd(i, y.im)),
          _mm256_add_pd(_mm256_mul_pd(r, y.im), _mm256_mul_pd(i, y.re))};
}

inline CVec cmul(CVec x, CVec y) {
  return {_mm256_sub_pd(_mm256_mul_pd(x.re, y.re), _mm256_mul_pd(x.im, y.im)),
          _mm256_add_pd(_mm256_mul_pd(x.re, y.im), _mm256_mul_pd(x.im, y.re))};
}

inline CVec cadd(CVec x, CVec y) { return {_mm256_add_pd(x.re, y.re), _mm256_add_pd(x.im, y.im)}; }

}  // namespace

void product_born_avx2(const ProductArgs& a) {
  const double* m = a.m;
  std::size_t i = 0;
  for (; i + 4 <= a.n; i += 4) {
    const CVec x0{_mm256_loadu_pd(a.in[0] + i), _mm256_loadu_pd(a.in[1] + i)};
    const CVec x1{_mm256_loadu_pd(a.in[2] + i), _mm256_loadu_pd(a.in[3] + i)};
    const CVec y0{_mm256_loadu_pd(a.in[4] + i), _mm256_loadu_pd(a.in[5] + i)};
    const CVec y1{_mm256_loadu_pd(a.in[6] + i), _mm256_loadu_pd(a.in[7] + i)};

    const CVec t0 = cadd(cmul_scalar(m[0], m[1], y0), cmul_scalar(m[2], m[3], y1));
    const CVec t1 = cadd(cmul_scalar(m[4], m[5], y0), cmul_scalar(m[6], m[7], y1));
    const CVec amp = cadd(cmul(t0, x0), cmul(t1, x1));
    _mm256_storeu_pd(a.out + i, _mm256_add_pd(_mm256_mul_pd(amp.re, amp.re),
                                              _mm256_mul_pd(amp.im, amp.im)));
  }

  ProductArgs tail = a;
  for (auto& p : tail.in) p += i;
  tail.out += i;
  tail.n = a.n - i;
  product_born_scalar(tail);
}

}  // namespace epr::kernels::detail
