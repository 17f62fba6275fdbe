// AVX2 variants. This translation unit is compiled with -mavx2 (no FMA) and
// must only be entered after a runtime CPU check.

#include "kernels_detail.hpp"

#if SPINBELL_HAVE_AVX2_VARIANTS

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace spinbell::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign_mask, v);
}

}  // namespace

void reflection_sweep_avx2(const ReflectionSweepParams& p, std::span<const double> omega,
                           std::span<double> rh_re, std::span<double> rh_im,
                           std::span<double> rc_re, std::span<double> rc_im,
                           std::span<double> sin_rot) {
  const std::size_t n = omega.size();
  const std::size_t vec_end = n - n % 4;

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d g2 = _mm256_set1_pd(p.g2);
  const __m256d kap = _mm256_set1_pd(p.kappa);
  const __m256d hg = _mm256_set1_pd(p.half_gamma);
  const __m256d hk = _mm256_set1_pd(p.half_kappa_t);
  const __m256d wc = _mm256_set1_pd(p.omega_c);
  const __m256d wd = _mm256_set1_pd(p.omega_d);
  const __m256d tiny = _mm256_set1_pd(1e-280);
  const __m256d zero = _mm256_setzero_pd();

  for (std::size_t k = 0; k < vec_end; k += 4) {
    const __m256d w = _mm256_loadu_pd(omega.data() + k);
    const __m256d dd = _mm256_sub_pd(wd, w);
    const __m256d dc = _mm256_sub_pd(wc, w);

    const __m256d den_re =
        _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(hg, hk), _mm256_mul_pd(dd, dc)), g2);
    const __m256d den_im = _mm256_add_pd(_mm256_mul_pd(hg, dc), _mm256_mul_pd(hk, dd));
    const __m256d num_re = _mm256_mul_pd(kap, hg);
    const __m256d num_im = _mm256_mul_pd(kap, dd);
    const __m256d den2 =
        _mm256_add_pd(_mm256_mul_pd(den_re, den_re), _mm256_mul_pd(den_im, den_im));
    const __m256d hre = _mm256_sub_pd(
        one, _mm256_div_pd(
                 _mm256_add_pd(_mm256_mul_pd(num_re, den_re), _mm256_mul_pd(num_im, den_im)),
                 den2));
    const __m256d him = _mm256_sub_pd(
        zero, _mm256_div_pd(
                  _mm256_sub_pd(_mm256_mul_pd(num_im, den_re), _mm256_mul_pd(num_re, den_im)),
                  den2));
    _mm256_storeu_pd(rh_re.data() + k, hre);
    _mm256_storeu_pd(rh_im.data() + k, him);

    const __m256d cden2 =
        _mm256_add_pd(_mm256_mul_pd(hk, hk), _mm256_mul_pd(dc, dc));
    const __m256d cre =
        _mm256_sub_pd(one, _mm256_div_pd(_mm256_mul_pd(kap, hk), cden2));
    const __m256d cim = _mm256_div_pd(_mm256_mul_pd(kap, dc), cden2);
    _mm256_storeu_pd(rc_re.data() + k, cre);
    _mm256_storeu_pd(rc_im.data() + k, cim);

    const __m256d cross =
        _mm256_sub_pd(_mm256_mul_pd(him, cre), _mm256_mul_pd(hre, cim));
    const __m256d mag2 = _mm256_mul_pd(
        _mm256_add_pd(_mm256_mul_pd(hre, hre), _mm256_mul_pd(him, him)),
        _mm256_add_pd(_mm256_mul_pd(cre, cre), _mm256_mul_pd(cim, cim)));
    const __m256d s = _mm256_div_pd(abs_pd(cross), _mm256_sqrt_pd(mag2));
    const __m256d ok = _mm256_cmp_pd(mag2, tiny, _CMP_GT_OQ);
    _mm256_storeu_pd(sin_rot.data() + k, _mm256_and_pd(s, ok));
  }

  if (vec_end < n) {
    reflection_sweep_scalar(p, omega.subspan(vec_end), rh_re.subspan(vec_end),
                            rh_im.subspan(vec_end), rc_re.subspan(vec_end),
                            rc_im.subspan(vec_end), sin_rot.subspan(vec_end));
  }
}

PairMax max_chsh_pair_avx2(std::span<const double> mx, std::span<const double> my,
                           std::span<const double> mz) {
  const std::size_t n = mx.size();
  PairMax best;
  best.value = -std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    const double xi_s = mx[i], yi_s = my[i], zi_s = mz[i];
    const __m256d xi = _mm256_set1_pd(xi_s);
    const __m256d yi = _mm256_set1_pd(yi_s);
    const __m256d zi = _mm256_set1_pd(zi_s);

    __m256d lane_v = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d lane_j = _mm256_setzero_pd();
    __m256d jvec = _mm256_set_pd(static_cast<double>(i + 3), static_cast<double>(i + 2),
                                 static_cast<double>(i + 1), static_cast<double>(i));
    const __m256d four = _mm256_set1_pd(4.0);

    std::size_t j = i;
    for (; j + 4 <= n; j += 4) {
      const __m256d xj = _mm256_loadu_pd(mx.data() + j);
      const __m256d yj = _mm256_loadu_pd(my.data() + j);
      const __m256d zj = _mm256_loadu_pd(mz.data() + j);

      const __m256d sx = _mm256_add_pd(xi, xj);
      const __m256d sy = _mm256_add_pd(yi, yj);
      const __m256d sz = _mm256_add_pd(zi, zj);
      const __m256d dx = _mm256_sub_pd(xi, xj);
      const __m256d dy = _mm256_sub_pd(yi, yj);
      const __m256d dz = _mm256_sub_pd(zi, zj);

      const __m256d s2 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(sx, sx), _mm256_mul_pd(sy, sy)), _mm256_mul_pd(sz, sz));
      const __m256d d2 = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)), _mm256_mul_pd(dz, dz));
      const __m256d f = _mm256_add_pd(_mm256_sqrt_pd(s2), _mm256_sqrt_pd(d2));

      const __m256d gt = _mm256_cmp_pd(f, lane_v, _CMP_GT_OQ);
      lane_v = _mm256_blendv_pd(lane_v, f, gt);
      lane_j = _mm256_blendv_pd(lane_j, jvec, gt);
      jvec = _mm256_add_pd(jvec, four);
    }

    // Merge the four lanes: best value first, smallest index on ties.
    alignas(32) double vs[4];
    alignas(32) double js[4];
    _mm256_store_pd(vs, lane_v);
    _mm256_store_pd(js, lane_j);
    double cand_v = -std::numeric_limits<double>::infinity();
    std::size_t cand_j = 0;
    for (int lane = 0; lane < 4; ++lane) {
      const std::size_t lj = static_cast<std::size_t>(js[lane]);
      if (vs[lane] > cand_v || (vs[lane] == cand_v && lj < cand_j)) {
        cand_v = vs[lane];
        cand_j = lj;
      }
    }

    // Scalar tail, indices above every vector candidate.
    for (; j < n; ++j) {
      const double sx = xi_s + mx[j], sy = yi_s + my[j], sz = zi_s + mz[j];
      const double dx = xi_s - mx[j], dy = yi_s - my[j], dz = zi_s - mz[j];
      const double f =
          std::sqrt(sx * sx + sy * sy + sz * sz) + std::sqrt(dx * dx + dy * dy + dz * dz);
      if (f > cand_v) {
        cand_v = f;
        cand_j = j;
      }
    }

    if (cand_v > best.value) {
      best.value = cand_v;
      best.i = i;
      best.j = cand_j;
    }
  }
  return best;
}

}  // namespace spinbell::kernels::detail

#endif  // SPINBELL_HAVE_AVX2_VARIANTS
