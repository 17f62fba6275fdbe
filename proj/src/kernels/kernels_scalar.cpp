#include <cmath>
#include <limits>

#include "kernels_detail.hpp"

namespace spinbell::kernels::detail {

void reflection_sweep_scalar(const ReflectionSweepParams& p, std::span<const double> omega,
                             std::span<double> rh_re, std::span<double> rh_im,
                             std::span<double> rc_re, std::span<double> rc_im,
                             std::span<double> sin_rot) {
  const std::size_t n = omega.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double w = omega[k];
    const double dd = p.omega_d - w;  // emitter detuning
    const double dc = p.omega_c - w;  // cavity detuning

    // hot: r = 1 - kappa*(hg + i*dd) / ((hg*hk - dd*dc + g2) + i*(hg*dc + hk*dd))
    const double den_re = p.half_gamma * p.half_kappa_t - dd * dc + p.g2;
    const double den_im = p.half_gamma * dc + p.half_kappa_t * dd;
    const double num_re = p.kappa * p.half_gamma;
    const double num_im = p.kappa * dd;
    const double den2 = den_re * den_re + den_im * den_im;
    const double hre = 1.0 - (num_re * den_re + num_im * den_im) / den2;
    const double him = -(num_im * den_re - num_re * den_im) / den2;
    rh_re[k] = hre;
    rh_im[k] = him;

    // cold: r = 1 - kappa / (hk + i*dc) = 1 - kappa*(hk - i*dc)/|Dc|^2
    const double cden2 = p.half_kappa_t * p.half_kappa_t + dc * dc;
    const double cre = 1.0 - p.kappa * p.half_kappa_t / cden2;
    const double cim = p.kappa * dc / cden2;
    rc_re[k] = cre;
    rc_im[k] = cim;

    // |sin(arg rh - arg rc)| = |Im(rh * conj(rc))| / (|rh| |rc|)
    const double cross = him * cre - hre * cim;
    const double mag2 = (hre * hre + him * him) * (cre * cre + cim * cim);
    sin_rot[k] = mag2 > 1e-280 ? std::abs(cross) / std::sqrt(mag2) : 0.0;
  }
}

PairMax max_chsh_pair_scalar(std::span<const double> mx, std::span<const double> my,
                             std::span<const double> mz) {
  const std::size_t n = mx.size();
  PairMax best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = mx[i], yi = my[i], zi = mz[i];
    for (std::size_t j = i; j < n; ++j) {
      const double sx = xi + mx[j], sy = yi + my[j], sz = zi + mz[j];
      const double dx = xi - mx[j], dy = yi - my[j], dz = zi - mz[j];
      const double f =
          std::sqrt(sx * sx + sy * sy + sz * sz) + std::sqrt(dx * dx + dy * dy + dz * dz);
      if (f > best.value) {
        best.value = f;
        best.i = i;
        best.j = j;
      }
    }
  }
  return best;
}

}  // namespace spinbell::kernels::detail
