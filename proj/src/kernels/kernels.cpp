#include "spinbell/kernels.hpp"

#include "kernels_detail.hpp"

namespace spinbell::kernels {

bool avx2_available() {
#if SPINBELL_HAVE_AVX2_VARIANTS
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa resolve(Isa requested) {
  switch (requested) {
    case Isa::Auto:
      return avx2_available() ? Isa::Avx2 : Isa::Scalar;
    case Isa::Scalar:
      return Isa::Scalar;
    case Isa::Avx2:
      if (!avx2_available()) throw validation_error("kernels: AVX2 not available on this CPU");
      return Isa::Avx2;
  }
  return Isa::Scalar;
}

std::string isa_name(Isa isa) {
  switch (isa) {
    case Isa::Auto:
      return "auto";
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

void reflection_sweep(const ReflectionSweepParams& p, std::span<const double> omega,
                      std::span<double> rh_re, std::span<double> rh_im,
                      std::span<double> rc_re, std::span<double> rc_im,
                      std::span<double> sin_rot, Isa isa) {
  const std::size_t n = omega.size();
  if (rh_re.size() != n || rh_im.size() != n || rc_re.size() != n || rc_im.size() != n ||
      sin_rot.size() != n) {
    throw validation_error("reflection_sweep: output spans must match the grid size");
  }
#if SPINBELL_HAVE_AVX2_VARIANTS
  if (resolve(isa) == Isa::Avx2) {
    detail::reflection_sweep_avx2(p, omega, rh_re, rh_im, rc_re, rc_im, sin_rot);
    return;
  }
#else
  (void)isa;
#endif
  detail::reflection_sweep_scalar(p, omega, rh_re, rh_im, rc_re, rc_im, sin_rot);
}

PairMax max_chsh_pair(std::span<const double> mx, std::span<const double> my,
                      std::span<const double> mz, Isa isa) {
  if (mx.size() != my.size() || mx.size() != mz.size()) {
    throw validation_error("max_chsh_pair: component spans must have equal size");
  }
  if (mx.empty()) throw validation_error("max_chsh_pair: empty input");
#if SPINBELL_HAVE_AVX2_VARIANTS
  if (resolve(isa) == Isa::Avx2) return detail::max_chsh_pair_avx2(mx, my, mz);
#else
  (void)isa;
#endif
  return detail::max_chsh_pair_scalar(mx, my, mz);
}

}  // namespace spinbell::kernels
