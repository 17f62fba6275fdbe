#pragma once

#include <span>

#include "spinbell/kernels.hpp"

// Internal entry points for the per-ISA kernel variants.

namespace spinbell::kernels::detail {

void reflection_sweep_scalar(const ReflectionSweepParams& p, std::span<const double> omega,
                             std::span<double> rh_re, std::span<double> rh_im,
                             std::span<double> rc_re, std::span<double> rc_im,
                             std::span<double> sin_rot);

PairMax max_chsh_pair_scalar(std::span<const double> mx, std::span<const double> my,
                             std::span<const double> mz);

#if defined(__x86_64__) || defined(__i386__)
#define SPINBELL_HAVE_AVX2_VARIANTS 1
void reflection_sweep_avx2(const ReflectionSweepParams& p, std::span<const double> omega,
                           std::span<double> rh_re, std::span<double> rh_im,
                           std::span<double> rc_re, std::span<double> rc_im,
                           std::span<double> sin_rot);

PairMax max_chsh_pair_avx2(std::span<const double> mx, std::span<const double> my,
                           std::span<const double> mz);
#else
#define SPINBELL_HAVE_AVX2_VARIANTS 0
#endif

}  // namespace spinbell::kernels::detail
