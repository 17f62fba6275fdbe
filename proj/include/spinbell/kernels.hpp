#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "spinbell/types.hpp"

// Data-parallel inner loops behind the frequency sweeps and the numeric CHSH
// search. Each kernel has a scalar reference implementation and an AVX2
// variant selected at runtime; the two are equivalence-tested. The AVX2 code
// uses no fused multiply-add so both variants execute the same IEEE
// operations per element.

namespace spinbell::kernels {

enum class Isa { Auto, Scalar, Avx2 };

bool avx2_available();

// Auto resolves to Avx2 when the CPU supports it, Scalar otherwise.
// Requesting Avx2 on an unsupported CPU throws.
Isa resolve(Isa requested);

std::string isa_name(Isa isa);

// Cavity reflection r(w) = 1 - kappa*De / (De*Dc + g^2) with
// De = i(omega_d - w) + gamma/2 and Dc = i(omega_c - w) + kappa_t/2,
// evaluated over a frequency grid for the coupled cavity ("hot", g as given)
// and the empty cavity ("cold"). For the empty cavity the De factor cancels
// and the kernel evaluates the identical reduced form 1 - kappa/Dc, which
// stays finite at the gamma = 0, w = omega_d degeneracy.
//
// sin_rot[k] = |sin(arg r_hot - arg r_cold)| at omega[k], or 0 where either
// reflection magnitude underflows.
struct ReflectionSweepParams {
  double g2 = 0.0;  // g squared; must be > 0 for a meaningful hot response
  double kappa = 0.0;
  double half_gamma = 0.0;
  double half_kappa_t = 0.0;
  double omega_c = 0.0;
  double omega_d = 0.0;
};

void reflection_sweep(const ReflectionSweepParams& p, std::span<const double> omega,
                      std::span<double> rh_re, std::span<double> rh_im,
                      std::span<double> rc_re, std::span<double> rc_im,
                      std::span<double> sin_rot, Isa isa = Isa::Auto);

// Maximum over ordered pairs (i <= j) of |m_i + m_j| + |m_i - m_j| for an
// array of 3-vectors in structure-of-arrays layout. This is the CHSH value of
// settings (b0, b1) = (dir_i, dir_j) after the closed-form optimization over
// Alice's two axes. Ties resolve to the first pair in lexicographic scan
// order, identically for both variants.
struct PairMax {
  double value = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
};

PairMax max_chsh_pair(std::span<const double> mx, std::span<const double> my,
                      std::span<const double> mz, Isa isa = Isa::Auto);

}  // namespace spinbell::kernels
