#pragma once

#include <cstddef>
#include <vector>

#include "spinbell/kernels.hpp"
#include "spinbell/types.hpp"

// Cavity-QED reflection model, Faraday-rotation extraction, readout-time
// bounds and statistics, and the fixed-kappa_T coupling-ratio sweep.
//
// Reflection of a weak probe from a lossy single-sided cavity containing a
// single two-level emitter:
//
//   r(w) = 1 - kappa * De / (De * Dc + g^2)
//   De = i(omega_d - w) + gamma/2,  Dc = i(omega_c - w) + (kappa + kappa_s)/2
//
// All rates are angular frequencies in rad/s. The empty ("cold") cavity is
// the same expression with g = 0.

namespace spinbell {

struct CavityParams {
  double g = 0.0;        // emitter-cavity coupling
  double kappa = 0.0;    // output coupling
  double kappa_s = 0.0;  // cavity loss
  double gamma = 0.0;    // emitter decay
  double omega_c = 0.0;  // cavity resonance
  double omega_d = 0.0;  // emitter resonance

  CavityParams(double g_, double kappa_, double kappa_s_, double gamma_, double omega_c_,
               double omega_d_);

  double kappa_total() const { return kappa + kappa_s; }
  double quality_factor() const;           // omega_c / kappa_total
  double cavity_lifetime() const;          // Q / omega_c = 1 / kappa_total
};

struct ReflectionPoint {
  double omega = 0.0;
  Complex r_hot;            // emitter coupled
  Complex r_cold;           // empty cavity
  double rotation = 0.0;    // arg r_hot - arg r_cold, wrapped to (-pi, pi]
};

// The expression above; coupled = false evaluates g = 0. Throws
// computation_error when the denominator vanishes (only at zero-loss
// zero-detuning degeneracies).
Complex reflection(const CavityParams& p, double omega, bool coupled);

// Single-transition geometry: one circular polarization sees the coupled
// cavity, the other the empty cavity; the rotation is their phase difference.
ReflectionPoint faraday_rotation(const CavityParams& p, double omega);

struct RotationMaximum {
  double omega = 0.0;          // frequency maximizing |sin(rotation)|
  double sin_rotation = 0.0;   // |sin(rotation)| there
  double r_hot_abs = 0.0;
  double r_cold_abs = 0.0;
};

// Max over frequency of |sin(rotation)|. The coarse grid covers two windows,
// omega_c +/- 5 kappa_T and the emitter feature omega_d +/- 20 Gamma_eff with
// Gamma_eff = gamma + 4 g^2 / kappa_T, each with coarse_points samples;
// golden-section refinement then polishes the best coarse point.
RotationMaximum max_faraday_rotation(const CavityParams& p, std::size_t coarse_points = 10001,
                                     kernels::Isa isa = kernels::Isa::Auto);

struct KappaRatioRow {
  double ratio = 0.0;             // kappa / kappa_s
  double omega_at_max = 0.0;      // rad/s
  double sin_rotation_max = 0.0;
  double r_hot_abs = 0.0;
  double r_cold_abs = 0.0;
};

// Re-splits kappa_total of the base cavity according to each ratio (kappa_T
// is preserved exactly) and reports the rotation maximum per row, in input
// order.
std::vector<KappaRatioRow> kappa_ratio_sweep(const CavityParams& base,
                                             const std::vector<double>& ratios,
                                             std::size_t coarse_points = 10001,
                                             kernels::Isa isa = kernels::Isa::Auto);

std::vector<double> default_kappa_ratios();

enum class CouplingRegime { StrongCoupling, WeakCoupling };

struct ReadoutModel {
  double n_tot = 1.0;       // detected photons
  double alpha_bar = 0.0;   // radians
  double tau_c = 0.0;       // cavity lifetime, seconds
  double tau_s = 0.0;       // emitter lifetime, seconds (weak coupling)
  CouplingRegime regime = CouplingRegime::StrongCoupling;
  double reflectivity = 1.0;  // |r| of the cavity, weak-coupling collection factor
};

// Minimum spin readout time: 10 tau_c / sin^2(alpha_bar) in strong coupling;
// 10 tau_s / sin^2(alpha_bar) / reflectivity^2 in weak coupling.
double readout_time_min(const ReadoutModel& m);

struct ReadoutCounts {
  double n_h = 0.0;
  double n_v = 0.0;
};

// n_h - n_v = +/- n_tot sin(alpha_bar / 2), sign by spin state.
ReadoutCounts readout_counts_expectation(const ReadoutModel& m, bool spin_up);

// Discrimination signal-to-noise sqrt(n_tot) * sin(alpha_bar); readout is
// near-certain when this is much larger than 1.
double readout_snr(const ReadoutModel& m);

}  // namespace spinbell
