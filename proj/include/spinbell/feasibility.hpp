#pragma once

#include <string>
#include <vector>

#include "spinbell/cavity.hpp"
#include "spinbell/protocol.hpp"
#include "spinbell/types.hpp"

// Platform planner: profile ingestion, loophole timing constraints, minimum
// separation, heralding budget and acquisition time.

namespace spinbell {

struct PlatformProfile {
  std::string name;
  CavityParams cavity;
  double alpha_bar = 0.0;          // radians, as quoted for the platform
  double tau = 0.0;                // spin coherence time, seconds
  double delta_t = 0.0;            // spin manipulation + readout time, seconds
  TransitionConvention convention = TransitionConvention::TwoTransition;
  double lambda = 0.0;             // photon wavelength, meters
  double loss_db_per_km = 0.0;
  double eta_c = 0.0;              // cavity reflectivity
  double eta_d = 0.0;              // detector efficiency
  double source_rate = 0.0;        // source attempt rate, Hz
  double pair_probability = 0.0;   // photon-pair probability per attempt

  void validate() const;
};

// Parses a single profile object. Keys (all required, no others allowed):
// name, g_mhz_over_2pi, kappa_mhz_over_2pi, kappa_s_mhz_over_2pi,
// gamma_mhz_over_2pi, alpha_bar_rad, tau_us, delta_t_ns, convention
// ("two_transition" | "single_transition"), lambda_nm, loss_db_per_km,
// eta_c, eta_d, source_rate_hz, pair_probability.
// Rates quoted as value/(2*pi) in MHz are converted to rad/s; the cavity and
// emitter resonances are both set to 2*pi*c/lambda.
PlatformProfile profile_from_json(const std::string& text);

std::string profile_to_json(const PlatformProfile& p);

// The four bundled platforms: atoms, nv, dots, low-q.
const std::vector<PlatformProfile>& builtin_profiles();

// Accepts a bundled profile name or a path to a JSON profile file.
PlatformProfile load_profile(const std::string& name_or_path);

// D_min = c * delta_t.
double min_separation(double delta_t);

// t ~ D/c + T_l with a default logic delay of 100 ns.
double measurement_delay(double d, double t_logic = 100e-9);

// eta_t = 10^(-loss * d_km / 10), attenuation over the full separation d.
double channel_transmission(double d, double loss_db_per_km);

// eta_t * eta_c^2 * eta_d^2 * N_eff / 4 per photon pair, with N_eff from the
// interaction's effective angles. Throws computation_error when N_eff = 0.
double herald_probability(const PlatformProfile& profile, const InteractionParams& interaction,
                          double d);

struct ConstraintCheck {
  std::string name;
  bool ok = false;
};

struct PlanOptions {
  double t_logic = 100e-9;       // detection + electronics delay, seconds
  double dark_count_rate = 0.0;  // detector dark counts, Hz; 0 disables the warning
};

struct FeasibilityReport {
  double min_d = 0.0;             // c * delta_t
  double d = 0.0;                 // planned separation
  double t_delay = 0.0;           // D/c + T_l
  double t_double_readout = 0.0;  // 2 * delta_t
  double t_used = 0.0;            // max of the two, drives the CHSH prediction
  double t_over_tau = 0.0;
  double readout_bound = 0.0;     // 10 tau_c / sin^2(alpha_bar)
  double chsh_expected = 0.0;     // NaN when the herald state is undefined
  double herald_prob = 0.0;
  double herald_rate = 0.0;       // per second
  double n_runs = 0.0;
  double acquisition_time = 0.0;  // n_runs / herald_rate, seconds
  // Both readings of the quoted interaction angle, per transition convention.
  double herald_prob_two_transition = 0.0;
  double herald_prob_single_transition = 0.0;
  bool dark_count_warning = false;
  std::vector<ConstraintCheck> constraints;
  std::vector<std::string> errors;

  bool all_constraints_ok() const;
};

// Assembles the loophole checks (readout time within 15% of its bound to
// absorb the 1-2 significant digits the platform tables are quoted at), the
// decohered CHSH prediction at t_used, and the heralding budget.
FeasibilityReport plan(const PlatformProfile& profile, const InteractionParams& interaction,
                       double d, double n_runs, const PlanOptions& options = {});

}  // namespace spinbell
