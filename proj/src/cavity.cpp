#include "spinbell/cavity.hpp"

#include <algorithm>
#include <cmath>

namespace spinbell {

namespace {

double wrap_pi(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

kernels::ReflectionSweepParams sweep_params(const CavityParams& p) {
  return {p.g * p.g,       p.kappa,   0.5 * p.gamma,
          0.5 * p.kappa_total(), p.omega_c, p.omega_d};
}

struct PointSample {
  double sin_rot;
  double r_hot_abs;
  double r_cold_abs;
};

PointSample sample_point(const kernels::ReflectionSweepParams& sp, double omega,
                         kernels::Isa isa) {
  double w = omega, hre, him, cre, cim, s;
  kernels::reflection_sweep(sp, {&w, 1}, {&hre, 1}, {&him, 1}, {&cre, 1}, {&cim, 1}, {&s, 1},
                            isa);
  return {s, std::hypot(hre, him), std::hypot(cre, cim)};
}

}  // namespace

CavityParams::CavityParams(double g_, double kappa_, double kappa_s_, double gamma_,
                           double omega_c_, double omega_d_)
    : g(g_), kappa(kappa_), kappa_s(kappa_s_), gamma(gamma_), omega_c(omega_c_),
      omega_d(omega_d_) {
  if (!(g >= 0.0 && kappa >= 0.0 && kappa_s >= 0.0 && gamma >= 0.0)) {
    throw validation_error("CavityParams: rates must be non-negative");
  }
  if (!(kappa + kappa_s > 0.0)) {
    throw validation_error("CavityParams: kappa + kappa_s must be positive");
  }
  if (!(omega_c >= 0.0 && omega_d >= 0.0)) {
    throw validation_error("CavityParams: resonance frequencies must be non-negative");
  }
}

double CavityParams::quality_factor() const {
  if (!(omega_c > 0.0)) throw validation_error("CavityParams: omega_c must be positive for Q");
  return omega_c / kappa_total();
}

double CavityParams::cavity_lifetime() const { return 1.0 / kappa_total(); }

Complex reflection(const CavityParams& p, double omega, bool coupled) {
  const Complex de(0.5 * p.gamma, p.omega_d - omega);
  const Complex dc(0.5 * p.kappa_total(), p.omega_c - omega);
  const double g2 = coupled ? p.g * p.g : 0.0;
  const Complex den = de * dc + g2;
  if (std::abs(den) < 1e-300) {
    throw computation_error(
        "reflection: vanishing denominator (zero-loss zero-detuning degeneracy)");
  }
  return 1.0 - p.kappa * de / den;
}

ReflectionPoint faraday_rotation(const CavityParams& p, double omega) {
  ReflectionPoint out;
  out.omega = omega;
  out.r_hot = reflection(p, omega, true);
  out.r_cold = reflection(p, omega, false);
  out.rotation = wrap_pi(std::arg(out.r_hot) - std::arg(out.r_cold));
  return out;
}

RotationMaximum max_faraday_rotation(const CavityParams& p, std::size_t coarse_points,
                                     kernels::Isa isa) {
  if (coarse_points < 16) {
    throw validation_error("max_faraday_rotation: need at least 16 coarse points");
  }
  const kernels::ReflectionSweepParams sp = sweep_params(p);
  const double kt = p.kappa_total();

  // Two coarse windows: the cavity line, and the (possibly much narrower)
  // emitter feature that carries the hot/cold contrast.
  struct Window {
    double lo, hi;
  };
  std::vector<Window> windows;
  windows.push_back({p.omega_c - 5.0 * kt, p.omega_c + 5.0 * kt});
  if (p.g > 0.0) {
    const double feature = p.gamma + 4.0 * p.g * p.g / kt;
    windows.push_back({p.omega_d - 20.0 * feature, p.omega_d + 20.0 * feature});
  }

  double best_sin = -1.0;
  double best_lo = windows[0].lo, best_hi = windows[0].hi, best_omega = p.omega_c;
  std::vector<double> omega(coarse_points), hre(coarse_points), him(coarse_points),
      cre(coarse_points), cim(coarse_points), srot(coarse_points);
  for (const Window& win : windows) {
    const double step = (win.hi - win.lo) / static_cast<double>(coarse_points - 1);
    for (std::size_t k = 0; k < coarse_points; ++k) {
      omega[k] = win.lo + step * static_cast<double>(k);
    }
    kernels::reflection_sweep(sp, omega, hre, him, cre, cim, srot, isa);
    for (std::size_t k = 0; k < coarse_points; ++k) {
      if (srot[k] > best_sin) {
        best_sin = srot[k];
        best_omega = omega[k];
        best_lo = k > 0 ? omega[k - 1] : omega[k];
        best_hi = k + 1 < coarse_points ? omega[k + 1] : omega[k];
      }
    }
  }

  // Golden-section polish inside the bracket around the best coarse sample.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_lo, hi = best_hi;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = sample_point(sp, x1, isa).sin_rot;
  double f2 = sample_point(sp, x2, isa).sin_rot;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (std::abs(best_omega) + kt); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = sample_point(sp, x2, isa).sin_rot;
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = sample_point(sp, x1, isa).sin_rot;
    }
  }
  const double refined = 0.5 * (lo + hi);
  const PointSample fine = sample_point(sp, refined, isa);

  RotationMaximum out;
  if (fine.sin_rot >= best_sin) {
    out = {refined, fine.sin_rot, fine.r_hot_abs, fine.r_cold_abs};
  } else {
    const PointSample coarse = sample_point(sp, best_omega, isa);
    out = {best_omega, coarse.sin_rot, coarse.r_hot_abs, coarse.r_cold_abs};
  }
  return out;
}

std::vector<KappaRatioRow> kappa_ratio_sweep(const CavityParams& base,
                                             const std::vector<double>& ratios,
                                             std::size_t coarse_points, kernels::Isa isa) {
  if (ratios.empty()) throw validation_error("kappa_ratio_sweep: empty ratio list");
  const double kt = base.kappa_total();
  std::vector<KappaRatioRow> rows;
  rows.reserve(ratios.size());
  for (const double ratio : ratios) {
    if (!(ratio > 0.0)) throw validation_error("kappa_ratio_sweep: ratios must be positive");
    const double kappa = kt * ratio / (1.0 + ratio);
    const CavityParams p(base.g, kappa, kt - kappa, base.gamma, base.omega_c, base.omega_d);
    const RotationMaximum m = max_faraday_rotation(p, coarse_points, isa);
    rows.push_back({ratio, m.omega, m.sin_rotation, m.r_hot_abs, m.r_cold_abs});
  }
  return rows;
}

std::vector<double> default_kappa_ratios() {
  return {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
}

double readout_time_min(const ReadoutModel& m) {
  const double s = std::sin(m.alpha_bar);
  if (s == 0.0) {
    throw validation_error("readout_time_min: sin(alpha_bar) vanishes, no readout signal");
  }
  const double s2 = s * s;
  if (m.regime == CouplingRegime::StrongCoupling) {
    if (!(m.tau_c > 0.0)) throw validation_error("readout_time_min: tau_c must be positive");
    return 10.0 * m.tau_c / s2;
  }
  if (!(m.tau_s > 0.0)) throw validation_error("readout_time_min: tau_s must be positive");
  if (!(m.reflectivity > 0.0 && m.reflectivity <= 1.0 + 1e-9)) {
    throw validation_error("readout_time_min: reflectivity must be in (0, 1]");
  }
  return 10.0 * m.tau_s / s2 / (m.reflectivity * m.reflectivity);
}

ReadoutCounts readout_counts_expectation(const ReadoutModel& m, bool spin_up) {
  if (!(m.n_tot >= 1.0)) {
    throw validation_error("readout_counts_expectation: n_tot must be at least 1");
  }
  const double diff = (spin_up ? 1.0 : -1.0) * m.n_tot * std::sin(0.5 * m.alpha_bar);
  return {0.5 * (m.n_tot + diff), 0.5 * (m.n_tot - diff)};
}

double readout_snr(const ReadoutModel& m) {
  if (!(m.n_tot >= 1.0)) throw validation_error("readout_snr: n_tot must be at least 1");
  return std::sqrt(m.n_tot) * std::sin(m.alpha_bar);
}

}  // namespace spinbell
