#include "spinbell/diqkd.hpp"

#include <algorithm>
#include <cmath>

#include "spinbell/bell.hpp"

namespace spinbell {

namespace {
constexpr double kTsirelson = 2.8284271247461903;  // 2*sqrt2
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw validation_error("binary_entropy: argument must lie in [0, 1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double qber(double mean_alpha, double delta_alpha) {
  const double sd = std::sin(delta_alpha), sm = std::sin(mean_alpha);
  const double n = sd * sd + sm * sm;
  if (n <= 0.0) throw computation_error("qber: herald norm N is zero");
  return sd * sd / n;
}

double key_rate(const KeyRateInput& in) {
  if (in.chsh > kTsirelson + 1e-9) {
    throw validation_error("key_rate: CHSH exceeds the quantum maximum 2*sqrt2");
  }
  if (!(in.chsh >= 2.0 - 1e-12)) {
    throw validation_error("key_rate: CHSH must be at least 2");
  }
  if (!(in.qber >= 0.0 && in.qber <= 0.5)) {
    throw validation_error("key_rate: QBER must lie in [0, 1/2]");
  }
  const double half = in.chsh / 2.0;
  const double arg = std::sqrt(std::max(0.0, half * half - 1.0));
  return 1.0 - binary_entropy(in.qber) - binary_entropy(0.5 * (1.0 + std::min(arg, 1.0)));
}

std::vector<RateCurvePoint> figure3_sweep(const PlatformProfile& profile,
                                          const InteractionParams& interaction,
                                          const std::vector<double>& distances_km,
                                          std::optional<double> chsh_override) {
  if (distances_km.empty()) throw validation_error("figure3_sweep: empty distance list");
  profile.validate();

  const EffectiveAngles eff = interaction.effective();
  const double n_eff = eff.herald_norm();
  if (n_eff <= 0.0) throw computation_error("figure3_sweep: effective herald norm N is zero");
  const double q = qber(eff.mean_alpha, eff.delta_alpha);

  double chsh;
  if (chsh_override) {
    chsh = *chsh_override;
  } else {
    const HeraldResult herald = evolve_and_herald(interaction);
    const DensityMatrix rho =
        decohere(herald.state, DecoherenceParams(profile.delta_t / profile.tau, 1.0));
    chsh = horodecki_max(rho).max_value;
  }
  const double fractional = key_rate({std::clamp(chsh, 2.0, kTsirelson), q, 0.0});

  const double pair_rate = profile.source_rate * profile.pair_probability;
  const double eff_det = profile.eta_c * profile.eta_c * profile.eta_d * profile.eta_d;

  std::vector<RateCurvePoint> rows;
  rows.reserve(distances_km.size());
  for (const double km : distances_km) {
    const double eta_t = channel_transmission(km * 1000.0, profile.loss_db_per_km);
    const double herald_rate = pair_rate * eta_t * eff_det * n_eff / 4.0;
    rows.push_back({km, eta_t, herald_rate, fractional,
                    std::max(fractional, 0.0) * herald_rate});
  }
  return rows;
}

std::vector<double> default_distance_grid_km() {
  std::vector<double> km(151);
  for (std::size_t i = 0; i < km.size(); ++i) km[i] = static_cast<double>(i);
  return km;
}

}  // namespace spinbell
