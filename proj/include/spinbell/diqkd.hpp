#pragma once

#include <optional>
#include <vector>

#include "spinbell/feasibility.hpp"
#include "spinbell/protocol.hpp"
#include "spinbell/types.hpp"

// Device-independent key-rate model under collective attacks and the
// rate-vs-distance sweep.

namespace spinbell {

struct KeyRateInput {
  double chsh = 2.0;        // in [2, 2*sqrt2]
  double qber = 0.0;        // in [0, 1/2]
  double herald_rate = 0.0;  // per second, optional (absolute rates only)
};

struct RateCurvePoint {
  double distance_km = 0.0;
  double eta_t = 0.0;
  double herald_rate = 0.0;           // heralds per second
  double fractional_key_rate = 0.0;   // bits per heralded pair, may be negative
  double absolute_rate = 0.0;         // bits per second, clamped at 0
};

// h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

// q = sin^2(delta) / (sin^2(mean) + sin^2(delta)). Angles are taken as given;
// pass effective angles for the single-transition convention.
double qber(double mean_alpha, double delta_alpha);

// R = 1 - h(q) - h((1 + sqrt((CHSH/2)^2 - 1)) / 2), bits per heralded pair.
// May be negative; callers clamp for physical rates.
double key_rate(const KeyRateInput& in);

// Key rate against distance for one profile. The CHSH value fed to the rate
// formula is the maximal violation of the modeled state decohered by
// delta_t / tau (timing is relaxed here: no space-like separation needed),
// or chsh_override when supplied. CHSH values at or below 2 evaluate the
// formula at its boundary, giving a non-positive fractional rate.
std::vector<RateCurvePoint> figure3_sweep(const PlatformProfile& profile,
                                          const InteractionParams& interaction,
                                          const std::vector<double>& distances_km,
                                          std::optional<double> chsh_override = std::nullopt);

std::vector<double> default_distance_grid_km();  // 0..150 km in 1 km steps

}  // namespace spinbell
