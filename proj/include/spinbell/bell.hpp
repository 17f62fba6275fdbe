#pragma once

#include <cstddef>
#include <vector>

#include "spinbell/kernels.hpp"
#include "spinbell/qstate.hpp"
#include "spinbell/types.hpp"

// CHSH evaluation for explicit measurement settings, the maximal CHSH value
// of a two-qubit state from the singular values of its correlation matrix,
// the noise threshold of the heralded-state family, and the violation-region
// contours.

namespace spinbell {

struct MeasurementSettings {
  Vec3 a0, a1;  // Alice's two Bloch measurement axes
  Vec3 b0, b1;  // Bob's

  void validate() const;  // each axis unit norm within 1e-9
};

struct ChshReport {
  double value = 0.0;      // CHSH for the explicit settings
  double max_value = 0.0;  // maximum over all projective settings
  bool violating = false;  // max_value > 2
};

// E = Tr[rho (a.sigma)(x)(b.sigma)] = a^T T b, in [-1, 1].
double correlator(const DensityMatrix& rho, const Vec3& a, const Vec3& b);

// E00 + E01 + E10 - E11.
double chsh_value(const DensityMatrix& rho, const MeasurementSettings& s);

struct HorodeckiResult {
  double max_value = 0.0;
  MeasurementSettings optimal;  // settings that attain max_value
};

// 2*sqrt(s1^2 + s2^2) from the two largest singular values of the correlation
// matrix, together with settings built from the corresponding singular
// vectors.
HorodeckiResult horodecki_max(const DensityMatrix& rho);

ChshReport chsh_report(const DensityMatrix& rho, const MeasurementSettings& s);

struct SearchResult {
  double value = 0.0;
  MeasurementSettings settings;
};

// Numeric route to the maximal CHSH value: a dense direction grid with the
// closed-form elimination of Alice's axes, followed by local refinement of
// Bob's two axes. Cross-validates horodecki_max.
SearchResult chsh_max_search(const DensityMatrix& rho, std::size_t n_directions = 1024,
                             kernels::Isa isa = kernels::Isa::Auto);

// Critical t/tau at which the decohered heralded state stops violating CHSH:
// (1/2) ln(1 + C^2) with C = |sin^2(mean) - sin^2(delta)| / N. Returns 0 when
// the state never violates. Throws computation_error when N = 0. Angles are
// taken as given; pass effective angles for the single-transition convention.
double violation_boundary(double mean_alpha, double delta_alpha);

// Same threshold for an arbitrary pure state, found by bisection on
// horodecki_max(decohere(s, t)) = 2 over t/tau.
double violation_boundary_bisect(const PureState& s, double tol = 1e-12);

struct Figure2Row {
  double delta_alpha = 0.0;
  double mean_alpha = 0.0;
  double critical_t_over_tau = 0.0;
};

// One row per (delta, mean) grid point, outer loop over delta_alphas. The
// single undefined point delta = mean = 0 is omitted.
std::vector<Figure2Row> figure2_curves(const std::vector<double>& delta_alphas,
                                       const std::vector<double>& mean_alpha_grid);

std::vector<double> default_delta_alphas();                       // 0, pi/50, pi/20, pi/10
std::vector<double> default_mean_alpha_grid(std::size_t n = 241);  // [0, pi/2]

}  // namespace spinbell
