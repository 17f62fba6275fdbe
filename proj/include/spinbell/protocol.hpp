#pragma once

#include <array>

#include "spinbell/qstate.hpp"
#include "spinbell/types.hpp"

// Spin-photon Faraday interaction, heralded projection onto the two-spin
// state, and the exponential-decay decoherence model.

namespace spinbell {

enum class TransitionConvention {
  // Both ground states couple: |L,up> and |R,down> acquire the phase alpha.
  TwoTransition,
  // Only one ground state is in resonance: |L,up> alone acquires the phase.
  // Physics is equivalent to TwoTransition at half the angle up to local
  // phases that the heralding optics and spin frames absorb.
  SingleTransition,
};

// Photon detection pattern at the two polarizing beam splitters. Only the
// (H,H) coincidence is modeled; the other patterns are listed for interface
// completeness and rejected by evolve_and_herald.
enum class HeraldPattern { HH, HV, VH, VV };

struct EffectiveAngles {
  double mean_alpha = 0.0;
  double delta_alpha = 0.0;

  // N = sin^2(delta) + sin^2(mean); the herald probability is N/4.
  double herald_norm() const;
};

class InteractionParams {
 public:
  // Angles in radians, each in [0, 2*pi).
  InteractionParams(double alpha_a, double alpha_b, TransitionConvention convention);

  // Builds alpha_a = mean + delta, alpha_b = mean - delta, wrapped into
  // [0, 2*pi). The accessors below re-derive mean/delta from the wrapped
  // angles, so they can differ from the constructor inputs by multiples of pi.
  static InteractionParams from_mean_delta(double mean_alpha, double delta_alpha,
                                           TransitionConvention convention);

  double alpha_a() const { return alpha_a_; }
  double alpha_b() const { return alpha_b_; }
  double mean_alpha() const { return 0.5 * (alpha_a_ + alpha_b_); }
  double delta_alpha() const { return 0.5 * (alpha_a_ - alpha_b_); }
  TransitionConvention convention() const { return convention_; }

  // The (mean, delta) pair that enters every closed-form expression:
  // as-is for TwoTransition, halved for SingleTransition.
  EffectiveAngles effective() const;

 private:
  double alpha_a_;
  double alpha_b_;
  TransitionConvention convention_;
};

struct DecoherenceParams {
  double t = 0.0;    // seconds between heralding and measurement
  double tau = 1.0;  // spin coherence time, seconds

  DecoherenceParams(double t_, double tau_);
};

struct HeraldResult {
  PureState state;            // normalized spin-pair state, pre-decoherence
  double herald_probability;  // N/4 in effective angles
};

// Diagonal of the interaction unitary on one photon (x) spin factor, basis
// order (L up, L down, R up, R down).
std::array<Complex, 4> faraday_unitary(double alpha, TransitionConvention convention);

// Builds the photon-singlet (x) spin-superposition initial state, applies the
// interaction in each arm exactly on the 16-dimensional joint space, and
// projects both photons onto the diagonal polarization that heralds spin-spin
// entanglement (for SingleTransition this is the polarization basis rotated
// by the known birefringent offset alpha/4 of each arm). The returned state
// has its |psi-> coefficient made real non-negative.
//
// Throws computation_error when the herald probability vanishes
// (alpha_a = alpha_b = 0: no interaction, nothing to herald).
HeraldResult evolve_and_herald(const InteractionParams& params,
                               HeraldPattern pattern = HeraldPattern::HH);

// exp(-t/tau) |s><s| + (1 - exp(-t/tau)) I/4.
DensityMatrix decohere(const PureState& s, const DecoherenceParams& d);

}  // namespace spinbell
