#include "spinbell/protocol.hpp"

#include <cmath>

namespace spinbell {

namespace {

double wrap_two_pi(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

void check_angle_range(double a, const char* name) {
  if (!(a >= 0.0 && a < kTwoPi)) {
    throw validation_error(std::string("InteractionParams: ") + name +
                           " must lie in [0, 2*pi)");
  }
}

}  // namespace

double EffectiveAngles::herald_norm() const {
  const double sd = std::sin(delta_alpha);
  const double sm = std::sin(mean_alpha);
  return sd * sd + sm * sm;
}

InteractionParams::InteractionParams(double alpha_a, double alpha_b,
                                     TransitionConvention convention)
    : alpha_a_(alpha_a), alpha_b_(alpha_b), convention_(convention) {
  check_angle_range(alpha_a_, "alpha_a");
  check_angle_range(alpha_b_, "alpha_b");
}

InteractionParams InteractionParams::from_mean_delta(double mean_alpha, double delta_alpha,
                                                     TransitionConvention convention) {
  return InteractionParams(wrap_two_pi(mean_alpha + delta_alpha),
                           wrap_two_pi(mean_alpha - delta_alpha), convention);
}

EffectiveAngles InteractionParams::effective() const {
  const double scale = convention_ == TransitionConvention::SingleTransition ? 0.5 : 1.0;
  return {scale * mean_alpha(), scale * delta_alpha()};
}

DecoherenceParams::DecoherenceParams(double t_, double tau_) : t(t_), tau(tau_) {
  if (!(t >= 0.0)) throw validation_error("DecoherenceParams: t must be >= 0");
  if (!(tau > 0.0)) throw validation_error("DecoherenceParams: tau must be > 0");
}

std::array<Complex, 4> faraday_unitary(double alpha, TransitionConvention convention) {
  const Complex phase = std::polar(1.0, alpha);
  if (convention == TransitionConvention::TwoTransition) {
    return {phase, 1.0, 1.0, phase};  // (L up, L down, R up, R down)
  }
  return {phase, 1.0, 1.0, 1.0};
}

HeraldResult evolve_and_herald(const InteractionParams& params, HeraldPattern pattern) {
  if (pattern != HeraldPattern::HH) {
    throw validation_error(
        "evolve_and_herald: only the (H,H) herald pattern is modeled");
  }

  // Initial state: photon singlet (x) |+> (x) |+>, joint index
  // 8*pA + 4*pB + 2*sA + sB with L = 0, R = 1, up = 0, down = 1.
  const PureState plus({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  PureState joint = tensor(bell_psi_minus(), tensor(plus, plus));

  const auto ua = faraday_unitary(params.alpha_a(), params.convention());
  const auto ub = faraday_unitary(params.alpha_b(), params.convention());

  std::vector<Complex> amps(16);
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const std::size_t pa = (idx >> 3) & 1, pb = (idx >> 2) & 1;
    const std::size_t sa = (idx >> 1) & 1, sb = idx & 1;
    amps[idx] = joint.amp(idx) * ua[pa * 2 + sa] * ub[pb * 2 + sb];
  }

  // Herald projector per arm: <H| for TwoTransition; for SingleTransition the
  // diagonal basis rotated by alpha/4, which undoes the polarization half of
  // U_single(alpha) = U_two(alpha/2) * (pol phase) (x) (spin phase).
  const bool single = params.convention() == TransitionConvention::SingleTransition;
  const double phi_a = single ? params.alpha_a() / 4.0 : 0.0;
  const double phi_b = single ? params.alpha_b() / 4.0 : 0.0;
  const std::array<Complex, 2> ha = {std::polar(1.0 / std::sqrt(2.0), phi_a),
                                     std::polar(1.0 / std::sqrt(2.0), -phi_a)};
  const std::array<Complex, 2> hb = {std::polar(1.0 / std::sqrt(2.0), phi_b),
                                     std::polar(1.0 / std::sqrt(2.0), -phi_b)};

  std::vector<Complex> spin(4, Complex(0.0, 0.0));
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const std::size_t pa = (idx >> 3) & 1, pb = (idx >> 2) & 1;
    spin[idx & 3] += std::conj(ha[pa]) * std::conj(hb[pb]) * amps[idx];
  }

  double prob = 0.0;
  for (const Complex& c : spin) prob += std::norm(c);
  if (prob < 1e-24) {
    throw computation_error(
        "evolve_and_herald: herald probability is zero, no heralding possible "
        "(the H-projection of the antisymmetric photon state vanishes when "
        "alpha_a = alpha_b = 0)");
  }

  PureState state(std::move(spin));
  state.normalize();

  // Fix the global phase on the |psi-> coefficient, (amp(1) - amp(2))/sqrt2.
  const Complex psi_minus_coeff = (state.amp(1) - state.amp(2)) / std::sqrt(2.0);
  if (std::abs(psi_minus_coeff) > 1e-14) {
    const Complex phase = std::conj(psi_minus_coeff) / std::abs(psi_minus_coeff);
    std::vector<Complex> fixed(4);
    for (std::size_t i = 0; i < 4; ++i) fixed[i] = state.amp(i) * phase;
    state = PureState(std::move(fixed));
  } else {
    std::size_t ref = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (std::abs(state.amp(i)) > std::abs(state.amp(ref))) ref = i;
    state.fix_global_phase(ref);
  }

  return {std::move(state), prob};
}

DensityMatrix decohere(const PureState& s, const DecoherenceParams& d) {
  const double v = std::exp(-d.t / d.tau);
  return mix(density_from_pure(s), DensityMatrix::identity_quarter(), v);
}

}  // namespace spinbell
