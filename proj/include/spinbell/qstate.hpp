#pragma once

#include <array>
#include <vector>

#include "spinbell/types.hpp"

// Exact complex linear algebra for one- and two-qubit pure states, 4x4
// density matrices, Pauli correlation matrices and entanglement measures.
//
// Basis ordering convention (used by every module in this project):
// amplitudes are stored lexicographically over the tensor factors, with the
// leftmost factor most significant. For a spin pair the order is
// |uu>, |ud>, |du>, |dd>; for the photon-pair (x) spin-pair joint space the
// 16 amplitudes run over (photon A, photon B, spin A, spin B) with
// |L> = 0, |R> = 1 and |up> = 0, |down> = 1.

namespace spinbell {

class PureState {
 public:
  // Allowed dimensions: 2 (single qubit factor), 4 (qubit pair),
  // 16 (photon pair x spin pair).
  explicit PureState(std::vector<Complex> amps);

  std::size_t dim() const { return amps_.size(); }
  const Complex& amp(std::size_t i) const { return amps_.at(i); }
  const std::vector<Complex>& amps() const { return amps_; }

  double norm() const;
  // Scales to unit norm; throws computation_error on a zero vector.
  void normalize();

  // Multiplies by the phase that makes amps_[reference] real non-negative.
  void fix_global_phase(std::size_t reference);

  Complex inner(const PureState& other) const;  // <this|other>

 private:
  std::vector<Complex> amps_;
};

// Kronecker product in the lexicographic order above. Input dimensions must
// multiply to 4 or 16.
PureState tensor(const PureState& a, const PureState& b);

// Bell basis states of a qubit pair.
PureState bell_phi_plus();   // (|uu> + |dd>)/sqrt2
PureState bell_phi_minus();  // (|uu> - |dd>)/sqrt2
PureState bell_psi_plus();   // (|ud> + |du>)/sqrt2
PureState bell_psi_minus();  // (|ud> - |du>)/sqrt2

class DensityMatrix {
 public:
  DensityMatrix();  // zero matrix

  const Complex& at(std::size_t row, std::size_t col) const;
  Complex& at(std::size_t row, std::size_t col);

  Complex trace() const;
  double purity() const;  // Tr rho^2

  // Hermiticity within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
  void validate() const;

  static DensityMatrix identity_quarter();  // I/4, the fully mixed state

 private:
  std::array<Complex, 16> m_{};
};

// |s><s| for a normalized 4-dimensional state.
DensityMatrix density_from_pure(const PureState& s);

// w*a + (1-w)*b, w in [0,1].
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w);

// T_ij = Tr[rho sigma_i (x) sigma_j], Pauli order (x, y, z). Entries land in
// [-1, 1] up to rounding for any valid density matrix.
struct CorrelationMatrix {
  std::array<std::array<double, 3>, 3> t{};

  Vec3 apply(const Vec3& v) const;             // T v
  Vec3 apply_transpose(const Vec3& v) const;   // T^T v
};

CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

// Concurrence of c_phi |phi-> + c_psi |psi-> with real coefficients
// normalized to c_phi^2 + c_psi^2 = 1 (within 1e-9): |c_psi^2 - c_phi^2|.
double concurrence_bell_superposition(double c_phi, double c_psi);

// General spin-flip concurrence |<s*| sigma_y (x) sigma_y |s>| of a
// normalized two-qubit pure state.
double concurrence(const PureState& s);

}  // namespace spinbell
