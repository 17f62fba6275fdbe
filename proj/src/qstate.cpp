#include "spinbell/qstate.hpp"

#include <algorithm>
#include <cmath>

namespace spinbell {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kEigenFloor = -1e-10;

bool allowed_state_dim(std::size_t d) { return d == 2 || d == 4 || d == 16; }

// Pauli matrices, row-major 2x2.
const std::array<std::array<Complex, 4>, 3> kPauli = {{
    {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)},    // x
    {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)},   // y
    {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)},   // z
}};

}  // namespace

PureState::PureState(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (!allowed_state_dim(amps_.size())) {
    throw validation_error("PureState: dimension must be 2, 4 or 16, got " +
                           std::to_string(amps_.size()));
  }
  for (const Complex& a : amps_) {
    if (!is_finite(a)) throw validation_error("PureState: non-finite amplitude");
  }
}

double PureState::norm() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void PureState::normalize() {
  const double n = norm();
  if (n < 1e-300) throw computation_error("PureState::normalize: zero norm");
  for (Complex& a : amps_) a /= n;
}

void PureState::fix_global_phase(std::size_t reference) {
  const Complex r = amps_.at(reference);
  const double mag = std::abs(r);
  if (mag < 1e-14) return;
  const Complex phase = std::conj(r) / mag;
  for (Complex& a : amps_) a *= phase;
}

Complex PureState::inner(const PureState& other) const {
  if (other.dim() != dim()) throw validation_error("PureState::inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

PureState tensor(const PureState& a, const PureState& b) {
  const std::size_t d = a.dim() * b.dim();
  if (d != 4 && d != 16) {
    throw validation_error("tensor: input dimensions " + std::to_string(a.dim()) + "x" +
                           std::to_string(b.dim()) + " do not multiply to 4 or 16");
  }
  std::vector<Complex> out(d);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a.amp(i) * b.amp(j);
  return PureState(std::move(out));
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

PureState bell_phi_plus() { return PureState({kInvSqrt2, 0.0, 0.0, kInvSqrt2}); }
PureState bell_phi_minus() { return PureState({kInvSqrt2, 0.0, 0.0, -kInvSqrt2}); }
PureState bell_psi_plus() { return PureState({0.0, kInvSqrt2, kInvSqrt2, 0.0}); }
PureState bell_psi_minus() { return PureState({0.0, kInvSqrt2, -kInvSqrt2, 0.0}); }

DensityMatrix::DensityMatrix() = default;

const Complex& DensityMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= 4 || col >= 4) throw validation_error("DensityMatrix::at: index out of range");
  return m_[row * 4 + col];
}

Complex& DensityMatrix::at(std::size_t row, std::size_t col) {
  if (row >= 4 || col >= 4) throw validation_error("DensityMatrix::at: index out of range");
  return m_[row * 4 + col];
}

Complex DensityMatrix::trace() const { return m_[0] + m_[5] + m_[10] + m_[15]; }

double DensityMatrix::purity() const {
  // Tr rho^2 = sum_ij rho_ij rho_ji; real for Hermitian rho.
  Complex s = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) s += m_[r * 4 + c] * m_[c * 4 + r];
  return s.real();
}

namespace {

// Smallest eigenvalue of a 4x4 Hermitian matrix by cyclic complex Jacobi.
double min_eigenvalue_hermitian(std::array<Complex, 16> a) {
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) off += std::norm(a[p * 4 + q]);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const Complex apq = a[p * 4 + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[p * 4 + p].real();
        const double aqq = a[q * 4 + q].real();
        // Phase-rotate so the pivot becomes real, then do a real Jacobi step.
        const Complex phase = apq / std::abs(apq);
        const double g = std::abs(apq);
        const double theta = 0.5 * std::atan2(2.0 * g, aqq - app);
        const double c = std::cos(theta);
        const Complex s = std::sin(theta) * std::conj(phase);
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex akp = a[k * 4 + p];
          const Complex akq = a[k * 4 + q];
          a[k * 4 + p] = c * akp - std::conj(s) * akq;
          a[k * 4 + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex apk = a[p * 4 + k];
          const Complex aqk = a[q * 4 + k];
          a[p * 4 + k] = c * apk - s * aqk;
          a[q * 4 + k] = std::conj(s) * apk + c * aqk;
        }
      }
    }
  }
  double mn = a[0].real();
  for (std::size_t i = 1; i < 4; ++i) mn = std::min(mn, a[i * 4 + i].real());
  return mn;
}

}  // namespace

void DensityMatrix::validate() const {
  for (const Complex& c : m_) {
    if (!is_finite(c)) throw validation_error("DensityMatrix: non-finite entry");
  }
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = r; c < 4; ++c) {
      const Complex d = m_[r * 4 + c] - std::conj(m_[c * 4 + r]);
      if (std::abs(d) > kAlgebraTol) {
        throw validation_error("DensityMatrix: not Hermitian within 1e-12");
      }
    }
  }
  if (std::abs(trace() - Complex(1.0, 0.0)) > kAlgebraTol) {
    throw validation_error("DensityMatrix: trace differs from 1 by more than 1e-12");
  }
  if (min_eigenvalue_hermitian(m_) < kEigenFloor) {
    throw validation_error("DensityMatrix: negative eigenvalue below -1e-10");
  }
}

DensityMatrix DensityMatrix::identity_quarter() {
  DensityMatrix d;
  for (std::size_t i = 0; i < 4; ++i) d.at(i, i) = 0.25;
  return d;
}

DensityMatrix density_from_pure(const PureState& s) {
  if (s.dim() != 4) throw validation_error("density_from_pure: state must have dimension 4");
  if (std::abs(s.norm() - 1.0) > 1e-9) {
    throw validation_error("density_from_pure: state is not normalized");
  }
  DensityMatrix rho;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) rho.at(r, c) = s.amp(r) * std::conj(s.amp(c));
  return rho;
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw validation_error("mix: weight must be in [0,1]");
  DensityMatrix out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out.at(r, c) = w * a.at(r, c) + (1.0 - w) * b.at(r, c);
  return out;
}

Vec3 CorrelationMatrix::apply(const Vec3& v) const {
  return {t[0][0] * v.x + t[0][1] * v.y + t[0][2] * v.z,
          t[1][0] * v.x + t[1][1] * v.y + t[1][2] * v.z,
          t[2][0] * v.x + t[2][1] * v.y + t[2][2] * v.z};
}

Vec3 CorrelationMatrix::apply_transpose(const Vec3& v) const {
  return {t[0][0] * v.x + t[1][0] * v.y + t[2][0] * v.z,
          t[0][1] * v.x + t[1][1] * v.y + t[2][1] * v.z,
          t[0][2] * v.x + t[1][2] * v.y + t[2][2] * v.z};
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  CorrelationMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // Tr[rho (sigma_i (x) sigma_j)] with the Kronecker index split
      // row = 2*ra + rb, col = 2*ca + cb.
      Complex tr = 0.0;
      for (std::size_t ra = 0; ra < 2; ++ra)
        for (std::size_t rb = 0; rb < 2; ++rb)
          for (std::size_t ca = 0; ca < 2; ++ca)
            for (std::size_t cb = 0; cb < 2; ++cb)
              tr += rho.at(2 * ca + cb, 2 * ra + rb) * kPauli[i][ra * 2 + ca] *
                    kPauli[j][rb * 2 + cb];
      out.t[i][j] = tr.real();
    }
  }
  return out;
}

double concurrence_bell_superposition(double c_phi, double c_psi) {
  const double n2 = c_phi * c_phi + c_psi * c_psi;
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw validation_error("concurrence_bell_superposition: coefficients not normalized");
  }
  return std::abs(c_psi * c_psi - c_phi * c_phi);
}

double concurrence(const PureState& s) {
  if (s.dim() != 4) throw validation_error("concurrence: state must have dimension 4");
  if (std::abs(s.norm() - 1.0) > 1e-9) {
    throw validation_error("concurrence: state is not normalized");
  }
  // sigma_y (x) sigma_y |s*> has amplitudes (-a3*, a2*, a1*, -a0*).
  const Complex a0 = s.amp(0), a1 = s.amp(1), a2 = s.amp(2), a3 = s.amp(3);
  const Complex overlap =
      std::conj(a0) * (-std::conj(a3)) + std::conj(a1) * std::conj(a2) +
      std::conj(a2) * std::conj(a1) + std::conj(a3) * (-std::conj(a0));
  return std::abs(overlap);
}

}  // namespace spinbell
