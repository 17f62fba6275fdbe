#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinbell {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact SI value

// Input fails a contract check. CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation has no defined result for valid-looking inputs, e.g. a
// zero-probability herald. CLI maps this to exit code 3.
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }

  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw validation_error("Vec3::normalized: zero vector");
    return {x / n, y / n, z / n};
  }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline bool is_finite(const Complex& c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

}  // namespace spinbell
