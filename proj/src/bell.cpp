#include "spinbell/bell.hpp"

#include <algorithm>
#include <cmath>

#include "spinbell/protocol.hpp"

namespace spinbell {

namespace {

void check_unit(const Vec3& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    throw validation_error(std::string("measurement axis ") + name + " is not unit norm");
  }
}

struct Eig3 {
  std::array<double, 3> values{};  // descending
  std::array<Vec3, 3> vectors{};   // matching order, orthonormal
};

// Cyclic Jacobi diagonalization of a symmetric 3x3 matrix.
Eig3 jacobi_sym3(std::array<std::array<double, 3>, 3> a) {
  std::array<std::array<double, 3>, 3> v = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  Eig3 out;
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
  for (int k = 0; k < 3; ++k) {
    const int c = order[k];
    out.values[k] = a[c][c];
    out.vectors[k] = Vec3{v[0][c], v[1][c], v[2][c]};
  }
  return out;
}

Vec3 any_unit_orthogonal(const Vec3& u) {
  const Vec3 trial = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return cross(u, trial).normalized();
}

// Directions roughly uniform on the sphere.
std::vector<Vec3> fibonacci_sphere(std::size_t n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(k);
    dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return dirs;
}

Vec3 from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

void MeasurementSettings::validate() const {
  check_unit(a0, "a0");
  check_unit(a1, "a1");
  check_unit(b0, "b0");
  check_unit(b1, "b1");
}

double correlator(const DensityMatrix& rho, const Vec3& a, const Vec3& b) {
  check_unit(a, "a");
  check_unit(b, "b");
  const CorrelationMatrix t = correlation_matrix(rho);
  return a.dot(t.apply(b));
}

double chsh_value(const DensityMatrix& rho, const MeasurementSettings& s) {
  s.validate();
  const CorrelationMatrix t = correlation_matrix(rho);
  return s.a0.dot(t.apply(s.b0)) + s.a0.dot(t.apply(s.b1)) + s.a1.dot(t.apply(s.b0)) -
         s.a1.dot(t.apply(s.b1));
}

HorodeckiResult horodecki_max(const DensityMatrix& rho) {
  const CorrelationMatrix t = correlation_matrix(rho);

  std::array<std::array<double, 3>, 3> tt{};  // T^T T
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) tt[i][j] += t.t[k][i] * t.t[k][j];

  const Eig3 eig = jacobi_sym3(tt);
  const double s1 = std::sqrt(std::max(0.0, eig.values[0]));
  const double s2 = std::sqrt(std::max(0.0, eig.values[1]));

  const Vec3 v1 = eig.vectors[0];
  const Vec3 v2 = eig.vectors[1];
  const Vec3 u1 = s1 > 1e-12 ? t.apply(v1) * (1.0 / s1) : Vec3{1, 0, 0};
  const Vec3 u2 = s2 > 1e-12 ? t.apply(v2) * (1.0 / s2) : any_unit_orthogonal(u1);

  const double theta = std::atan2(s2, s1);
  const double c = std::cos(theta), s = std::sin(theta);

  HorodeckiResult out;
  out.max_value = 2.0 * std::sqrt(s1 * s1 + s2 * s2);
  out.optimal = {u1, u2, v1 * c + v2 * s, v1 * c - v2 * s};
  return out;
}

ChshReport chsh_report(const DensityMatrix& rho, const MeasurementSettings& s) {
  ChshReport r;
  r.value = chsh_value(rho, s);
  r.max_value = horodecki_max(rho).max_value;
  r.violating = r.max_value > 2.0;
  return r;
}

SearchResult chsh_max_search(const DensityMatrix& rho, std::size_t n_directions,
                             kernels::Isa isa) {
  if (n_directions < 8) throw validation_error("chsh_max_search: need at least 8 directions");
  const CorrelationMatrix t = correlation_matrix(rho);

  const std::vector<Vec3> dirs = fibonacci_sphere(n_directions);
  std::vector<double> mx(n_directions), my(n_directions), mz(n_directions);
  for (std::size_t k = 0; k < n_directions; ++k) {
    const Vec3 m = t.apply(dirs[k]);
    mx[k] = m.x;
    my[k] = m.y;
    mz[k] = m.z;
  }
  const kernels::PairMax coarse = kernels::max_chsh_pair(mx, my, mz, isa);

  // Refine Bob's two axes by compass search over their spherical angles.
  const auto objective = [&](const std::array<double, 4>& ang) {
    const Vec3 b0 = from_angles(ang[0], ang[1]);
    const Vec3 b1 = from_angles(ang[2], ang[3]);
    const Vec3 p = t.apply(b0 + b1);
    const Vec3 q = t.apply(b0 - b1);
    return p.norm() + q.norm();
  };

  const Vec3 g0 = dirs[coarse.i];
  const Vec3 g1 = dirs[coarse.j];
  std::array<double, 4> ang = {std::acos(std::clamp(g0.z, -1.0, 1.0)), std::atan2(g0.y, g0.x),
                               std::acos(std::clamp(g1.z, -1.0, 1.0)), std::atan2(g1.y, g1.x)};
  double best = objective(ang);
  double step = 2.0 * std::sqrt(4.0 * kPi / static_cast<double>(n_directions));
  while (step > 1e-10) {
    bool improved = false;
    for (int d = 0; d < 4; ++d) {
      for (const double sign : {+1.0, -1.0}) {
        std::array<double, 4> trial = ang;
        trial[d] += sign * step;
        const double val = objective(trial);
        if (val > best) {
          best = val;
          ang = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  const Vec3 b0 = from_angles(ang[0], ang[1]);
  const Vec3 b1 = from_angles(ang[2], ang[3]);
  const Vec3 p = t.apply(b0 + b1);
  const Vec3 q = t.apply(b0 - b1);
  const Vec3 a0 = p.norm() > 1e-12 ? p * (1.0 / p.norm()) : Vec3{1, 0, 0};
  Vec3 a1 = q.norm() > 1e-12 ? q * (1.0 / q.norm()) : any_unit_orthogonal(a0);

  SearchResult out;
  out.settings = {a0, a1, b0, b1};
  out.value = chsh_value(rho, out.settings);
  return out;
}

double violation_boundary(double mean_alpha, double delta_alpha) {
  const double sd = std::sin(delta_alpha), sm = std::sin(mean_alpha);
  const double n = sd * sd + sm * sm;
  if (n <= 0.0) {
    throw computation_error("violation_boundary: herald norm N is zero");
  }
  const double c = std::abs(sm * sm - sd * sd) / n;
  return 0.5 * std::log1p(c * c);
}

double violation_boundary_bisect(const PureState& s, double tol) {
  const auto chsh_at = [&s](double t_over_tau) {
    return horodecki_max(decohere(s, DecoherenceParams(t_over_tau, 1.0))).max_value;
  };
  if (chsh_at(0.0) <= 2.0) return 0.0;
  double lo = 0.0, hi = 1.0;  // 2*sqrt2*exp(-1) < 2, so the root is below 1
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (chsh_at(mid) > 2.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Figure2Row> figure2_curves(const std::vector<double>& delta_alphas,
                                       const std::vector<double>& mean_alpha_grid) {
  if (delta_alphas.empty() || mean_alpha_grid.empty()) {
    throw validation_error("figure2_curves: grids must be non-empty");
  }
  std::vector<Figure2Row> rows;
  rows.reserve(delta_alphas.size() * mean_alpha_grid.size());
  for (const double d : delta_alphas) {
    for (const double m : mean_alpha_grid) {
      const double sd = std::sin(d), sm = std::sin(m);
      if (sd * sd + sm * sm <= 0.0) continue;  // the lone undefined point (0, 0)
      rows.push_back({d, m, violation_boundary(m, d)});
    }
  }
  return rows;
}

std::vector<double> default_delta_alphas() { return {0.0, kPi / 50.0, kPi / 20.0, kPi / 10.0}; }

std::vector<double> default_mean_alpha_grid(std::size_t n) {
  if (n < 2) throw validation_error("default_mean_alpha_grid: need at least 2 samples");
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = 0.5 * kPi * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return grid;
}

}  // namespace spinbell
