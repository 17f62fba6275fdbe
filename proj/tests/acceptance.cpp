// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus the measured
// numbers. Exit code is the number of failed criteria. --criterion N runs a
// single criterion.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "spinbell/bell.hpp"
#include "spinbell/cavity.hpp"
#include "spinbell/diqkd.hpp"
#include "spinbell/feasibility.hpp"
#include "spinbell/protocol.hpp"
#include "spinbell/qstate.hpp"

using namespace spinbell;

namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& label) {
    if (!condition) {
      ok = false;
      detail << " [failed: " << label << "]";
    }
  }
};

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool criterion_singlet_threshold(std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  const HeraldResult herald = evolve_and_herald(
      InteractionParams::from_mean_delta(0.3, 0.0, TransitionConvention::TwoTransition));
  const double boundary = violation_boundary_bisect(herald.state);
  const double expected = std::log(std::sqrt(2.0));
  c.expect(std::abs(boundary - expected) <= 1e-6, "boundary = ln sqrt2 within 1e-6");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "runtime < 1 s");
  out << "singlet threshold: bisected t/tau boundary " << boundary << " vs ln(sqrt 2) "
      << expected << ", runtime " << elapsed << " s" << c.detail.str();
  return c.ok;
}

bool criterion_fig2(std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  const auto deltas = default_delta_alphas();
  const auto grid = default_mean_alpha_grid();
  const auto rows = figure2_curves(deltas, grid);

  // Four contours with at least 200 samples each.
  for (const double d : deltas) {
    std::size_t count = 0;
    for (const auto& r : rows) count += r.delta_alpha == d;
    c.expect(count >= 200, "contour sample count >= 200");
  }
  // Ordering: larger delta sits below for mean angles beyond pi/10; every
  // curve collapses at mean = delta; the delta = 0 contour is flat.
  const auto value_at = [&rows](double d, double m) {
    for (const auto& r : rows) {
      if (r.delta_alpha == d && std::abs(r.mean_alpha - m) < 1e-12) return r.critical_t_over_tau;
    }
    return -1.0;
  };
  for (const double m : grid) {
    if (m <= kPi / 10.0) continue;
    const double c50 = value_at(kPi / 50.0, m);
    const double c20 = value_at(kPi / 20.0, m);
    const double c10 = value_at(kPi / 10.0, m);
    c.expect(c50 > c20 && c20 > c10, "curve ordering");
  }
  for (const double m : grid) {
    if (m == 0.0) continue;
    c.expect(std::abs(value_at(0.0, m) - std::log(std::sqrt(2.0))) < 1e-12,
             "delta = 0 contour constant");
  }
  for (const double d : {kPi / 50.0, kPi / 20.0, kPi / 10.0}) {
    c.expect(violation_boundary(d + 1e-6, d) < 1e-5, "contour -> 0 as mean -> delta+");
  }

  // Closed form against bisection at 50 sampled points.
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double delta = deltas[n % deltas.size()];
    const double mean = delta + 0.02 + (0.5 * kPi - delta - 0.02) * unif(rng);
    const HeraldResult herald = evolve_and_herald(
        InteractionParams::from_mean_delta(mean, delta, TransitionConvention::TwoTransition));
    const double diff =
        std::abs(violation_boundary(mean, delta) - violation_boundary_bisect(herald.state));
    worst = std::max(worst, diff);
  }
  c.expect(worst <= 1e-9, "closed form vs bisection within 1e-9");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 10.0, "runtime < 10 s");
  out << "fig2 contours: " << rows.size() << " rows, closed-vs-bisection worst " << worst
      << ", runtime " << elapsed << " s" << c.detail.str();
  return c.ok;
}

bool criterion_horodecki_oracle(std::ostream& out) {
  Check c;
  std::mt19937_64 rng(31337);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const DensityMatrix rho = oracle::random_density(rng);
    const double reference = oracle::brute_chsh_max(rho, 512);
    const double got = horodecki_max(rho).max_value;
    worst = std::max(worst, std::abs(got - reference));
  }
  c.expect(worst <= 1e-5, "criterion vs brute force within 1e-5");
  out << "horodecki oracle equivalence: worst deviation " << worst << " over 50 random states"
      << c.detail.str();
  return c.ok;
}

bool criterion_herald_budget(std::ostream& out) {
  Check c;
  const PlatformProfile lowq = load_profile("low-q");
  const InteractionParams interaction = InteractionParams::from_mean_delta(
      0.4 * kPi, kPi / 10.0, TransitionConvention::SingleTransition);

  const double eta_t = channel_transmission(300.0, 3.0);
  c.expect(std::abs(eta_t - 0.813) <= 0.005, "eta_t = 0.813 +/- 0.005");

  const double p = herald_probability(lowq, interaction, 300.0);
  c.expect(p >= 5e-4 && p <= 9e-4, "p_herald in [5e-4, 9e-4]");

  const FeasibilityReport r = plan(lowq, interaction, 300.0, 1e5);
  c.expect(r.herald_rate >= 500.0 && r.herald_rate <= 900.0, "herald rate in [500, 900]/s");
  const double minutes = r.acquisition_time / 60.0;
  c.expect(minutes >= 2.0 && minutes <= 4.0, "acquisition in [2, 4] minutes");

  out << "heralding budget: eta_t " << eta_t << ", p_herald " << p << ", rate "
      << r.herald_rate << "/s, acquisition " << minutes << " min" << c.detail.str();
  return c.ok;
}

bool criterion_appendix_point(std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  const PlatformProfile lowq = load_profile("low-q");
  const auto rows = kappa_ratio_sweep(lowq.cavity, {4.0});
  const KappaRatioRow& row = rows.at(0);
  c.expect(row.sin_rotation_max >= 0.99, "max |sin(rotation)| >= 0.99");
  c.expect(std::abs(row.r_hot_abs - 0.65) <= 0.05, "|r_hot| = 0.65 +/- 0.05");
  c.expect(std::abs(row.r_cold_abs - 0.65) <= 0.05, "|r_cold| = 0.65 +/- 0.05");
  c.expect(std::abs(row.r_hot_abs - row.r_cold_abs) <= 0.05, "reflectivities equal within 0.05");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "runtime < 5 s");
  out << "appendix operating point (kappa = 4 kappa_s): sin " << row.sin_rotation_max
      << ", |r_hot| " << row.r_hot_abs << ", |r_cold| " << row.r_cold_abs << ", runtime "
      << elapsed << " s" << c.detail.str();
  return c.ok;
}

bool criterion_qkd(std::ostream& out) {
  Check c;
  const double q = qber(0.1 * kPi, kPi / 50.0);
  c.expect(std::abs(q - 0.0395) <= 0.0005, "qber = 0.0395 +/- 0.0005");
  c.expect(key_rate({kTsirelson, 0.0, 0.0}) == 1.0, "key_rate(2 sqrt2, 0) = 1 exactly");
  for (double qq = 0.01; qq <= 0.5; qq += 0.01) {
    c.expect(key_rate({2.0, qq, 0.0}) <= 0.0, "key_rate(2, q) <= 0");
  }

  const PlatformProfile dots = load_profile("dots");
  const InteractionParams interaction = InteractionParams::from_mean_delta(
      0.1 * kPi, kPi / 50.0, TransitionConvention::TwoTransition);
  std::vector<double> km;
  for (double d = 0.0; d <= 150.0; d += 100.0 / 3.0) km.push_back(d);
  double rate_100km_a = 0.0, rate_100km_b = 0.0;
  for (const auto& [eta_c, eta_d] :
       std::vector<std::pair<double, double>>{{0.3, 0.5}, {0.5, 0.8}}) {
    PlatformProfile p = dots;
    p.eta_c = eta_c;
    p.eta_d = eta_d;
    const auto rows = figure3_sweep(p, interaction, km);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      c.expect(rows[i].absolute_rate < rows[i - 1].absolute_rate,
               "rate strictly decreasing in distance");
      const double ratio = rows[i - 1].absolute_rate / rows[i].absolute_rate;
      c.expect(std::abs(ratio - 10.0) <= 1e-6, "decade drop per 100/3 km");
    }
    const auto at100 = figure3_sweep(p, interaction, {100.0}).at(0);
    c.expect(at100.absolute_rate > 0.0, "positive rate at 100 km");
    (eta_c == 0.3 ? rate_100km_a : rate_100km_b) = at100.absolute_rate;
  }
  out << "qber and key rate: q " << q << ", rate at 100 km " << rate_100km_a << " and "
      << rate_100km_b << " bit/s for the two efficiency sets" << c.detail.str();
  return c.ok;
}

bool criterion_table1_planner(std::ostream& out) {
  Check c;
  const double atoms = min_separation(load_profile("atoms").delta_t);
  const double nv = min_separation(load_profile("nv").delta_t);
  const double dots = min_separation(load_profile("dots").delta_t);
  const double lowq = min_separation(load_profile("low-q").delta_t);
  c.expect(std::abs(atoms - 150.0) <= 1.0, "atoms min D = 150 m");
  c.expect(std::round(nv / 100.0) * 100.0 == 100.0, "nv min D = 100 m at quoted precision");
  c.expect(dots < 1.0, "dots min D < 1 m");
  c.expect(std::abs(lowq - 300.0) <= 1.0, "low-q min D = 300 m");
  out << "table planner min D: atoms " << atoms << ", nv " << nv << ", dots " << dots
      << ", low-q " << lowq << " m" << c.detail.str();
  return c.ok;
}

bool criterion_discrepancy_ledger(std::ostream& out) {
  Check c;
  struct Case {
    double mean, delta, reference;
  };
  const Case cases[] = {{0.4 * kPi, kPi / 10.0, 2.32}, {0.1 * kPi, kPi / 50.0, 2.45}};
  std::ostringstream table;
  for (const Case& cs : cases) {
    for (const auto conv :
         {TransitionConvention::TwoTransition, TransitionConvention::SingleTransition}) {
      const InteractionParams p = InteractionParams::from_mean_delta(cs.mean, cs.delta, conv);
      const HeraldResult herald = evolve_and_herald(p);
      const DensityMatrix rho = density_from_pure(herald.state);
      const EffectiveAngles eff = p.effective();
      const double n = eff.herald_norm();
      const double concurrence_eff =
          std::abs(std::pow(std::sin(eff.mean_alpha), 2) - std::pow(std::sin(eff.delta_alpha), 2)) / n;
      const double closed = 2.0 * std::sqrt(1.0 + concurrence_eff * concurrence_eff);
      const double searched = chsh_max_search(rho, 1024).value;
      c.expect(std::abs(closed - searched) <= 1e-5, "closed form vs search within 1e-5");
      table << "\n  mean " << cs.mean << " delta " << cs.delta << " ["
            << (conv == TransitionConvention::TwoTransition ? "two" : "single")
            << "]: computed " << closed << " (search " << searched << "), reference value "
            << cs.reference;
    }
  }
  out << "quoted-CHSH comparison (computed beside the published estimates; the "
         "mismatch is expected and documented):"
      << table.str() << (c.ok ? "" : c.detail.str());
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    }
  }

  const std::vector<std::function<bool(std::ostream&)>> criteria = {
      criterion_singlet_threshold, criterion_fig2,          criterion_horodecki_oracle,
      criterion_herald_budget,     criterion_appendix_point, criterion_qkd,
      criterion_table1_planner,    criterion_discrepancy_ledger};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int num = static_cast<int>(i) + 1;
    if (only != 0 && only != num) continue;
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = criteria[i](detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << num << " " << detail.str() << "\n";
    failures += ok ? 0 : 1;
  }
  return failures;
}
