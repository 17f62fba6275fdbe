// Microbenchmark for the sweep kernels: scalar reference vs the AVX2 variant.
// Not part of the test suite; build/spinbell_bench [points] [directions].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "spinbell/kernels.hpp"

namespace k = spinbell::kernels;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_seconds();
    body();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n_points = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000000;
  const std::size_t n_dirs = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 4096;

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const double mhz = spinbell::kTwoPi * 1e6;
  const k::ReflectionSweepParams sp{3300 * mhz * 3300 * mhz, 528000 * mhz, 3 * mhz,
                                    330000 * mhz, 2.69e15, 2.69e15};
  std::vector<double> omega(n_points);
  for (double& w : omega) w = sp.omega_c + unif(rng) * 5.0 * 2.0 * sp.half_kappa_t;
  std::vector<double> rh_re(n_points), rh_im(n_points), rc_re(n_points), rc_im(n_points),
      sin_rot(n_points);

  std::vector<double> mx(n_dirs), my(n_dirs), mz(n_dirs);
  for (std::size_t i = 0; i < n_dirs; ++i) {
    mx[i] = unif(rng);
    my[i] = unif(rng);
    mz[i] = unif(rng);
  }

  std::printf("kernel            variant   n            best time      throughput\n");
  const auto report_sweep = [&](k::Isa isa) {
    const double t = best_of(5, [&] {
      k::reflection_sweep(sp, omega, rh_re, rh_im, rc_re, rc_im, sin_rot, isa);
    });
    std::printf("reflection_sweep  %-8s  %-11zu  %10.3f ms  %8.1f Mpts/s\n",
                k::isa_name(isa).c_str(), n_points, 1e3 * t, 1e-6 * n_points / t);
  };
  const auto report_pairs = [&](k::Isa isa) {
    volatile double sink = 0.0;
    const double t = best_of(5, [&] { sink = k::max_chsh_pair(mx, my, mz, isa).value; });
    (void)sink;
    const double pairs = 0.5 * static_cast<double>(n_dirs) * static_cast<double>(n_dirs + 1);
    std::printf("max_chsh_pair     %-8s  %-11zu  %10.3f ms  %8.1f Mpairs/s\n",
                k::isa_name(isa).c_str(), n_dirs, 1e3 * t, 1e-6 * pairs / t);
  };

  report_sweep(k::Isa::Scalar);
  if (k::avx2_available()) report_sweep(k::Isa::Avx2);
  report_pairs(k::Isa::Scalar);
  if (k::avx2_available()) report_pairs(k::Isa::Avx2);
  if (!k::avx2_available()) std::printf("(AVX2 not available on this CPU)\n");
  return 0;
}
