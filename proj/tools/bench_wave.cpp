#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "geored/integrate.hpp"

using namespace geo;

namespace {

double run_ms(const WaveParams& wp, bool parallel, WaveRun& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = integrate_wave(
      wp, [](double x) { return std::sin(x); }, [](double) { return 0.0; }, parallel);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double max_diff(const WaveRun& a, const WaveRun& b) {
  double m = 0;
  const WaveFrame& fa = a.frames.back();
  const WaveFrame& fb = b.frames.back();
  for (size_t j = 0; j < fa.u.size(); ++j) {
    m = std::max(m, std::fabs(fa.u[j] - fb.u[j]));
    m = std::max(m, std::fabs(fa.pt[j] - fb.pt[j]));
    m = std::max(m, std::fabs(fa.st[j] - fb.st[j]));
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes;
  for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  if (sizes.empty()) sizes = {512, 2048, 8192};

  std::printf("%8s %8s %12s %12s %8s %12s\n", "nodes", "steps", "serial ms",
              "parallel ms", "speedup", "max |diff|");
  for (int n : sizes) {
    WaveParams wp;
    wp.kappa = 0.1;
    wp.nodes = n;
    double dx = wp.length / n;
    wp.dt = 0.5 * dx;  // c = 1, half the stability bound
    wp.t_end = 2048 * wp.dt;
    wp.store_every = 1 << 30;  // first and last frame only

    WaveRun serial, parallel;
    double ts = run_ms(wp, false, serial);
    double tp = run_ms(wp, true, parallel);
    std::printf("%8d %8d %12.2f %12.2f %8.2f %12.3e\n", n, serial.steps, ts, tp,
                ts / tp, max_diff(serial, parallel));
  }
  return 0;
}
