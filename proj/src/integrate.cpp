#include "geored/integrate.hpp"

#include <cmath>
#include <sstream>

namespace geo {

namespace {

struct State {
  std::vector<double> u, pt, st;
};

// Semi-discrete right-hand side: compact Laplacian for the momentum balance,
// centered first difference for the strain momentum entering the action rate.
void rhs(const WaveParams& wp, double dx, const State& s, State& out, bool parallel) {
  int n = wp.nodes;
  double inv_dx2 = 1.0 / (dx * dx), inv_2dx = 1.0 / (2 * dx);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (int j = 0; j < n; ++j) {
    int jl = j == 0 ? n - 1 : j - 1;
    int jr = j == n - 1 ? 0 : j + 1;
    double lap = (s.u[jr] - 2 * s.u[j] + s.u[jl]) * inv_dx2;
    double px = -wp.tau * (s.u[jr] - s.u[jl]) * inv_2dx;
    out.u[j] = s.pt[j] / wp.rho;
    out.pt[j] = wp.tau * lap - wp.kappa * s.pt[j];
    out.st[j] = s.pt[j] * s.pt[j] / (2 * wp.rho) - px * px / (2 * wp.tau) -
                wp.kappa * s.st[j];
  }
}

void axpy(const State& s, const State& k, double f, State& out, int n, bool parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (int j = 0; j < n; ++j) {
    out.u[j] = s.u[j] + f * k.u[j];
    out.pt[j] = s.pt[j] + f * k.pt[j];
    out.st[j] = s.st[j] + f * k.st[j];
  }
}

double field_energy(const WaveParams& wp, double dx, const State& s) {
  double e = 0;
  int n = wp.nodes;
  for (int j = 0; j < n; ++j) {
    int jr = j == n - 1 ? 0 : j + 1;
    double du = (s.u[jr] - s.u[j]) / dx;
    e += (s.pt[j] * s.pt[j] / (2 * wp.rho) + wp.tau / 2 * du * du) * dx;
  }
  return e;
}

WaveFrame snapshot(double t, const State& s) {
  return WaveFrame{t, s.u, s.pt, s.st};
}

}  // namespace

WaveRun integrate_wave(const WaveParams& wp, const Profile& u0, const Profile& pt0,
                       bool parallel) {
  if (wp.nodes < 3) throw std::invalid_argument("integrate_wave: need at least 3 nodes");
  if (wp.dt <= 0 || wp.t_end <= 0)
    throw std::invalid_argument("integrate_wave: step and horizon must be positive");
  double dx = wp.length / wp.nodes;
  double c = std::sqrt(wp.tau / wp.rho);
  double bound = dx / c;
  if (wp.dt > bound) {
    std::ostringstream os;
    os << "time step " << wp.dt << " exceeds the stability bound dx/c = " << bound
       << "; rerun with dt <= " << bound;
    throw CflError(os.str(), bound);
  }

  WaveRun run;
  run.params = wp;
  run.dx = dx;
  run.parallel = parallel;
  run.steps = (int)std::lround(wp.t_end / wp.dt);

  int n = wp.nodes;
  State s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n, 0.0)};
  for (int j = 0; j < n; ++j) {
    double x = j * dx;
    s.u[j] = u0(x);
    s.pt[j] = pt0(x);
  }
  State k1 = s, k2 = s, k3 = s, k4 = s, tmp = s;

  run.frames.push_back(snapshot(0, s));
  run.energy.push_back(field_energy(wp, dx, s));
  int stride = wp.store_every < 1 ? 1 : wp.store_every;

  for (int step = 1; step <= run.steps; ++step) {
    double dt = wp.dt;
    rhs(wp, dx, s, k1, parallel);
    axpy(s, k1, dt / 2, tmp, n, parallel);
    rhs(wp, dx, tmp, k2, parallel);
    axpy(s, k2, dt / 2, tmp, n, parallel);
    rhs(wp, dx, tmp, k3, parallel);
    axpy(s, k3, dt, tmp, n, parallel);
    rhs(wp, dx, tmp, k4, parallel);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int j = 0; j < n; ++j) {
      s.u[j] += dt / 6 * (k1.u[j] + 2 * k2.u[j] + 2 * k3.u[j] + k4.u[j]);
      s.pt[j] += dt / 6 * (k1.pt[j] + 2 * k2.pt[j] + 2 * k3.pt[j] + k4.pt[j]);
      s.st[j] += dt / 6 * (k1.st[j] + 2 * k2.st[j] + 2 * k3.st[j] + k4.st[j]);
    }
    run.energy.push_back(field_energy(wp, dx, s));
    if (step % stride == 0 || step == run.steps)
      run.frames.push_back(snapshot(step * wp.dt, s));
  }
  return run;
}

std::array<double, 4> wave_residuals(const WaveRun& run) {
  std::array<double, 4> r{0, 0, 0, 0};
  const WaveParams& wp = run.params;
  int n = wp.nodes;
  int nf = (int)run.frames.size();
  if (nf < 3) return r;
  double inv_2dx = 1.0 / (2 * run.dx);

  auto px_at = [&](const WaveFrame& f, int j) {
    int jl = j == 0 ? n - 1 : j - 1;
    int jr = j == n - 1 ? 0 : j + 1;
    return -wp.tau * (f.u[jr] - f.u[jl]) * inv_2dx;
  };

  for (int m = 1; m + 1 < nf; ++m) {
    const WaveFrame &prev = run.frames[m - 1], &cur = run.frames[m], &next = run.frames[m + 1];
    double dt2 = next.t - prev.t;
    for (int j = 0; j < n; ++j) {
      int jl = j == 0 ? n - 1 : j - 1;
      int jr = j == n - 1 ? 0 : j + 1;
      double px = px_at(cur, j);

      double r1 = (next.u[j] - prev.u[j]) / dt2 - cur.pt[j] / wp.rho;
      double r2 = (cur.u[jr] - cur.u[jl]) * inv_2dx + px / wp.tau;
      double r3 = (next.pt[j] - prev.pt[j]) / dt2 +
                  (px_at(cur, jr) - px_at(cur, jl)) * inv_2dx + wp.kappa * cur.pt[j];
      double r4 = (next.st[j] - prev.st[j]) / dt2 -
                  (cur.pt[j] * cur.pt[j] / (2 * wp.rho) - px * px / (2 * wp.tau) -
                   wp.kappa * cur.st[j]);
      r[0] = std::max(r[0], std::abs(r1));
      r[1] = std::max(r[1], std::abs(r2));
      r[2] = std::max(r[2], std::abs(r3));
      r[3] = std::max(r[3], std::abs(r4));
    }
  }
  return r;
}

bool energy_dissipates(const WaveRun& run, double tol_frac) {
  if (run.energy.empty()) return true;
  double slack = tol_frac * run.energy.front();
  for (size_t i = 1; i < run.energy.size(); ++i)
    if (run.energy[i] > run.energy[i - 1] + slack) return false;
  return true;
}

double damped_mode(double t, double x, double c, double kappa, int m) {
  double w2 = c * c * m * m - kappa * kappa / 4;
  if (w2 <= 0) throw std::invalid_argument("damped_mode: overdamped parameters");
  double w = std::sqrt(w2);
  double amp = std::exp(-kappa * t / 2) * (std::cos(w * t) + kappa / (2 * w) * std::sin(w * t));
  return amp * std::sin(m * x);
}

double wave_error_vs_mode(const WaveRun& run, int m) {
  const WaveFrame& last = run.frames.back();
  double c = std::sqrt(run.params.tau / run.params.rho);
  double err = 0;
  for (int j = 0; j < run.params.nodes; ++j) {
    double x = j * run.dx;
    err = std::max(err, std::abs(last.u[j] - damped_mode(last.t, x, c, run.params.kappa, m)));
  }
  return err;
}

}  // namespace geo
