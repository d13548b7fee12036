#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geo {

// RK4 refuses steps beyond the linear stability bound dx/c.
struct CflError : std::runtime_error {
  double suggested;
  CflError(const std::string& msg, double dt) : std::runtime_error(msg), suggested(dt) {}
};

struct WaveParams {
  double rho = 1, tau = 1, kappa = 0;
  int nodes = 256;
  double length = 6.283185307179586476925286766559;  // one period of the base mode
  double t_end = 1;
  double dt = 1e-3;
  int store_every = 1;  // frame stride; first and last frames are always kept
};

struct WaveFrame {
  double t = 0;
  std::vector<double> u, pt, st;
};

struct WaveRun {
  WaveParams params;
  double dx = 0;
  int steps = 0;
  bool parallel = false;
  std::vector<WaveFrame> frames;
  std::vector<double> energy;  // per time step, semi-discrete field energy
};

using Profile = std::function<double(double)>;

WaveRun integrate_wave(const WaveParams& wp, const Profile& u0, const Profile& pt0,
                       bool parallel);

// Centered-difference residuals of the four field equations on the stored
// frames: velocity, momentum-strain, momentum balance, action balance.
std::array<double, 4> wave_residuals(const WaveRun& run);

bool energy_dissipates(const WaveRun& run, double tol_frac = 1e-6);

// Separated solution exp(-kappa t/2)(cos wt + kappa/(2w) sin wt) sin(m x).
double damped_mode(double t, double x, double c, double kappa, int m);
double wave_error_vs_mode(const WaveRun& run, int m);

}  // namespace geo
