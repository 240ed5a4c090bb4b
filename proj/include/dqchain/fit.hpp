#pragma once

// The three-parameter model fit (scalar multiplier, Bessel frequency
// argument, additive baseline) against measured or synthesized collective
// signals, plus the transport-velocity report derived from a fitted coupling.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dqchain/bessel.hpp"

namespace dqchain {

struct SignalTrace {
  std::vector<double> times;   // s, strictly increasing
  std::vector<double> values;
  std::vector<double> sigma;   // optional per-point uncertainty; empty = unweighted
  std::string meta;

  void validate() const;
};

enum class FitModel { Thermal, EndPolarized };

struct FitResult {
  double scale = 1.0;
  double coupling_d = 0.0;  // rad/s
  double baseline = 0.0;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  double residual_norm = 0.0;
  FitModel model = FitModel::Thermal;
  bool converged = false;
  int iterations = 0;
};

// m = 0, boundary-free model signals (the N -> infinity limit of the
// collective-signal formulas): thermal J_0(4dt); end-polarized
// sum_p (-1)^{p-1} (J_{p-1}(2dt) + J_{p+1}(2dt))^2.
double model_signal(FitModel model, double d, double t);

// Damped (Levenberg-Marquardt) least squares with a numerically differenced
// Jacobian. lambda starts at 1e-3, x10 on rejection, /10 on acceptance;
// converged when the relative step drops below 1e-10 (200 iteration cap).
FitResult fit_signal(const SignalTrace& trace, FitModel model, double init_d = 8.17e3);

struct VelocityReport {
  double v_g = 0.0;             // m/s
  double window = 0.0;          // s
  double displacement = 0.0;    // m over the window
  double sites_per_window = 0;  // v_g * T / spacing
};

VelocityReport velocity_report(const FitResult& fit, double spacing, double window_seconds);
VelocityReport velocity_report(double coupling_d, double spacing, double window_seconds);

}  // namespace dqchain
