#include "dqchain/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace dqchain {

void SignalTrace::validate() const {
  if (times.size() != values.size())
    throw std::invalid_argument("SignalTrace: times/values length mismatch");
  if (!sigma.empty() && sigma.size() != times.size())
    throw std::invalid_argument("SignalTrace: sigma length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("SignalTrace: times must be strictly increasing");
  for (double s : sigma)
    if (!(s > 0)) throw std::invalid_argument("SignalTrace: sigma must be positive");
}

double model_signal(FitModel model, double d, double t) {
  const double x = 2.0 * std::abs(d) * t;
  if (model == FitModel::Thermal) return bessel_j<double>(0, 2.0 * x);
  const int top = bessel_tail_cutoff(x) + 2;
  const auto row = bessel_row<double>(top, x);
  double s = 0.0;
  for (int p = 1; p <= top - 1; ++p) {
    const double a = row.at_signed(p - 1) + row.at_signed(p + 1);
    s += (p % 2 == 1 ? 1.0 : -1.0) * a * a;
  }
  return s;
}

FitResult fit_signal(const SignalTrace& trace, FitModel model, double init_d) {
  trace.validate();
  const std::size_t m = trace.times.size();
  if (m < 10) throw std::invalid_argument("fit_signal: need at least 10 samples");
  if (!(init_d > 0)) throw std::invalid_argument("fit_signal: init_d must be > 0");

  Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
  if (!trace.sigma.empty())
    for (std::size_t i = 0; i < m; ++i) w(static_cast<Eigen::Index>(i)) = 1.0 / trace.sigma[i];

  auto residuals = [&](const Eigen::Vector3d& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      const double f = p(0) * model_signal(model, p(1), trace.times[i]) + p(2);
      r(static_cast<Eigen::Index>(i)) = (trace.values[i] - f) * w(static_cast<Eigen::Index>(i));
    }
    return r;
  };

  // start from a linear solve of (scale, baseline) at the initial coupling
  Eigen::Vector3d p;
  {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      a(static_cast<Eigen::Index>(i), 0) = model_signal(model, init_d, trace.times[i]);
      a(static_cast<Eigen::Index>(i), 1) = 1.0;
      y(static_cast<Eigen::Index>(i)) = trace.values[i];
    }
    const Eigen::Vector2d sb = a.colPivHouseholderQr().solve(y);
    p << sb(0), init_d, sb(1);
    if (std::abs(p(0)) < 1e-12) p(0) = 1.0;
  }

  double lambda = 1e-3;
  Eigen::VectorXd r = residuals(p);
  double chi2 = r.squaredNorm();
  bool converged = false;
  int iter = 0;
  Eigen::Matrix3d jtj = Eigen::Matrix3d::Identity();

  for (; iter < 200; ++iter) {
    // forward-differenced Jacobian of the residual vector
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), 3);
    for (int k = 0; k < 3; ++k) {
      const double h = std::max(1e-10, 1e-7 * std::abs(p(k)));
      Eigen::Vector3d ph = p;
      ph(k) += h;
      jac.col(k) = (residuals(ph) - r) / h;
    }
    jtj = jac.transpose() * jac;
    const Eigen::Vector3d g = jac.transpose() * r;

    bool accepted = false;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += lambda * jtj.diagonal();
      const Eigen::Vector3d step = a.ldlt().solve(-g);
      Eigen::Vector3d pn = p + step;
      pn(1) = std::abs(pn(1));  // models are even in d
      const Eigen::VectorXd rn = residuals(pn);
      const double chin = rn.squaredNorm();
      if (chin <= chi2) {
        const double rel = step.norm() / std::max(1e-300, p.norm());
        p = pn;
        r = rn;
        chi2 = chin;
        lambda = std::max(lambda / 10.0, 1e-14);
        accepted = true;
        if (rel < 1e-10) converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e14) break;
      }
    }
    if (!accepted || converged) {
      if (!accepted && chi2 < 1e-24) converged = true;  // stalled at the machine floor
      break;
    }
  }

  FitResult out;
  out.scale = p(0);
  out.coupling_d = std::abs(p(1));
  out.baseline = p(2);
  out.model = model;
  out.residual_norm = std::sqrt(chi2);
  out.converged = converged || chi2 < 1e-20;
  out.iterations = iter;

  Eigen::Matrix3d cov = jtj.inverse();
  if (trace.sigma.empty() && m > 3) cov *= chi2 / double(m - 3);
  out.covariance = 0.5 * (cov + cov.transpose());
  return out;
}

VelocityReport velocity_report(double coupling_d, double spacing, double window_seconds) {
  if (!(coupling_d > 0) || !(spacing > 0))
    throw std::invalid_argument("velocity_report: coupling and spacing must be > 0");
  VelocityReport rep;
  rep.v_g = 2.0 * spacing * coupling_d;
  rep.window = window_seconds;
  rep.displacement = rep.v_g * window_seconds;
  rep.sites_per_window = rep.displacement / spacing;
  return rep;
}

VelocityReport velocity_report(const FitResult& fit, double spacing, double window_seconds) {
  return velocity_report(fit.coupling_d, spacing, window_seconds);
}

}  // namespace dqchain
