#pragma once

// Mirror-time interference, replica decomposition of the image sum, the
// n^(-2/3) transport scaling fit, and zero-quantum pair-intensity curves.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dqchain/amplitudes.hpp"

namespace dqchain {

struct ReplicaDecomposition {
  int j = 1, q = 1;
  double time = 0;
  std::vector<std::pair<int, Complex>> terms;  // (replica index m, contribution)

  Complex sum() const {
    Complex s{0, 0};
    for (const auto& [m, v] : terms) s += v;
    return s;
  }
};

struct MirrorReport {
  double mirror_time_estimate = 0;  // s
  double enhancement_factor = 1;
  int site = 0;
};

inline ReplicaDecomposition replica_decomposition(const ChainSpec& spec, int j, int q, double t) {
  spec.validate();
  if (j < 1 || j > spec.n_sites || q < 1 || q > spec.n_sites)
    throw std::out_of_range("replica_decomposition: site out of range");
  ReplicaDecomposition out;
  out.j = j;
  out.q = q;
  out.time = t;
  const double x = 2.0 * spec.coupling * t;
  const int mcap = replica_cap_for(spec, x);
  for (int m = 0; m <= mcap; ++m)
    out.terms.emplace_back(m, amplitude_replica_term(spec, j, q, t, m));
  return out;
}

namespace analysis_detail {

// parabolic refinement of a discrete maximum
inline std::pair<double, double> refine_peak(const std::vector<double>& ts,
                                             const std::vector<double>& ys, std::size_t i) {
  if (i == 0 || i + 1 >= ys.size()) return {ts[i], ys[i]};
  const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
  const double denom = y0 - 2 * y1 + y2;
  if (std::abs(denom) < 1e-300) return {ts[i], ys[i]};
  const double delta = 0.5 * (y0 - y2) / denom;
  const double h = ts[i + 1] - ts[i];
  return {ts[i] + delta * h, y1 - 0.25 * (y0 - y2) * delta};
}

}  // namespace analysis_detail

// Locate the transferred-magnetization maximum near the mirror time and
// report how much the boundary replicas enhance it over the m = 0 image
// alone, both evaluated at the located peak.
inline MirrorReport mirror_scan(const ChainSpec& spec, int j, int target,
                                const std::vector<double>& t_grid) {
  spec.validate();
  if (t_grid.empty()) throw std::invalid_argument("mirror_scan: empty time grid");
  std::vector<double> full(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    full[i] = std::norm(amplitude(spec, j, target, t_grid[i]));
  std::size_t imax = 0;
  for (std::size_t i = 1; i < full.size(); ++i)
    if (full[i] > full[imax]) imax = i;
  const auto [t_peak, p_peak] = analysis_detail::refine_peak(t_grid, full, imax);

  const double p_full = std::norm(amplitude(spec, j, target, t_peak));
  const double p_m0 = std::norm(amplitude_replica_term(spec, j, target, t_peak, 0));

  MirrorReport rep;
  rep.mirror_time_estimate = t_peak;
  rep.site = target;
  rep.enhancement_factor = p_m0 > 0 ? p_full / p_m0 : 1.0;
  (void)p_peak;
  return rep;
}

// Least-squares slope of log P^inf_{1,n}(t = n/2d) against log n.
inline double scaling_exponent(int n_min, int n_max, double d) {
  if (n_min < 10 || n_max <= n_min) throw std::invalid_argument("scaling_exponent: need 10 <= n_min < n_max");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = n_min; n <= n_max; ++n) {
    const double t = n / (2.0 * d);
    const double p = transport_probability(n, t, d);
    if (p <= 0) continue;
    const double lx = std::log(double(n)), ly = std::log(p);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("scaling_exponent: degenerate range");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

// Zero-quantum pair intensity J0_{j,l}(t) + J0_{N+1-j,l}(t), with
// J0_{j,l} = |A_{j,l} A_{j,N+1-l}|^2 the squared coefficient of the bilinear
// pairing site l with its mirror site in the source-j wave. Symmetric in
// j <-> N+1-j by construction.
inline std::vector<double> zq_pair_intensity(const ChainSpec& spec, int j, int l,
                                             const std::vector<double>& t_grid) {
  spec.validate();
  const int n = spec.n_sites;
  if (j < 1 || j > n || l < 1 || l > n)
    throw std::out_of_range("zq_pair_intensity: site out of range");
  const int jm = n + 1 - j;
  const int lm = n + 1 - l;
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const Eigen::VectorXd rj = envelope_row(spec, j, t);
    const Eigen::VectorXd rm = envelope_row(spec, jm, t);
    const double a = rj(l - 1) * rj(lm - 1);
    const double b = rm(l - 1) * rm(lm - 1);
    out.push_back(a * a + b * b);
  }
  return out;
}

}  // namespace dqchain
