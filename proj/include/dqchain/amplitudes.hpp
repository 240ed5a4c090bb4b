#pragma once

// Free-fermion transport amplitudes for the open NN chain under the DQ and
// XX Hamiltonians: the Bessel image sum
//
//   A_{j,q}(t) = sum_{m>=0} i^{2mNt} [ i^d J_{2mNt+d}(2dt) - i^S J_{2mNt+S}(2dt) ]
//              + sum_{m>=1} i^{2mNt} [ i^-d J_{2mNt-d}(2dt) - i^-S J_{2mNt-S}(2dt) ],
//
// with Nt = N+1, d = q-j, S = q+j, plus the derived observables. Amplitudes
// factor as A_{j,q} = i^{q-j} R_{j,q} with R real (the transport envelope);
// most observables are expressed through R.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dqchain/bessel.hpp"
#include "dqchain/chain.hpp"

namespace dqchain {

using Complex = std::complex<double>;

inline Complex ipow(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Smallest replica count m_cap such that every Bessel order 2(m_cap+1)(N+1) - (2N)
// beyond it exceeds the tail cutoff, i.e. neglected images are < 1e-15.
inline int auto_replica_cap(int n_sites, double x) {
  const int cut = bessel_tail_cutoff(x);
  const int period = 2 * (n_sites + 1);
  int m = 0;
  while (m * period - 2 * n_sites <= cut) ++m;
  return m;
}

inline int replica_cap_for(const ChainSpec& spec, double x) {
  return spec.replica_cap >= 0 ? spec.replica_cap : auto_replica_cap(spec.n_sites, x);
}

// Single image term of the sum above (m = 0 is the direct wave plus the
// near-boundary image; m >= 1 pairs the +m and -m copies).
inline Complex amplitude_replica_term(const ChainSpec& spec, int j, int q, double t, int m) {
  const int nt = spec.n_sites + 1;
  const double x = 2.0 * spec.coupling * t;
  const int del = q - j;
  const int sig = q + j;
  const int top = 2 * m * nt + std::max(std::abs(del), sig);
  const auto row = bessel_row<double>(top, x);
  const Complex ph = ipow(2L * m * nt);
  Complex val = ph * (ipow(del) * row.at_signed(2L * m * nt + del) -
                      ipow(sig) * row.at_signed(2L * m * nt + sig));
  if (m >= 1)
    val += ph * (ipow(-del) * row.at_signed(2L * m * nt - del) -
                 ipow(-sig) * row.at_signed(2L * m * nt - sig));
  return val;
}

namespace detail {

// Assemble A_{j,q} for all q from one shared Bessel row.
inline void envelope_row(const ChainSpec& spec, int j, double t, double* out) {
  const int n = spec.n_sites;
  const int nt = n + 1;
  const double x = 2.0 * spec.coupling * t;
  const int mcap = replica_cap_for(spec, x);
  const auto row = bessel_row<double>(2 * mcap * nt + 2 * n + 2, x);
  for (int q = 1; q <= n; ++q) {
    const int del = q - j;
    const int sig = q + j;
    Complex acc{0, 0};
    for (int m = 0; m <= mcap; ++m) {
      const Complex ph = ipow(2L * m * nt);
      acc += ph * (ipow(del) * row.at_signed(2L * m * nt + del) -
                   ipow(sig) * row.at_signed(2L * m * nt + sig));
      if (m >= 1)
        acc += ph * (ipow(-del) * row.at_signed(2L * m * nt - del) -
                     ipow(-sig) * row.at_signed(2L * m * nt - sig));
    }
    // strip the i^{q-j} phase; the residue is zero to rounding
    out[q - 1] = (ipow(-(long)del) * acc).real();
  }
}

}  // namespace detail

// Real envelope R_{j,q}(t) = (-i)^{q-j} A_{j,q}(t).
inline Eigen::VectorXd envelope_row(const ChainSpec& spec, int j, double t) {
  spec.validate();
  if (j < 1 || j > spec.n_sites) throw std::out_of_range("envelope_row: site out of range");
  Eigen::VectorXd r(spec.n_sites);
  detail::envelope_row(spec, j, t, r.data());
  return r;
}

// Full envelope matrix R(t); symmetric.
inline Eigen::MatrixXd envelope_matrix(const ChainSpec& spec, double t) {
  spec.validate();
  Eigen::MatrixXd r(spec.n_sites, spec.n_sites);
  std::vector<double> buf(static_cast<std::size_t>(spec.n_sites));
  for (int j = 1; j <= spec.n_sites; ++j) {
    detail::envelope_row(spec, j, t, buf.data());
    for (int q = 1; q <= spec.n_sites; ++q) r(j - 1, q - 1) = buf[static_cast<std::size_t>(q - 1)];
  }
  return r;
}

inline Complex amplitude(const ChainSpec& spec, int j, int q, double t) {
  spec.validate();
  if (j < 1 || j > spec.n_sites || q < 1 || q > spec.n_sites)
    throw std::out_of_range("amplitude: site out of range");
  const double x = 2.0 * spec.coupling * t;
  const int mcap = replica_cap_for(spec, x);
  Complex acc{0, 0};
  for (int m = 0; m <= mcap; ++m) acc += amplitude_replica_term(spec, j, q, t, m);
  return acc;
}

// ---------------------------------------------------------------------------
// thermodynamic-limit amplitude and transport probability
// ---------------------------------------------------------------------------

// Real part of the infinite-chain amplitude, n J_n(2dt)/(2dt), with the t=0
// value pinned to the delta initial condition by an explicit branch.
inline double infinite_envelope(int n, double t, double d) {
  if (n < 1) throw std::invalid_argument("infinite_envelope: n must be >= 1");
  const double x = 2.0 * d * t;
  if (x == 0.0) return n == 1 ? 1.0 : 0.0;
  return n * bessel_j<double>(n, x) / x;
}

// A^inf_{1,n}(t) = i^{n-1} n J_n(2dt)/(2dt).
inline Complex amplitude_infinite(int n, double t, double d) {
  return ipow(n - 1) * infinite_envelope(n, t, d);
}

// P^inf_{1,n}(t) = |A^inf_{1,n}(t)|^2.
inline double transport_probability(int n, double t, double d) {
  const double a = infinite_envelope(n, t, d);
  return a * a;
}

// ---------------------------------------------------------------------------
// observables
// ---------------------------------------------------------------------------

// Per-site <sigma_z> deviation. Single-site j starts at -1 on site j; under
// XX the packet keeps its sign, under DQ it alternates site to site.
inline Eigen::VectorXd magnetization_profile(const ChainSpec& spec, const InitialState& state,
                                             HamiltonianKind kind, double t) {
  spec.validate();
  state.validate(spec.n_sites);
  const int n = spec.n_sites;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
  auto add_single = [&](int j) {
    const Eigen::VectorXd r = envelope_row(spec, j, t);
    for (int q = 1; q <= n; ++q) {
      const double p = r(q - 1) * r(q - 1);
      m(q - 1) += (kind == HamiltonianKind::XX) ? -p : -((q - j) % 2 == 0 ? p : -p);
    }
  };
  switch (state.kind) {
    case InitialState::Kind::SingleSite:
      add_single(state.site);
      break;
    case InitialState::Kind::EndPolarized:
      add_single(1);
      add_single(n);
      break;
    case InitialState::Kind::Thermal:
      if (kind == HamiltonianKind::XX) {
        m.setConstant(-1.0);  // constant of the motion
      } else {
        const Eigen::MatrixXd r2 = envelope_matrix(spec, 2.0 * t);
        for (int q = 1; q <= n; ++q) m(q - 1) = -r2(q - 1, q - 1);
      }
      break;
  }
  return m;
}

// Collective magnetization, normalized so S(0) = 1 per initially polarized
// site (single-site) and S(0) = N (thermal). Equals sum_p A_{j,p}^2(t) for a
// single source under DQ and Tr A(2t) for the thermal state.
inline double collective_signal(const ChainSpec& spec, const InitialState& state, double t,
                                HamiltonianKind kind = HamiltonianKind::DQ) {
  const Eigen::VectorXd m = magnetization_profile(spec, state, kind, t);
  double s = 0;
  for (int q = 0; q < spec.n_sites; ++q) s -= m(q);
  return s;
}

// True when the end-polarized two-independent-chains picture still holds
// (the two end waves have not met).
inline bool end_overlap_valid(const ChainSpec& spec, double t) {
  return t <= 0.8 * spec.n_sites / (2.0 * spec.coupling);
}

// Summed NN two-spin correlation sum_i <sx_i sy_{i+1} + sy_i sx_{i+1}>, in the
// same deviation normalization as magnetization_profile. Identically zero
// under XX (no double-quantum coherences form).
inline double two_spin_signal(const ChainSpec& spec, const InitialState& state, double t,
                              HamiltonianKind kind = HamiltonianKind::DQ) {
  spec.validate();
  state.validate(spec.n_sites);
  if (kind == HamiltonianKind::XX) return 0.0;
  const int n = spec.n_sites;
  auto single = [&](int j) {
    const Eigen::VectorXd r = envelope_row(spec, j, t);
    double acc = 0;
    for (int i = 1; i < n; ++i) {
      const double sign = ((j - 1) + i) % 2 == 0 ? -1.0 : 1.0;  // -(-1)^{j-1}(-1)^i
      acc += sign * 2.0 * r(i) * r(i - 1);
    }
    return acc;
  };
  switch (state.kind) {
    case InitialState::Kind::SingleSite:
      return single(state.site);
    case InitialState::Kind::EndPolarized:
      return single(1) + single(n);
    case InitialState::Kind::Thermal: {
      const Eigen::MatrixXd r2 = envelope_matrix(spec, 2.0 * t);
      double acc = 0;
      for (int i = 1; i < n; ++i) acc += -2.0 * r2(i, i - 1);
      return acc;
    }
  }
  return 0.0;
}

// v_g = 2 a d.
inline double group_velocity(const ChainSpec& spec) {
  spec.validate();
  return 2.0 * spec.spacing * spec.coupling;
}

// omega(k) = 2 d |cos(k a)|.
inline double dispersion(double k, const ChainSpec& spec) {
  spec.validate();
  return 2.0 * spec.coupling * std::abs(std::cos(k * spec.spacing));
}

// Multi-spin correlation amplitudes of Fig.-3 type: order 1 gives the on-site
// polarization R^2, order m>=2 the h^(m)-string amplitude R_{j,n} R_{j,n+m-1}.
inline std::vector<std::pair<int, double>> correlation_amplitudes(const ChainSpec& spec, int j,
                                                                  double t, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("correlation_amplitudes: order in 1..4");
  spec.validate();
  const Eigen::VectorXd r = envelope_row(spec, j, t);
  std::vector<std::pair<int, double>> out;
  const int gap = order - 1;
  for (int n = 1; n + gap <= spec.n_sites; ++n)
    out.emplace_back(n, order == 1 ? r(n - 1) * r(n - 1) : r(n - 1) * r(n + gap - 1));
  return out;
}

}  // namespace dqchain
