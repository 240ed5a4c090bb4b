#pragma once

// The restricted N(N+1)/2-dimensional Liouville space: deviation density
// operators expanded over fermion bilinears,
//
//   rho = sum_q  g_q (2 n_q - 1)
//       + sum_{q<p} [ w_pq c_p^+ c_q   + conj(w_pq) c_q^+ c_p ]      (hopping)
//       + sum_{q<p} [ v_pq c_p^+ c_q^+ + conj(v_pq) c_q c_p ],       (pairing)
//
// with the closed-form coefficients of the DQ / XX evolutions. DQ evolution
// populates hopping entries on even gaps and pairing on odd gaps only; XX
// stays within the hopping class.

#include <complex>
#include <map>

#include "dqchain/amplitudes.hpp"
#include "dqchain/chain.hpp"
#include "dqchain/pauli.hpp"

namespace dqchain {

struct OperatorCoefficients {
  ChainSpec spec;
  InitialState source;
  HamiltonianKind kind = HamiltonianKind::DQ;
  double time = 0.0;
  std::map<BilinearIndex, Complex> entries;

  Complex at(int p, int q) const {
    auto it = entries.find(make_index(p, q));
    return it == entries.end() ? Complex{0, 0} : it->second;
  }

  // Hilbert-Schmidt norm^2 with normalized trace, Tr(rho^2)/2^N.
  double total_norm2() const {
    double s = 0;
    for (const auto& [idx, w] : entries) {
      if (idx.cls == BilinearClass::Diagonal)
        s += std::norm(w);            // ||2n-1||^2 = 1
      else
        s += std::norm(w) / 2.0;      // two strings of norm^2 1/4 each
    }
    return s;
  }
};

namespace detail {

inline void add_single_site_dq(OperatorCoefficients& out, const ChainSpec& spec, int j, double t) {
  const int n = spec.n_sites;
  const Eigen::VectorXd r = envelope_row(spec, j, t);
  for (int q = 1; q <= n; ++q) {
    const double rq = r(q - 1);
    out.entries[make_index(q, q)] += ((q - j) % 2 == 0 ? 1.0 : -1.0) * rq * rq;
    for (int p = q + 1; p <= n; ++p) {
      const double base =
          2.0 * ((j - 1) % 2 == 0 ? 1.0 : -1.0) * ((p + 1) % 2 == 0 ? 1.0 : -1.0) * r(p - 1) * rq;
      if ((p - q) % 2 == 0)
        out.entries[make_index(p, q)] += base;
      else
        out.entries[make_index(p, q)] += Complex(0, -1) * base;
    }
  }
}

inline void add_single_site_xx(OperatorCoefficients& out, const ChainSpec& spec, int j, double t) {
  const int n = spec.n_sites;
  const Eigen::VectorXd r = envelope_row(spec, j, t);
  for (int q = 1; q <= n; ++q) {
    const Complex aq = ipow(q - j) * r(q - 1);
    out.entries[{q, q, BilinearClass::Diagonal}] += std::norm(aq);
    for (int p = q + 1; p <= n; ++p) {
      const Complex ap = ipow(p - j) * r(p - 1);
      out.entries[{p, q, BilinearClass::Hopping}] += 2.0 * ap * std::conj(aq);
    }
  }
}

}  // namespace detail

inline OperatorCoefficients evolve_coefficients(const ChainSpec& spec, const InitialState& state,
                                                HamiltonianKind kind, double t) {
  spec.validate();
  state.validate(spec.n_sites);
  OperatorCoefficients out;
  out.spec = spec;
  out.source = state;
  out.kind = kind;
  out.time = t;
  const int n = spec.n_sites;

  if (kind == HamiltonianKind::DQ) {
    switch (state.kind) {
      case InitialState::Kind::SingleSite:
        detail::add_single_site_dq(out, spec, state.site, t);
        break;
      case InitialState::Kind::EndPolarized:
        detail::add_single_site_dq(out, spec, 1, t);
        detail::add_single_site_dq(out, spec, n, t);
        break;
      case InitialState::Kind::Thermal: {
        const Eigen::MatrixXd r2 = envelope_matrix(spec, 2.0 * t);
        for (int q = 1; q <= n; ++q) {
          out.entries[make_index(q, q)] = r2(q - 1, q - 1);
          for (int p = q + 1; p <= n; ++p) {
            if ((p - q) % 2 == 0)
              out.entries[make_index(p, q)] = 2.0 * r2(p - 1, q - 1);
            else
              out.entries[make_index(p, q)] = Complex(0, -2.0) * r2(p - 1, q - 1);
          }
        }
        break;
      }
    }
  } else {
    switch (state.kind) {
      case InitialState::Kind::SingleSite:
        detail::add_single_site_xx(out, spec, state.site, t);
        break;
      case InitialState::Kind::EndPolarized:
        detail::add_single_site_xx(out, spec, 1, t);
        detail::add_single_site_xx(out, spec, n, t);
        break;
      case InitialState::Kind::Thermal:
        // sum_j sigma_z^j is conserved: the t = 0 diagonal, unchanged
        for (int q = 1; q <= n; ++q) out.entries[{q, q, BilinearClass::Diagonal}] = 1.0;
        break;
    }
  }

  // drop numerically empty entries so the count invariant is meaningful
  for (auto it = out.entries.begin(); it != out.entries.end();) {
    if (std::abs(it->second) < 1e-300)
      it = out.entries.erase(it);
    else
      ++it;
  }
  return out;
}

}  // namespace dqchain
