#include "dqchain/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace dqchain::oracle {

namespace {

constexpr Complex kI{0, 1};

// site s in 1..N; site 1 is the most significant bit, bit 0 = spin up
inline int bit_of(int basis, int site, int n) { return (basis >> (n - site)) & 1; }
inline double zval(int basis, int site, int n) { return bit_of(basis, site, n) ? -1.0 : 1.0; }
inline int flip(int basis, int site, int n) { return basis ^ (1 << (n - site)); }

}  // namespace

MatrixXcd build_dq_long_range(int n_sites, double coupling, int cutoff, double power) {
  const int dim = 1 << n_sites;
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  for (int i = 1; i <= n_sites; ++i) {
    for (int j = i + 1; j <= n_sites && j - i <= cutoff; ++j) {
      const double c = coupling / std::pow(double(j - i), power);
      // (c/2)(sx sx - sy sy) = c (s+ s+ + s- s-): couples 00 <-> 11 on (i, j)
      for (int b = 0; b < dim; ++b) {
        if (bit_of(b, i, n_sites) == 1 && bit_of(b, j, n_sites) == 1) {
          const int b2 = flip(flip(b, i, n_sites), j, n_sites);
          h(b2, b) += c;
          h(b, b2) += c;
        }
      }
    }
  }
  return h;
}

MatrixXcd build_hamiltonian(const HamiltonianSpec& spec) {
  if (spec.n_sites < 2) throw std::invalid_argument("build_hamiltonian: n_sites must be >= 2");
  if (spec.n_sites > spec.site_cap)
    throw std::invalid_argument("build_hamiltonian: n_sites exceeds the dense-oracle cap");
  if (spec.coupling == 0) throw std::invalid_argument("build_hamiltonian: coupling must be nonzero");
  const int n = spec.n_sites;
  const int dim = 1 << n;
  const int cut = spec.effective_cutoff();

  if (spec.kind == HamiltonianSpec::Kind::DQ)
    return build_dq_long_range(n, spec.coupling, cut, spec.range_power);

  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n && j - i <= cut; ++j) {
      const double c = spec.coupling / std::pow(double(j - i), spec.range_power);
      switch (spec.kind) {
        case HamiltonianSpec::Kind::XX:
          // (c/2)(sx sx + sy sy): flip-flop, couples 01 <-> 10
          for (int b = 0; b < dim; ++b) {
            if (bit_of(b, i, n) != bit_of(b, j, n)) {
              const int b2 = flip(flip(b, i, n), j, n);
              h(b2, b) += c;
            }
          }
          break;
        case HamiltonianSpec::Kind::DipolarNN:
        case HamiltonianSpec::Kind::DipolarLongRange:
          // (c/2)(3 sz sz - s.s) = c sz sz - c (flip-flop)
          for (int b = 0; b < dim; ++b) {
            h(b, b) += c * zval(b, i, n) * zval(b, j, n);
            if (bit_of(b, i, n) != bit_of(b, j, n)) {
              const int b2 = flip(flip(b, i, n), j, n);
              h(b2, b) += -c;
            }
          }
          break;
        case HamiltonianSpec::Kind::DQ:
          break;  // handled above
      }
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Evolver
// ---------------------------------------------------------------------------

Evolver::Evolver(const MatrixXcd& hamiltonian) {
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("Evolver: Hamiltonian is not Hermitian");
  if (hamiltonian.imag().cwiseAbs().maxCoeff() < 1e-14 * scale) {
    real_path_ = true;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hamiltonian.real());
    if (es.info() != Eigen::Success) throw std::runtime_error("Evolver: eigensolver failed");
    v_real_ = es.eigenvectors();
    evals_ = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hamiltonian);
    if (es.info() != Eigen::Success) throw std::runtime_error("Evolver: eigensolver failed");
    v_cplx_ = es.eigenvectors();
    evals_ = es.eigenvalues();
  }
}

MatrixXcd Evolver::propagator(double t) const {
  const Eigen::Index d = evals_.size();
  if (real_path_) {
    const VectorXd c = (evals_ * (-t)).array().cos();
    const VectorXd s = (evals_ * (-t)).array().sin();
    MatrixXd re(d, d), im(d, d);
    re.noalias() = (v_real_ * c.asDiagonal()) * v_real_.transpose();
    im.noalias() = (v_real_ * s.asDiagonal()) * v_real_.transpose();
    MatrixXcd q(d, d);
    q.real() = re;
    q.imag() = im;
    return q;
  }
  const VectorXcd u = ((-kI * t) * evals_.cast<Complex>().array()).exp();
  return (v_cplx_ * u.asDiagonal()) * v_cplx_.adjoint();
}

MatrixXcd Evolver::evolve(const MatrixXcd& rho0, double t) const {
  const MatrixXcd q = propagator(t);
  return q * rho0 * q.adjoint();
}

MatrixXcd evolve_density(const MatrixXcd& hamiltonian, const MatrixXcd& rho0, double t) {
  return Evolver(hamiltonian).evolve(rho0, t);
}

// ---------------------------------------------------------------------------
// initial states
// ---------------------------------------------------------------------------

VectorXd state_diagonal(const InitialState& state, int n_sites) {
  state.validate(n_sites);
  const int dim = 1 << n_sites;
  VectorXd d = VectorXd::Zero(dim);
  auto add_site = [&](int j) {
    for (int b = 0; b < dim; ++b) d(b) += -zval(b, j, n_sites);
  };
  switch (state.kind) {
    case InitialState::Kind::SingleSite: add_site(state.site); break;
    case InitialState::Kind::EndPolarized: add_site(1); add_site(n_sites); break;
    case InitialState::Kind::Thermal:
      for (int j = 1; j <= n_sites; ++j) add_site(j);
      break;
  }
  return d;
}

MatrixXcd state_matrix(const InitialState& state, int n_sites) {
  return state_diagonal(state, n_sites).cast<Complex>().asDiagonal();
}

// ---------------------------------------------------------------------------
// RestrictedSpaceProbe
// ---------------------------------------------------------------------------

namespace {

// Jordan-Wigner ladder action on a basis state, convention of pauli.hpp:
// c_h = prod_{l<h}(-sigma_z^l) * |0><1|_h.
struct Ladder {
  int site;
  bool dagger;
};

// apply c / c^+ at `site` to |b>; returns false when annihilated
inline bool apply_ladder(const Ladder& op, int n, int& b, Complex& phase) {
  const int bit = bit_of(b, op.site, n);
  if (op.dagger ? (bit != 0) : (bit != 1)) return false;
  double s = 1.0;
  for (int l = 1; l < op.site; ++l) s *= -zval(b, l, n);
  phase *= s;
  b = flip(b, op.site, n);
  return true;
}

}  // namespace

RestrictedSpaceProbe::RestrictedSpaceProbe(int n_sites) : n_(n_sites) {
  const int dim = 1 << n_;
  auto build_product = [&](std::vector<Ladder> ops) {  // rightmost acts first
    SparseAction a;
    for (int b = 0; b < dim; ++b) {
      int cur = b;
      Complex ph{1, 0};
      bool alive = true;
      for (auto it = ops.rbegin(); it != ops.rend() && alive; ++it)
        alive = apply_ladder(*it, n_, cur, ph);
      if (alive) {
        a.col.push_back(b);
        a.row.push_back(cur);
        a.val.push_back(ph);
      }
    }
    return a;
  };

  for (int q = 1; q <= n_; ++q) {
    for (int p = q + 1; p <= n_; ++p) {
      // w_pq multiplies c_p^+ c_q: extract via Tr((c_q^+ c_p) rho)
      hop_obs_.push_back({make_index(p, q), build_product({{q, true}, {p, false}})});
      // v_pq multiplies c_p^+ c_q^+: extract via Tr((c_q c_p) rho)
      pair_obs_.push_back({make_index(p, q), build_product({{q, false}, {p, false}})});
    }
  }

  // sum_i (sx_i sy_{i+1} + sy_i sx_{i+1}); per-bond action computed bitwise
  {
    SparseAction a;
    for (int i = 1; i < n_; ++i) {
      for (int b = 0; b < dim; ++b) {
        // sy|0> = i|1>, sy|1> = -i|0>; sx flips with value 1
        const int bi = bit_of(b, i, n_), bj = bit_of(b, i + 1, n_);
        const int b2 = flip(flip(b, i, n_), i + 1, n_);
        const Complex vy_j = bj ? Complex(0, -1) : Complex(0, 1);
        const Complex vy_i = bi ? Complex(0, -1) : Complex(0, 1);
        a.col.push_back(b);
        a.row.push_back(b2);
        a.val.push_back(vy_j + vy_i);  // sx_i sy_j + sy_i sx_j
      }
    }
    two_spin_obs_ = a;
  }
}

SweepPoint RestrictedSpaceProbe::probe(const Evolver& evolver, const VectorXd& rho0_diag,
                                       double t) const {
  const int dim = 1 << n_;
  const MatrixXcd q = evolver.propagator(t);
  MatrixXcd qd = q;
  for (int c = 0; c < dim; ++c) qd.col(c) *= rho0_diag(c);
  // rho(t) = (q * diag) * q^+; entry (a,b) = row_a(qd) . conj(row_b(q))
  const MatrixXcd qc = q.conjugate();

  SweepPoint out;
  out.site_z = VectorXd::Zero(n_);
  const VectorXd diag = (qd.cwiseProduct(qc)).rowwise().sum().real() / double(dim);
  for (int s = 1; s <= n_; ++s) {
    double m = 0;
    for (int b = 0; b < dim; ++b) m += zval(b, s, n_) * diag(b) * double(dim);
    out.site_z(s - 1) = m / double(dim);
  }
  out.collective = -out.site_z.sum();
  out.diagonal = -out.site_z;

  auto trace_action = [&](const SparseAction& a) {
    Complex acc{0, 0};
    for (std::size_t k = 0; k < a.col.size(); ++k) {
      // Tr(S rho) = sum_b s_b rho_{b, m(b)}
      acc += a.val[k] * (qd.row(a.col[k]).cwiseProduct(qc.row(a.row[k]))).sum();
    }
    return acc / double(dim);
  };

  for (const auto& [idx, act] : hop_obs_) out.hopping[idx] = 4.0 * trace_action(act);
  for (const auto& [idx, act] : pair_obs_) out.pairing[idx] = 4.0 * trace_action(act);
  out.two_spin = trace_action(two_spin_obs_).real();
  return out;
}

// ---------------------------------------------------------------------------
// MQC protocol
// ---------------------------------------------------------------------------

CoherenceSpectrum mq_spectrum(const MatrixXcd& hamiltonian, const MatrixXcd& rho0, double t,
                              CoherenceSpectrum::Basis axis, int n_phases) {
  if (n_phases < 4) throw std::invalid_argument("mq_spectrum: n_phases too small");
  const int dim = static_cast<int>(rho0.rows());
  int n = 0;
  while ((1 << n) < dim) ++n;

  const MatrixXcd rho_t = evolve_density(hamiltonian, rho0, t);

  // collective rotation generator (1/2) sum sigma_axis
  MatrixXcd gen = MatrixXcd::Zero(dim, dim);
  if (axis == CoherenceSpectrum::Basis::Z) {
    for (int b = 0; b < dim; ++b) {
      double m = 0;
      for (int s = 1; s <= n; ++s) m += zval(b, s, n);
      gen(b, b) = 0.5 * m;
    }
  } else {
    for (int b = 0; b < dim; ++b)
      for (int s = 1; s <= n; ++s) gen(flip(b, s, n), b) += 0.5;
  }
  const Evolver rot(gen);

  std::vector<Complex> overlap(static_cast<std::size_t>(n_phases));
  for (int k = 0; k < n_phases; ++k) {
    const double phi = 2.0 * M_PI * k / n_phases;
    const MatrixXcd rho_phi = rot.evolve(rho_t, phi);
    overlap[static_cast<std::size_t>(k)] =
        (rho_t.adjoint() * rho_phi).trace() / double(dim);
  }

  CoherenceSpectrum s;
  s.basis = axis;
  for (int order = -n_phases / 2; order <= n_phases / 2; ++order) {
    Complex acc{0, 0};
    for (int k = 0; k < n_phases; ++k)
      acc += overlap[static_cast<std::size_t>(k)] *
             std::exp(kI * (2.0 * M_PI * order * k / n_phases));
    const double val = (acc / double(n_phases)).real();
    if (std::abs(order) == n_phases / 2 && std::abs(val) > 1e-10)
      throw AliasingError("mq_spectrum: intensity at the Nyquist order; increase n_phases");
    if (std::abs(val) > 1e-14 && std::abs(order) < n_phases / 2) s.intensities[order] = val;
  }
  return s;
}

// ---------------------------------------------------------------------------
// pulse cycles
// ---------------------------------------------------------------------------

double cycle_time(const PulseCycle& cycle) {
  const double per = 3.0 * cycle.delta + 3.0 * cycle.width;  // D/2 + w + (2D+w) + w + D/2
  switch (cycle.kind) {
    case PulseCycle::Kind::TwoPulse: return per;
    case PulseCycle::Kind::FourPulse: return 2 * per;
    case PulseCycle::Kind::EightPulse: return 4 * per;
  }
  return per;
}

MatrixXcd cycle_propagator(const PulseCycle& cycle, const HamiltonianSpec& dipolar) {
  if (dipolar.kind != HamiltonianSpec::Kind::DipolarNN &&
      dipolar.kind != HamiltonianSpec::Kind::DipolarLongRange)
    throw std::invalid_argument("cycle_propagator: expects a dipolar Hamiltonian");
  if (cycle.delta <= 0) throw std::invalid_argument("cycle_propagator: delta must be > 0");

  const int n = dipolar.n_sites;
  const int dim = 1 << n;
  const MatrixXcd hdip = build_hamiltonian(dipolar);
  const Evolver free_ev(hdip);

  MatrixXcd sx_sum = MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int s = 1; s <= n; ++s) sx_sum(flip(b, s, n), b) += 1.0;

  const double w = cycle.width;
  MatrixXcd pulse_plus, pulse_minus;
  if (w > 0) {
    const double omega = M_PI / (2.0 * w);  // pi/2 rotation over the pulse
    pulse_plus = Evolver(hdip + (omega / 2.0) * sx_sum).propagator(w);
    pulse_minus = Evolver(hdip - (omega / 2.0) * sx_sum).propagator(w);
  } else {
    pulse_plus = Evolver(0.25 * M_PI * sx_sum).propagator(1.0);
    pulse_minus = pulse_plus.adjoint();
  }

  const MatrixXcd f_half = free_ev.propagator(cycle.delta / 2.0);
  const MatrixXcd f_mid = free_ev.propagator(2.0 * cycle.delta + w);

  auto half_cycle = [&](bool barred) {
    const MatrixXcd& p = barred ? pulse_minus : pulse_plus;
    return MatrixXcd(f_half * p * f_mid * p * f_half);
  };

  const MatrixXcd uc = half_cycle(false);
  const MatrixXcd ucb = half_cycle(true);

  MatrixXcd u;
  int net_quarter_turns = 0;  // of pi/2 about +x per pulse
  switch (cycle.kind) {
    case PulseCycle::Kind::TwoPulse:
      u = uc;
      net_quarter_turns = 2;
      break;
    case PulseCycle::Kind::FourPulse:
      u = ucb * uc;  // chronologically C then Cbar
      break;
    case PulseCycle::Kind::EightPulse:
      u = uc * ucb * ucb * uc;
      break;
  }
  if (net_quarter_turns != 0) {
    const MatrixXcd r = Evolver(0.25 * M_PI * net_quarter_turns * sx_sum).propagator(1.0);
    u = r.adjoint() * u;
  }
  return u;
}

// ---------------------------------------------------------------------------
// short-time series & leakage
// ---------------------------------------------------------------------------

std::vector<MatrixXcd> short_time_series(const MatrixXcd& hamiltonian, const MatrixXcd& rho0,
                                         int max_order) {
  if (max_order < 2 || max_order > 4)
    throw std::invalid_argument("short_time_series: max_order in 2..4");
  std::vector<MatrixXcd> out;
  MatrixXcd cur = rho0;
  for (int k = 1; k < max_order; ++k) {
    cur = hamiltonian * cur - cur * hamiltonian;
    out.push_back(cur);
  }
  return out;
}

double leakage_fraction(const HamiltonianSpec& dq_spec, const InitialState& state, double t) {
  if (dq_spec.kind != HamiltonianSpec::Kind::DQ)
    throw std::invalid_argument("leakage_fraction: expects the DQ flip-flip form");
  if (dq_spec.n_sites > 10)
    throw std::invalid_argument("leakage_fraction: n_sites capped at 10");
  const int n = dq_spec.n_sites;
  const int dim = 1 << n;

  const MatrixXcd h = build_hamiltonian(dq_spec);
  const MatrixXcd rho = evolve_density(h, state_matrix(state, n), t);
  const double total = (rho.adjoint() * rho).trace().real() / double(dim);

  // real span of the restricted space: diagonals, Hermitian and
  // anti-Hermitian combinations of every bilinear
  double projected = 0;
  auto add_component = [&](const MatrixXcd& b) {
    const double nb = (b.adjoint() * b).trace().real() / double(dim);
    if (nb < 1e-30) return;
    const Complex ov = (b.adjoint() * rho).trace() / double(dim);
    projected += std::norm(ov) / nb;
  };
  for (int q = 1; q <= n; ++q) {
    MatrixXcd cq = jw_annihilator(q, n);
    add_component(2.0 * (cq.adjoint() * cq) - MatrixXcd::Identity(dim, dim));
    for (int p = q + 1; p <= n; ++p) {
      const MatrixXcd cp = jw_annihilator(p, n);
      if ((p - q) % 2 == 0) {
        const MatrixXcd b = cp.adjoint() * cq;
        add_component(b + b.adjoint());
        add_component(kI * (b - b.adjoint()));
      } else {
        const MatrixXcd b = cp.adjoint() * cq.adjoint();
        add_component(b + b.adjoint());
        add_component(kI * (b - b.adjoint()));
      }
    }
  }
  if (total <= 0) return 0.0;
  return 1.0 - projected / total;
}

}  // namespace dqchain::oracle
