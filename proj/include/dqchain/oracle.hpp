#pragma once

// Brute-force dense density-matrix simulator for N <= 12 spins. Ground truth
// for the analytical transport formulas, the pulse-cycle average-Hamiltonian
// checks, the short-time commutator expansion, and the long-range leakage
// study. Evolution is by exact eigendecomposition; Hamiltonians built here
// are real symmetric, which selects a fast real-arithmetic path.

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dqchain/bilinear.hpp"
#include "dqchain/chain.hpp"
#include "dqchain/coherence.hpp"
#include "dqchain/pauli.hpp"

namespace dqchain::oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct AliasingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HamiltonianSpec {
  enum class Kind { DQ, XX, DipolarNN, DipolarLongRange };
  Kind kind = Kind::DQ;
  int n_sites = 4;
  double coupling = 1.0;     // rad/s; signed (the on-axis dipolar coefficient is negative)
  double range_power = 3.0;  // long-range decay d/|i-j|^power
  int cutoff = -1;           // neighbor cutoff; -1 = N-1 for long-range kinds, 1 otherwise
  int site_cap = 12;

  int effective_cutoff() const {
    if (cutoff > 0) return cutoff;
    return (kind == Kind::DipolarLongRange) ? n_sites - 1 : 1;
  }
};

MatrixXcd build_hamiltonian(const HamiltonianSpec& spec);

// DQ flip-flip form with 1/|i-j|^power weights on all pairs within cutoff
// (cutoff 1 reproduces the NN DQ Hamiltonian exactly).
MatrixXcd build_dq_long_range(int n_sites, double coupling, int cutoff, double power);

// Exact evolution rho(t) = e^{-iHt} rho0 e^{iHt} via one eigendecomposition.
class Evolver {
 public:
  explicit Evolver(const MatrixXcd& hamiltonian);

  int dim() const { return static_cast<int>(evals_.size()); }
  MatrixXcd propagator(double t) const;
  MatrixXcd evolve(const MatrixXcd& rho0, double t) const;
  const VectorXd& eigenvalues() const { return evals_; }

 private:
  bool real_path_ = false;
  MatrixXd v_real_;
  MatrixXcd v_cplx_;
  VectorXd evals_;
};

MatrixXcd evolve_density(const MatrixXcd& hamiltonian, const MatrixXcd& rho0, double t);

// Deviation density operators of the named initial states; all are diagonal
// in the computational basis.
VectorXd state_diagonal(const InitialState& state, int n_sites);
MatrixXcd state_matrix(const InitialState& state, int n_sites);

// ---------------------------------------------------------------------------
// restricted-space expectation probe (fast path for the oracle sweeps)
// ---------------------------------------------------------------------------

struct SweepPoint {
  VectorXd site_z;                          // per-site <sigma_z>
  double collective = 0;                    // -sum_q <sigma_z^q>
  double two_spin = 0;                      // sum_i <sx_i sy_{i+1} + sy_i sx_{i+1}>
  std::map<BilinearIndex, Complex> hopping; // all gaps
  std::map<BilinearIndex, Complex> pairing; // all gaps
  VectorXd diagonal;                        // coefficients of (2 n_q - 1)
};

// Measures a dense-evolved diagonal initial state against every fermion
// bilinear without materializing rho(t).
class RestrictedSpaceProbe {
 public:
  explicit RestrictedSpaceProbe(int n_sites);
  SweepPoint probe(const Evolver& evolver, const VectorXd& rho0_diag, double t) const;

 private:
  struct SparseAction {  // column y -> sum_k value_k |row_k>
    std::vector<int> col, row;
    std::vector<Complex> val;
  };
  int n_;
  std::vector<std::pair<BilinearIndex, SparseAction>> hop_obs_;   // c_q^+ c_p
  std::vector<std::pair<BilinearIndex, SparseAction>> pair_obs_;  // c_q c_p
  SparseAction two_spin_obs_;
};

// ---------------------------------------------------------------------------
// multiple-quantum coherence protocol
// ---------------------------------------------------------------------------

// Phase-incremented collective rotation + Fourier analysis. Throws
// AliasingError when the Nyquist bin carries intensity above 1e-10.
CoherenceSpectrum mq_spectrum(const MatrixXcd& hamiltonian, const MatrixXcd& rho0, double t,
                              CoherenceSpectrum::Basis axis, int n_phases);

// ---------------------------------------------------------------------------
// pulse cycles
// ---------------------------------------------------------------------------

struct PulseCycle {
  enum class Kind { TwoPulse, FourPulse, EightPulse };
  Kind kind = Kind::EightPulse;
  double delta = 2.9e-6;  // s
  double width = 0.0;     // pi/2 pulse width; 0 = instantaneous
};

double cycle_time(const PulseCycle& cycle);

// Propagator of the pulse train in the frame of the net rf rotation (the
// 2-pulse half-cycle carries a residual collective pi about x, which is
// removed so every cycle targets exp(-i H_DQ tau_c)).
MatrixXcd cycle_propagator(const PulseCycle& cycle, const HamiltonianSpec& dipolar);

// ---------------------------------------------------------------------------
// short-time expansion & leakage
// ---------------------------------------------------------------------------

// Nested commutators [H, rho0], [H,[H, rho0]], ... (max_order - 1 of them).
std::vector<MatrixXcd> short_time_series(const MatrixXcd& hamiltonian, const MatrixXcd& rho0,
                                         int max_order);

// Fraction of operator norm outside the restricted bilinear space after
// evolving `state` under the (possibly long-range) DQ Hamiltonian.
double leakage_fraction(const HamiltonianSpec& dq_spec, const InitialState& state, double t);

}  // namespace dqchain::oracle
