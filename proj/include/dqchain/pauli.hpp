#pragma once

// Symbolic Pauli strings for the fermion bilinears of the restricted space,
// plus dense builders used by the oracle and the matrix-identity tests.
//
// Site convention (fixed once, enforced by tests): the '+' symbol is the
// flip |0> -> |1>, '-' the reverse, 'z' = diag(1,-1). The matching
// Jordan-Wigner map is c_h = prod_{l<h}(-sigma_z^l) * flip(|1> -> |0>), under
// which the four bilinear template forms
//
//   c_p^+ c_q^+ = s_q^+ z ... z s_p^+        (q < p, creates a pair)
//   c_q c_p     = s_q^- z ... z s_p^-
//   c_q^+ c_p   = s_q^+ z ... z s_p^-        (p - q even)
//   c_q^+ c_q   = (1 - s_q^z)/2
//
// hold with unit scalars on the index classes the restricted space uses.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dqchain {

enum class PauliFactor : std::uint8_t { Plus, Minus, Z, Identity };

enum class StringForm { PairRaising, PairLowering, Mixed, MixedDagger, Diagonal };

struct PauliString {
  int first_site = 1;                 // leftmost site the string touches
  std::vector<PauliFactor> factors;   // contiguous from first_site
  std::complex<double> scalar{1, 0};
  double identity_offset = 0.0;       // adds identity_offset * 1 (diagonal bilinears)

  int last_site() const { return first_site + static_cast<int>(factors.size()) - 1; }
};

enum class BilinearClass : std::uint8_t { Hopping, Pairing, Diagonal };

// (p, q) with q <= p; class follows the gap parity for DQ-evolved states.
struct BilinearIndex {
  int p = 1;
  int q = 1;
  BilinearClass cls = BilinearClass::Diagonal;

  bool operator<(const BilinearIndex& o) const {
    if (p != o.p) return p < o.p;
    if (q != o.q) return q < o.q;
    return cls < o.cls;
  }
  bool operator==(const BilinearIndex& o) const { return p == o.p && q == o.q && cls == o.cls; }
};

inline BilinearClass canonical_class(int p, int q) {
  if (p == q) return BilinearClass::Diagonal;
  return (p - q) % 2 == 0 ? BilinearClass::Hopping : BilinearClass::Pairing;
}

inline BilinearIndex make_index(int p, int q) {
  if (q > p) std::swap(p, q);
  return {p, q, canonical_class(p, q)};
}

inline PauliString to_pauli_string(const BilinearIndex& idx, StringForm which) {
  if (idx.q > idx.p) throw std::invalid_argument("to_pauli_string: requires q <= p");
  PauliString s;
  s.first_site = idx.q;
  if (which == StringForm::Diagonal || idx.p == idx.q) {
    // (1 - sigma_q^z)/2
    s.factors = {PauliFactor::Z};
    s.scalar = {-0.5, 0.0};
    s.identity_offset = 0.5;
    return s;
  }
  const int span = idx.p - idx.q + 1;
  s.factors.assign(static_cast<std::size_t>(span), PauliFactor::Z);
  switch (which) {
    case StringForm::PairRaising:  // c_p^+ c_q^+
      s.factors.front() = PauliFactor::Plus;
      s.factors.back() = PauliFactor::Plus;
      break;
    case StringForm::PairLowering:  // c_q c_p
      s.factors.front() = PauliFactor::Minus;
      s.factors.back() = PauliFactor::Minus;
      break;
    case StringForm::Mixed:  // c_q^+ c_p
      s.factors.front() = PauliFactor::Plus;
      s.factors.back() = PauliFactor::Minus;
      break;
    case StringForm::MixedDagger:  // c_p^+ c_q
      s.factors.front() = PauliFactor::Minus;
      s.factors.back() = PauliFactor::Plus;
      break;
    case StringForm::Diagonal:
      break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// dense builders (test oracle + exact_oracle plumbing)
// ---------------------------------------------------------------------------

namespace pauli_detail {

inline Eigen::Matrix2cd factor_matrix(PauliFactor f) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (f) {
    case PauliFactor::Plus: m(1, 0) = 1; break;          // |1><0|
    case PauliFactor::Minus: m(0, 1) = 1; break;         // |0><1|
    case PauliFactor::Z: m(0, 0) = 1; m(1, 1) = -1; break;
    case PauliFactor::Identity: m.setIdentity(); break;
  }
  return m;
}

}  // namespace pauli_detail

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// One-site operator embedded in an n-site register (site 1 is the leftmost
// kron factor / most significant basis bit).
inline Eigen::MatrixXcd site_operator(const Eigen::Matrix2cd& op, int site, int n_sites) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 1; s <= n_sites; ++s)
    out = kron(out, s == site ? Eigen::MatrixXcd(op)
                              : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
  return out;
}

inline Eigen::MatrixXcd pauli_matrix(const PauliString& s, int n_sites) {
  if (s.first_site < 1 || s.last_site() > n_sites)
    throw std::out_of_range("pauli_matrix: string leaves the register");
  const Eigen::Index dim = Eigen::Index(1) << n_sites;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int site = 1; site <= n_sites; ++site) {
    PauliFactor f = PauliFactor::Identity;
    if (site >= s.first_site && site <= s.last_site())
      f = s.factors[static_cast<std::size_t>(site - s.first_site)];
    out = kron(out, pauli_detail::factor_matrix(f));
  }
  out *= s.scalar;
  if (s.identity_offset != 0.0)
    out += s.identity_offset * Eigen::MatrixXcd::Identity(dim, dim);
  return out;
}

// Jordan-Wigner annihilator in the convention stated at the top of the file.
inline Eigen::MatrixXcd jw_annihilator(int h, int n_sites) {
  if (h < 1 || h > n_sites) throw std::out_of_range("jw_annihilator: site out of range");
  Eigen::Matrix2cd flip = Eigen::Matrix2cd::Zero();
  flip(0, 1) = 1;  // |0><1|
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 1; s <= n_sites; ++s) {
    Eigen::Matrix2cd f = Eigen::Matrix2cd::Identity();
    if (s < h)
      f = -pauli_detail::factor_matrix(PauliFactor::Z);
    else if (s == h)
      f = flip;
    out = kron(out, f);
  }
  return out;
}

}  // namespace dqchain
