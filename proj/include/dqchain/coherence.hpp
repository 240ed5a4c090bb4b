#pragma once

// Coherence-order spectra of restricted-space operators. Intensities are
// Hilbert-Schmidt norms squared (normalized trace), so the total over orders
// equals the operator norm^2 and is conserved under unitary evolution.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "dqchain/bilinear.hpp"

namespace dqchain {

struct CoherenceSpectrum {
  enum class Basis { Z, X };
  Basis basis = Basis::Z;
  std::map<int, double> intensities;

  double total() const {
    double s = 0;
    for (const auto& [o, v] : intensities) s += v;
    return s;
  }
  double at(int order) const {
    auto it = intensities.find(order);
    return it == intensities.end() ? 0.0 : it->second;
  }
};

// z-basis: hopping strings and diagonals are zero-quantum, pairing strings
// are +-2 quantum; intensities are the squared coefficients weighted by the
// string norms.
inline CoherenceSpectrum z_basis_spectrum(const OperatorCoefficients& coeffs) {
  CoherenceSpectrum s;
  s.basis = CoherenceSpectrum::Basis::Z;
  for (const auto& [idx, w] : coeffs.entries) {
    switch (idx.cls) {
      case BilinearClass::Diagonal:
        s.intensities[0] += std::norm(w);
        break;
      case BilinearClass::Hopping:
        s.intensities[0] += std::norm(w) / 2.0;
        break;
      case BilinearClass::Pairing:
        s.intensities[2] += std::norm(w) / 4.0;
        s.intensities[-2] += std::norm(w) / 4.0;
        break;
    }
  }
  return s;
}

namespace coherence_detail {

// Per-site x-order decomposition over the orthonormal set
// { sigma_x (order 0), sigma^{x+}/sqrt2 (+1), sigma^{x-}/sqrt2 (-1) }.
// Index 0 -> sigma_x, 1 -> +1 component, 2 -> -1 component.
struct SiteAmps {
  std::complex<double> a[3];
};

inline SiteAmps site_amps(PauliFactor f) {
  const double inv2r2 = 1.0 / (2.0 * std::sqrt(2.0));
  const double invr2 = 1.0 / std::sqrt(2.0);
  switch (f) {
    case PauliFactor::Plus:   // |1><0| = std sigma_-
      return {{{0.5, 0}, {0, -inv2r2}, {0, -inv2r2}}};
    case PauliFactor::Minus:  // |0><1| = std sigma_+
      return {{{0.5, 0}, {0, inv2r2}, {0, inv2r2}}};
    case PauliFactor::Z:
      return {{{0, 0}, {0, -invr2}, {0, invr2}}};
    default:
      return {{{0, 0}, {0, 0}, {0, 0}}};
  }
}

constexpr int kOrderOf[3] = {0, +1, -1};

// Accumulate amp * (product over sites of the chosen basis component) into
// per-tuple amplitudes, keyed base-3.
inline void expand_string(const PauliString& s, std::complex<double> coeff,
                          std::unordered_map<std::uint64_t, std::complex<double>>& acc) {
  const std::size_t len = s.factors.size();
  std::vector<SiteAmps> amps(len);
  for (std::size_t i = 0; i < len; ++i) amps[i] = site_amps(s.factors[i]);
  struct Frame { std::uint64_t key; std::complex<double> a; std::size_t depth; };
  std::vector<Frame> stack{{0, coeff * s.scalar, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == len) {
      acc[f.key] += f.a;
      continue;
    }
    const SiteAmps& sa = amps[f.depth];
    for (int c = 0; c < 3; ++c) {
      if (sa.a[c] == std::complex<double>(0, 0)) continue;
      stack.push_back({f.key * 3 + static_cast<std::uint64_t>(c), f.a * sa.a[c], f.depth + 1});
    }
  }
}

inline int tuple_order(std::uint64_t key, std::size_t len) {
  int o = 0;
  for (std::size_t i = 0; i < len; ++i) {
    o += kOrderOf[key % 3];
    key /= 3;
  }
  return o;
}

}  // namespace coherence_detail

// x-basis: each contiguous string is expanded site by site into x-order
// components (ends carry orders {0,+-1}, interior z factors {+-1}); the two
// Hermitian-conjugate strings of an entry interfere and are summed per
// component before squaring. Strings with different supports are orthogonal,
// so supports accumulate independently.
inline CoherenceSpectrum x_basis_spectrum(const OperatorCoefficients& coeffs) {
  using namespace coherence_detail;
  CoherenceSpectrum s;
  s.basis = CoherenceSpectrum::Basis::X;

  // group entries by support (q, p); diagonals are their own support
  std::map<std::pair<int, int>, std::vector<std::pair<BilinearIndex, Complex>>> groups;
  for (const auto& [idx, w] : coeffs.entries) groups[{idx.q, idx.p}].push_back({idx, w});

  for (const auto& [support, entries] : groups) {
    std::unordered_map<std::uint64_t, std::complex<double>> acc;
    std::size_t len = 0;
    for (const auto& [idx, w] : entries) {
      if (idx.cls == BilinearClass::Diagonal) {
        // w (2n - 1) = -w sigma_z
        PauliString z;
        z.first_site = idx.q;
        z.factors = {PauliFactor::Z};
        expand_string(z, -w, acc);
        len = 1;
      } else if (idx.cls == BilinearClass::Hopping) {
        expand_string(to_pauli_string(idx, StringForm::MixedDagger), w, acc);
        expand_string(to_pauli_string(idx, StringForm::Mixed), std::conj(w), acc);
        len = static_cast<std::size_t>(idx.p - idx.q + 1);
      } else {
        expand_string(to_pauli_string(idx, StringForm::PairRaising), w, acc);
        expand_string(to_pauli_string(idx, StringForm::PairLowering), std::conj(w), acc);
        len = static_cast<std::size_t>(idx.p - idx.q + 1);
      }
    }
    for (const auto& [key, a] : acc) {
      const double w2 = std::norm(a);
      if (w2 > 0) s.intensities[tuple_order(key, len)] += w2;
    }
  }

  // prune numerical zeros
  for (auto it = s.intensities.begin(); it != s.intensities.end();)
    it = (it->second < 1e-30) ? s.intensities.erase(it) : std::next(it);
  return s;
}

}  // namespace dqchain
