#pragma once

// Integer-order Bessel functions of the first kind, evaluated by backward
// (Miller) recurrence with Neumann-sum normalization. Stable for order >
// argument, which is where the transport tails live.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dqchain {

// Orders above this cutoff contribute less than ~1e-15 at argument x.
inline int bessel_tail_cutoff(double x) {
  const double ax = std::abs(x);
  return static_cast<int>(std::ceil(ax + 12.0 * std::cbrt(ax) + 20.0));
}

template <typename Scalar>
struct BesselRow {
  Scalar x{};                   // argument (dimensionless, = 2dt in the transport kernels)
  std::vector<Scalar> values;   // J_0(x) .. J_{n_max}(x)

  Scalar operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
  int max_order() const { return static_cast<int>(values.size()) - 1; }

  // J_n with negative orders folded via J_{-n} = (-1)^n J_n and the tail
  // truncated to zero beyond the stored range.
  Scalar at_signed(long n) const {
    const long a = n < 0 ? -n : n;
    if (a > max_order()) return Scalar(0);
    const Scalar v = values[static_cast<std::size_t>(a)];
    return (n < 0 && (a & 1L)) ? -v : v;
  }
};

template <typename Scalar>
BesselRow<Scalar> bessel_row(int n_max, Scalar x) {
  if (n_max < 0) throw std::invalid_argument("bessel_row: n_max must be >= 0");
  BesselRow<Scalar> row;
  row.x = x;
  row.values.assign(static_cast<std::size_t>(n_max) + 1, Scalar(0));
  if (x == Scalar(0)) {
    row.values[0] = Scalar(1);
    return row;
  }

  const double ax = std::abs(static_cast<double>(x));
  if (ax < 1e-8) {
    // leading series terms; everything beyond n=2 underflows the 1e-13 budget
    row.values[0] = Scalar(1) - x * x / Scalar(4);
    if (n_max >= 1) row.values[1] = x / Scalar(2) * (Scalar(1) - x * x / Scalar(8));
    if (n_max >= 2) row.values[2] = x * x / Scalar(8);
    return row;
  }

  // start the downward recurrence well above both the requested order and the
  // tail cutoff so the seeded values have decayed below machine precision
  const int start = std::max(n_max, bessel_tail_cutoff(static_cast<double>(x))) + 14;
  Scalar fip1 = Scalar(0);
  Scalar fi = Scalar(1e-280);
  Scalar neumann = Scalar(0);  // accumulates J_0 + 2 sum_{k>=1} J_{2k}
  const Scalar big = Scalar(1e260);
  for (int n = start; n >= 0; --n) {
    const Scalar fim1 = Scalar(2 * (n + 1)) / x * fi - fip1;
    fip1 = fi;
    fi = fim1;
    if (n <= n_max) row.values[static_cast<std::size_t>(n)] = fi;
    if (n % 2 == 0) neumann += (n == 0) ? fi : Scalar(2) * fi;
    if (std::abs(fi) > big) {
      fi /= big;
      fip1 /= big;
      neumann /= big;
      for (auto& v : row.values) v /= big;
    }
  }
  for (auto& v : row.values) v /= neumann;
  return row;
}

// Single-value convenience; callers needing many orders at one argument
// should use bessel_row directly.
template <typename Scalar>
Scalar bessel_j(int n, Scalar x) {
  if (n < 0) throw std::invalid_argument("bessel_j: n must be >= 0");
  if (x < Scalar(0)) throw std::invalid_argument("bessel_j: x must be >= 0");
  return bessel_row<Scalar>(n, x).values[static_cast<std::size_t>(n)];
}

// Large-order turning-point value J_n(n) ~ Gamma(2/3)^{-1} (2/(9n))^{1/3}.
template <typename Scalar>
Scalar asymptotic_jnn(int n) {
  if (n < 1) throw std::invalid_argument("asymptotic_jnn: n must be >= 1");
  return Scalar(1) / Scalar(std::tgamma(2.0 / 3.0)) *
         std::cbrt(Scalar(2) / (Scalar(9) * Scalar(n)));
}

}  // namespace dqchain
