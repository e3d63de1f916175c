#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nielsen/numeric.hpp"

namespace nielsen {

/// Truncated one-variable power series with exact rational coefficients:
/// coefficient k multiplies x^k, k = 0..order.
class FormalPowerSeries {
public:
  explicit FormalPowerSeries(std::size_t order = 0)
      : coeffs_(order + 1, Rational(0)) {}
  FormalPowerSeries(std::vector<Rational> coeffs, std::size_t order)
      : coeffs_(order + 1, Rational(0)) {
    for (std::size_t k = 0; k < coeffs.size() && k <= order; ++k)
      coeffs_[k] = coeffs[k];
  }

  static FormalPowerSeries generate(std::size_t order,
                                    const std::function<Rational(std::size_t)> &f) {
    FormalPowerSeries s(order);
    for (std::size_t k = 0; k <= order; ++k) s.coeffs_[k] = f(k);
    return s;
  }

  static FormalPowerSeries x(std::size_t order) {
    FormalPowerSeries s(order);
    if (order >= 1) s.coeffs_[1] = 1;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Rational> &coeffs() const noexcept { return coeffs_; }

  Rational operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }

  FormalPowerSeries truncated(std::size_t order) const {
    return FormalPowerSeries(coeffs_, order);
  }

  friend FormalPowerSeries operator+(const FormalPowerSeries &a,
                                     const FormalPowerSeries &b) {
    FormalPowerSeries c(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= c.order(); ++k) c.coeffs_[k] = a[k] + b[k];
    return c;
  }
  friend FormalPowerSeries operator-(const FormalPowerSeries &a,
                                     const FormalPowerSeries &b) {
    FormalPowerSeries c(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= c.order(); ++k) c.coeffs_[k] = a[k] - b[k];
    return c;
  }
  friend FormalPowerSeries operator*(const FormalPowerSeries &a,
                                     const FormalPowerSeries &b) {
    FormalPowerSeries c(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= c.order(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= c.order(); ++j)
        c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return c;
  }
  friend FormalPowerSeries operator*(const Rational &s, FormalPowerSeries a) {
    for (auto &c : a.coeffs_) c *= s;
    return a;
  }

  /// Multiplicative inverse; needs a nonzero constant term.
  FormalPowerSeries reciprocal() const {
    if (coeffs_[0] == 0)
      throw Error(Errc::InvalidArgument, "reciprocal of a series without constant term");
    FormalPowerSeries r(order());
    r.coeffs_[0] = 1 / coeffs_[0];
    for (std::size_t k = 1; k <= order(); ++k) {
      Rational acc = 0;
      for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
      r.coeffs_[k] = -acc / coeffs_[0];
    }
    return r;
  }

  friend bool operator==(const FormalPowerSeries &a, const FormalPowerSeries &b) {
    return a.coeffs_ == b.coeffs_;
  }

private:
  std::vector<Rational> coeffs_;
};

inline Rational factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

/// sum_k (scale·x)^k / k! restricted to the parity class of `parity`
/// (0: cosh-type, 1: sinh-type).
inline FormalPowerSeries hyperbolic_series(std::size_t order, const Rational &scale,
                                           std::size_t parity) {
  return FormalPowerSeries::generate(order, [&](std::size_t k) -> Rational {
    if (k % 2 != parity) return 0;
    Rational p = 1;
    for (std::size_t t = 0; t < k; ++t) p *= scale;
    return p / factorial(k);
  });
}

/// tanh(x/2) = sinh(x/2) / cosh(x/2).
inline FormalPowerSeries tanh_half_series(std::size_t order) {
  const Rational half(1, 2);
  return hyperbolic_series(order, half, 1) *
         hyperbolic_series(order, half, 0).reciprocal();
}

/// x / tanh(x/2) = cosh(x/2) · (sinh(x/2)/x)^{-1}.
inline FormalPowerSeries l_tilde_series(std::size_t order) {
  const Rational half(1, 2);
  // sinh(x/2)/x has coefficient (1/2)^{k+1}/(k+1)! at even k
  const FormalPowerSeries sinh_over_x =
      FormalPowerSeries::generate(order, [&](std::size_t k) -> Rational {
        if (k % 2 != 0) return 0;
        Rational p = 1;
        for (std::size_t t = 0; t <= k; ++t) p *= half;
        return p / factorial(k + 1);
      });
  return hyperbolic_series(order, half, 0) * sinh_over_x.reciprocal();
}

inline std::string to_string(const FormalPowerSeries &s) {
  std::string out;
  for (std::size_t k = 0; k <= s.order(); ++k)
    out += "x^" + std::to_string(k) + ": " + to_string(s[k]) + "\n";
  return out;
}

} // namespace nielsen
