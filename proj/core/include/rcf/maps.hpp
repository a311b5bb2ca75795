#pragma once

// The Gauss continued-fraction map, its r-contracted generalization
// T_r(x) = G(x / r) = frac(r / x), the two-parameter map T_{r,alpha}(x) = G(x^alpha / r),
// r-continued-fraction digit expansions, and the closed-form measure
// identities of the r-Gauss-Kuzmin density 1 / ((r + x) ln(1 + 1/r)).

#include <cstdint>
#include <optional>
#include <vector>

namespace rcf {

/// A real in [0, 1).
class UnitReal {
 public:
  /// Throws DomainError unless 0 <= value < 1.
  explicit UnitReal(double value);

  [[nodiscard]] double value() const noexcept { return value_; }
  explicit operator double() const noexcept { return value_; }

  friend bool operator==(UnitReal, UnitReal) = default;

 private:
  double value_;
};

/// Contraction parameter r and exponent alpha of T_{r,alpha}.
struct MapParams {
  double r = 1.0;
  double alpha = 1.0;

  /// Throws DomainError unless r > 0 and alpha > 0.
  void validate() const;
};

/// x = a0 + r / (a1 + r / (a2 + ...)), truncated after partial_quotients.size() terms.
struct DigitSequence {
  std::int64_t a0 = 0;
  std::vector<std::int64_t> partial_quotients;
  double r = 1.0;

  friend bool operator==(const DigitSequence&, const DigitSequence&) = default;
};

/// Mass of [a, b] under some measure on [0, 1].
struct IntervalMass {
  double a = 0.0;
  double b = 0.0;
  double mass = 0.0;
};

/// frac(1 / x) for x in (0, 1], and 0 at x = 0.
double gauss_map(double x);

/// T_r(x) = frac(r / x), 0 at x = 0. Requires x in [0, 1] and r > 0.
double rcf_map(double x, double r);

/// T_{r,alpha}(x) = frac(r / x^alpha). Throws OverflowError when x^alpha underflows
/// to zero for x > 0 or r / x^alpha is not finite.
double rcf_alpha_map(double x, const MapParams& p);

/// Non-throwing form of rcf_alpha_map: std::nullopt where that would throw.
std::optional<double> try_rcf_alpha_map(double x, const MapParams& p) noexcept;

/// ln |T'_{r,alpha}(x)| = ln(alpha) + ln(r) - (alpha + 1) ln(x). Throws DomainError at x = 0.
double log_abs_derivative(double x, const MapParams& p);

/// mu_r([a, b]) = (ln(r + b) - ln(r + a)) / ln(1 + 1/r).
IntervalMass gauss_kuzmin_mass(double r, double a, double b);

/// mu_r of the union over full branches k >= ceil(r) of T_r^{-1}([a, b]):
/// (ln(ceil(r) + b) - ln(ceil(r) + a)) / ln(1 + 1/r).
/// Equal to gauss_kuzmin_mass for integer r, strictly smaller otherwise.
IntervalMass preimage_mass(double r, double a, double b);

/// P(T_r(U) <= x) for U uniform on [0, 1], i.e. x * sum_{k >= ceil(r)} r / (k (k + x)).
///
/// Terms are added explicitly until the Euler-Maclaurin remainder of the
/// closed tail falls below tail_tolerance; the tail itself is then added in
/// closed form. Requires r > 1.
double cdf_of_mapped_uniform(double r, double x, double tail_tolerance = 1e-12);

/// r-CF digits of x along the T_r orbit: a_{t+1} = floor(r / x_t).
///
/// The orbit carries a running bound on its own rounding error. When an orbit
/// point is within that bound of a digit boundary the point is taken to be
/// exactly on it and the expansion terminates, as it does when the orbit
/// reaches 0. Requires 0 < x < 1, r >= 1, max_depth >= 1.
DigitSequence rcf_expand(double x, double r, int max_depth);

/// Backward-recurrence evaluation of a finite r-continued fraction.
double evaluate_convergent(const DigitSequence& d);

}  // namespace rcf
