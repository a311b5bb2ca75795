#include "rcf/maps.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rcf/errors.hpp"

namespace rcf {
namespace {

void require_closed_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [0, 1]");
  }
}

void require_subinterval(double a, double b, const char* what) {
  if (!(a >= 0.0 && a <= b && b <= 1.0)) {
    throw DomainError(std::string(what) + ": [a, b] must satisfy 0 <= a <= b <= 1");
  }
}

void require_positive_r(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(what) + ": r must be a positive finite real");
  }
}

// frac(r / x) with a single rounding of the quotient at extended precision.
double frac_of_quotient(long double r, long double x) noexcept {
  const long double q = r / x;
  return static_cast<double>(q - std::floor(q));
}

}  // namespace

UnitReal::UnitReal(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw DomainError("UnitReal: " + std::to_string(value) + " outside [0, 1)");
  }
}

void MapParams::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("MapParams: r must be > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("MapParams: alpha must be > 0");
}

double gauss_map(double x) { return rcf_map(x, 1.0); }

double rcf_map(double x, double r) {
  require_closed_unit(x, "rcf_map");
  require_positive_r(r, "rcf_map");
  if (x == 0.0) return 0.0;
  return frac_of_quotient(r, x);
}

std::optional<double> try_rcf_alpha_map(double x, const MapParams& p) noexcept {
  if (x == 0.0) return 0.0;
  if (p.alpha == 1.0) return frac_of_quotient(p.r, x);
  const long double xa = std::pow(static_cast<long double>(x), static_cast<long double>(p.alpha));
  if (xa == 0.0L) return std::nullopt;
  const long double q = static_cast<long double>(p.r) / xa;
  if (!std::isfinite(q)) return std::nullopt;
  return static_cast<double>(q - std::floor(q));
}

double rcf_alpha_map(double x, const MapParams& p) {
  require_closed_unit(x, "rcf_alpha_map");
  p.validate();
  if (auto y = try_rcf_alpha_map(x, p)) return *y;
  throw OverflowError("rcf_alpha_map: r / x^alpha not representable at x = " + std::to_string(x));
}

double log_abs_derivative(double x, const MapParams& p) {
  p.validate();
  if (!(x > 0.0 && x <= 1.0)) {
    throw DomainError("log_abs_derivative: x must lie in (0, 1]");
  }
  return std::log(p.alpha) + std::log(p.r) - (p.alpha + 1.0) * std::log(x);
}

IntervalMass gauss_kuzmin_mass(double r, double a, double b) {
  require_positive_r(r, "gauss_kuzmin_mass");
  require_subinterval(a, b, "gauss_kuzmin_mass");
  return {a, b, std::log1p((b - a) / (r + a)) / std::log1p(1.0 / r)};
}

IntervalMass preimage_mass(double r, double a, double b) {
  require_positive_r(r, "preimage_mass");
  require_subinterval(a, b, "preimage_mass");
  const double c = std::ceil(r);
  return {a, b, std::log1p((b - a) / (c + a)) / std::log1p(1.0 / r)};
}

double cdf_of_mapped_uniform(double r, double x, double tail_tolerance) {
  if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("cdf_of_mapped_uniform: r must be > 1");
  require_closed_unit(x, "cdf_of_mapped_uniform");
  if (!(tail_tolerance > 0.0)) throw DomainError("cdf_of_mapped_uniform: tail_tolerance must be > 0");
  if (x == 0.0) return 0.0;

  const long double rl = r;
  const long double xl = x;
  // f(t) = r x / (t (t + x)) is completely monotone, so the Euler-Maclaurin
  // remainder after the f''' correction is bounded by the f^(5) term.
  auto term = [&](long double t) { return rl * xl / (t * (t + xl)); };
  auto remainder_bound = [&](long double t) {
    const long double u = t + xl;
    const long double u2 = u * u, t2 = t * t;
    const long double diff6 = xl * (2 * t + xl) * (u2 * u2 + u2 * t2 + t2 * t2);
    return 120 * rl * diff6 / (t2 * t2 * t2 * u2 * u2 * u2) / 30240;
  };

  long double k = std::ceil(rl);
  long double sum = 0;
  while (remainder_bound(k) >= tail_tolerance) {
    sum += term(k);
    k += 1;
  }
  const long double u = k + xl;
  const long double d1 = -rl * xl * (2 * k + xl) / (k * k * u * u);
  const long double d3 =
      -6 * rl * xl * (2 * k + xl) * (u * u + k * k) / (k * k * k * k * u * u * u * u);
  const long double tail = rl * std::log1p(xl / k) + term(k) / 2 - d1 / 12 + d3 / 720;
  const long double cdf = sum + tail;
  return static_cast<double>(std::fmin(cdf, 1.0L));
}

DigitSequence rcf_expand(double x, double r, int max_depth) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("rcf_expand: x must lie in (0, 1)");
  if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("rcf_expand: r must be >= 1");
  if (max_depth < 1) throw DomainError("rcf_expand: max_depth must be >= 1");

  constexpr long double kDigitLimit = 9.2e18L;
  constexpr long double kEps = std::numeric_limits<long double>::epsilon();
  constexpr long double kSafety = 4;

  DigitSequence out;
  out.r = r;
  const long double rl = r;
  long double xt = x;
  // Half an ulp of the double input.
  long double err = (std::nextafter(x, 1.0) - x) / 2.0L;

  for (int depth = 0; depth < max_depth; ++depth) {
    const long double q = rl / xt;
    if (!(q < kDigitLimit)) throw OverflowError("rcf_expand: partial quotient exceeds 64 bits");
    const long double digit = std::floor(q);
    const long double f = q - digit;
    err = err * rl / (xt * xt) + q * kEps;

    if (f <= kSafety * err) {
      out.partial_quotients.push_back(static_cast<std::int64_t>(digit));
      break;
    }
    if (1 - f <= kSafety * err) {
      out.partial_quotients.push_back(static_cast<std::int64_t>(digit) + 1);
      break;
    }
    out.partial_quotients.push_back(static_cast<std::int64_t>(digit));
    xt = f;
  }
  return out;
}

double evaluate_convergent(const DigitSequence& d) {
  require_positive_r(d.r, "evaluate_convergent");
  const auto& pq = d.partial_quotients;
  if (pq.empty()) return static_cast<double>(d.a0);
  for (auto a : pq) {
    if (a < 1) throw DomainError("evaluate_convergent: partial quotients must be >= 1");
  }
  const long double rl = d.r;
  long double v = static_cast<long double>(pq.back());
  for (auto it = pq.rbegin() + 1; it != pq.rend(); ++it) {
    v = static_cast<long double>(*it) + rl / v;
  }
  return static_cast<double>(static_cast<long double>(d.a0) + rl / v);
}

}  // namespace rcf
