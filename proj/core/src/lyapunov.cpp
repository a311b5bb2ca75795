#include "rcf/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "rcf/errors.hpp"
#include "rcf/maps.hpp"

namespace rcf {

SweepRecord estimate_lyapunov(double r, double alpha, double x0, std::uint64_t N, EntropySource& e,
                              const LyapunovOptions& opts) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("estimate_lyapunov: r must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("estimate_lyapunov: alpha must be > 0");
  }
  if (!(x0 > 0.0 && x0 < 1.0)) throw DomainError("estimate_lyapunov: x0 must lie in (0, 1)");
  if (N < 1) throw DomainError("estimate_lyapunov: N must be >= 1");

  const MapParams params{r, alpha};
  const double offset = std::log(alpha) + std::log(r);
  const double slope = alpha + 1.0;

  SweepRecord rec{r, alpha, 0.0, N, 0};
  auto restart = [&]() {
    if (++rec.resamples > opts.resample_cap) {
      throw ResampleLimit("estimate_lyapunov: more than " + std::to_string(opts.resample_cap) +
                          " restarts at r = " + std::to_string(r) +
                          ", alpha = " + std::to_string(alpha));
    }
    return e.uniform_open01();
  };
  auto advance = [&](double x) {
    auto y = try_rcf_alpha_map(x, params);
    return y ? *y : 0.0;
  };

  double x = x0;
  for (std::uint64_t i = 0; i < opts.burn_in; ++i) {
    x = advance(x);
    if (!(x > 0.0)) x = restart();
  }

  double sum = 0.0;
  for (std::uint64_t t = 0; t < N; ++t) {
    sum += offset - slope * std::log(x);
    if (t + 1 == N) break;
    x = advance(x);
    if (!(x > 0.0)) x = restart();
  }
  rec.lambda_hat = sum / static_cast<double>(N);
  return rec;
}

std::vector<SweepRecord> sweep(double r_min, double r_max, double alpha, std::size_t samples,
                               std::uint64_t N, EntropySource& e, const LyapunovOptions& opts) {
  if (!(r_min >= 1.0) || !(r_min < r_max) || !std::isfinite(r_max)) {
    throw DomainError("sweep: require 1 <= r_min < r_max");
  }
  if (samples < 1) throw DomainError("sweep: samples must be >= 1");

  std::vector<SweepRecord> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = e.uniform(r_min, r_max);
    const double x0 = e.uniform_open01();
    out.push_back(estimate_lyapunov(r, alpha, x0, N, e, opts));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SweepRecord& a, const SweepRecord& b) { return a.r < b.r; });
  return out;
}

double conjecture_residual(const SweepRecord& rec) {
  return std::fabs(2.0 + std::log(rec.r) - rec.lambda_hat);
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
  const auto old_precision = os.precision(17);
  os << "r,alpha,lambda,orbit_len,resamples\n";
  for (const auto& rec : records) {
    os << rec.r << ',' << rec.alpha << ',' << rec.lambda_hat << ',' << rec.orbit_len << ','
       << rec.resamples << '\n';
  }
  os.precision(old_precision);
}

}  // namespace rcf
