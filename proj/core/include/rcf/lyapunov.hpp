#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rcf/entropy.hpp"

namespace rcf {

/// One Lyapunov estimate of T_{r,alpha}; lambda_hat is in nats per iteration.
struct SweepRecord {
  double r = 1.0;
  double alpha = 1.0;
  double lambda_hat = 0.0;
  std::uint64_t orbit_len = 1;
  std::uint64_t resamples = 0;
};

struct LyapunovOptions {
  /// Iterations discarded before averaging.
  std::uint64_t burn_in = 0;
  /// Maximum number of fresh starting points per estimate.
  std::uint64_t resample_cap = 100;
};

/// (1/N) sum_{t<N} ln |T'_{r,alpha}(x_t)| along the simulated orbit from x0.
///
/// When the orbit lands on 0 or the map image is not representable, the
/// orbit continues from a fresh point drawn from `e` and `resamples` is
/// incremented; the terms already accumulated are kept. Throws
/// ResampleLimit once resamples would exceed opts.resample_cap.
SweepRecord estimate_lyapunov(double r, double alpha, double x0, std::uint64_t N, EntropySource& e,
                              const LyapunovOptions& opts = {});

/// `samples` estimates at r uniform on [r_min, r_max] with a fresh x0 each,
/// sorted by r.
std::vector<SweepRecord> sweep(double r_min, double r_max, double alpha, std::size_t samples,
                               std::uint64_t N, EntropySource& e, const LyapunovOptions& opts = {});

/// |2 + ln r - lambda_hat|.
double conjecture_residual(const SweepRecord& rec);

/// Header `r,alpha,lambda,orbit_len,resamples` followed by one row per record.
void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records);

}  // namespace rcf
