#pragma once

// Uniformity battery for samples on [0, 1]: Kolmogorov-Smirnov, chi-square,
// Monte-Carlo probability-plot correlation (PPCC), autocorrelation,
// histograms and adjacent-pair scatter data.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcf/entropy.hpp"

namespace rcf {

struct TestReport {
  double statistic = 0.0;
  std::optional<int> df;
  double p_value = 1.0;
  std::size_t n = 0;
  std::string method;
};

/// Bins [k w, (k + 1) w), the last one closed at 1. Edges are the
/// floating-point products k * w.
struct HistogramSpec {
  double bin_width = 0.1;
  std::vector<std::uint64_t> counts;
};

using Pair = std::pair<double, double>;

/// Number of bins of width w needed to tile [0, 1).
std::size_t bin_count(double bin_width);

/// Bin of x under the HistogramSpec convention.
std::size_t bin_index(double x, double bin_width, std::size_t bins);

/// Asymptotic Kolmogorov survival function P(K > t), series cut once a term drops below 1e-10.
double kolmogorov_survival(double t);

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chi_square_upper_tail(double statistic, double df);

/// One-sample KS test against U(0, 1), asymptotic p-value at sqrt(n) * D.
/// Ties are kept as they are.
TestReport ks_uniform(std::span<const double> sample);

/// Pearson chi-square over ceil(1 / bin_width) bins against U(0, 1).
/// Throws DomainError if n * bin_width < 5 or a value lies outside [0, 1].
TestReport chi_square_uniform(std::span<const double> sample, double bin_width);

/// Pearson chi-square of observed counts against expected counts, df = bins - 1.
TestReport chi_square_counts(std::span<const std::uint64_t> observed,
                             std::span<const double> expected, std::string method);

/// Chi-square of the 256 byte values against equal frequencies.
TestReport chi_square_bytes(std::span<const std::uint8_t> bytes);

/// Chi-square of pair occupancy on a cells x cells grid over [0, 1)^2.
TestReport chi_square_grid(std::span<const Pair> pairs, std::size_t cells_per_axis);

/// Correlation of the sorted sample with the plotting positions i / (n + 1).
/// Throws DegenerateSample if the sample has zero variance.
double ppcc_statistic(std::span<const double> sample);

/// Simulated null distribution of ppcc_statistic for uniform samples of size n,
/// each value optionally rounded half-to-even to `rounding_decimals` places.
class PpccNull {
 public:
  static PpccNull simulate(std::size_t n, std::optional<int> rounding_decimals,
                           std::size_t num_sims, EntropySource& e);

  /// Fraction of simulated correlations <= statistic.
  [[nodiscard]] double p_value(double statistic) const;
  /// Lower alpha-quantile of the simulated correlations.
  [[nodiscard]] double critical_value(double alpha) const;

  [[nodiscard]] std::size_t sample_size() const noexcept { return n_; }
  [[nodiscard]] std::span<const double> sorted_correlations() const noexcept { return sorted_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> sorted_;
};

/// PPCC uniformity test; the p-value comes from `num_sims` simulated samples.
TestReport ppcc_uniform(std::span<const double> sample, std::optional<int> rounding_decimals,
                        std::size_t num_sims, EntropySource& e);

/// Biased (1/n) autocorrelation at lags 0..max_lag.
std::vector<double> autocorrelation(std::span<const double> sample, std::size_t max_lag);

HistogramSpec histogram(std::span<const double> sample, double bin_width);

/// (s_i, s_{i+1}) in stream order.
std::vector<Pair> scatter_pairs(std::span<const double> sample);

void write_reports_csv(std::ostream& os, std::span<const TestReport> reports);
void write_reports_text(std::ostream& os, std::span<const TestReport> reports);
void write_histogram_csv(std::ostream& os, const HistogramSpec& h);
void write_pairs_csv(std::ostream& os, std::span<const Pair> pairs);
void write_autocorrelation_csv(std::ostream& os, std::span<const double> acf);

}  // namespace rcf
