#include "rcf/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "rcf/errors.hpp"

namespace rcf {
namespace {

void require_unit_sample(std::span<const double> sample, const char* what) {
  for (double v : sample) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError(std::string(what) + ": value " + std::to_string(v) + " outside [0, 1]");
    }
  }
}

// Centered plotting positions i / (n + 1) and their sum of squares.
struct Positions {
  std::vector<double> centered;
  double ss = 0.0;

  explicit Positions(std::size_t n) : centered(n) {
    const double mean = 0.5;  // mean of i / (n + 1), i = 1..n
    for (std::size_t i = 0; i < n; ++i) {
      centered[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1) - mean;
      ss += centered[i] * centered[i];
    }
  }

  // Correlation with an already sorted sample; nullopt at zero variance.
  std::optional<double> correlate(std::span<const double> sorted) const {
    if (sorted.front() == sorted.back()) return std::nullopt;
    const double mean =
        std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double d = sorted[i] - mean;
      sxy += d * centered[i];
      sxx += d * d;
    }
    if (!(sxx > 0.0)) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * ss), -1.0, 1.0);
  }
};

}  // namespace

std::size_t bin_count(double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) {
    throw DomainError("bin width must lie in (0, 1]");
  }
  return static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
}

std::size_t bin_index(double x, double bin_width, std::size_t bins) {
  auto idx = static_cast<std::size_t>(std::floor(x / bin_width));
  if (idx >= bins) idx = bins - 1;
  if (idx > 0 && x < static_cast<double>(idx) * bin_width) --idx;
  if (idx + 1 < bins && x >= static_cast<double>(idx + 1) * bin_width) ++idx;
  return idx;
}

double kolmogorov_survival(double t) {
  constexpr double kTermCutoff = 1e-10;
  if (!(t > 0.0)) return 1.0;
  double p;
  if (t < 1.0) {
    // P(K <= t) = sqrt(2 pi) / t * sum exp(-(2k - 1)^2 pi^2 / (8 t^2))
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * t * t);
    double sum = 0.0;
    for (int k = 1;; ++k) {
      const double m = 2.0 * k - 1.0;
      const double term = std::exp(-m * m * c);
      sum += term;
      if (term < kTermCutoff) break;
    }
    p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / t * sum;
  } else {
    double sum = 0.0;
    for (int k = 1;; ++k) {
      const double term = std::exp(-2.0 * k * k * t * t);
      sum += (k % 2 == 1) ? term : -term;
      if (term < kTermCutoff) break;
    }
    p = 2.0 * sum;
  }
  return std::clamp(p, 0.0, 1.0);
}

double chi_square_upper_tail(double statistic, double df) {
  if (!(df > 0.0)) throw DomainError("chi-square: degrees of freedom must be positive");
  if (!(statistic > 0.0)) return 1.0;
  return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

TestReport ks_uniform(std::span<const double> sample) {
  if (sample.empty()) throw DomainError("ks_uniform: empty sample");
  require_unit_sample(sample, "ks_uniform");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d_plus = 0.0, d_minus = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    d_plus = std::max(d_plus, static_cast<double>(i + 1) / n - s[i]);
    d_minus = std::max(d_minus, s[i] - static_cast<double>(i) / n);
  }
  const double d = std::max(d_plus, d_minus);
  return {d, std::nullopt, kolmogorov_survival(std::sqrt(n) * d), s.size(), "ks"};
}

TestReport chi_square_counts(std::span<const std::uint64_t> observed,
                             std::span<const double> expected, std::string method) {
  if (observed.size() != expected.size() || observed.size() < 2) {
    throw DomainError("chi_square_counts: need matching observed/expected with >= 2 bins");
  }
  double stat = 0.0;
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (!(expected[k] > 0.0)) throw DomainError("chi_square_counts: expected count must be > 0");
    const double diff = static_cast<double>(observed[k]) - expected[k];
    stat += diff * diff / expected[k];
    n += observed[k];
  }
  const int df = static_cast<int>(observed.size()) - 1;
  return {stat, df, chi_square_upper_tail(stat, df), static_cast<std::size_t>(n),
          std::move(method)};
}

TestReport chi_square_uniform(std::span<const double> sample, double bin_width) {
  const std::size_t bins = bin_count(bin_width);
  const double n = static_cast<double>(sample.size());
  if (n * bin_width < 5.0 - 1e-9) {
    throw DomainError("chi_square_uniform: n * bin_width = " + std::to_string(n * bin_width) +
                      " < 5 expected per bin");
  }
  if (bins < 2) throw DomainError("chi_square_uniform: need at least two bins");
  const HistogramSpec h = histogram(sample, bin_width);
  std::vector<double> expected(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double hi = std::min(static_cast<double>(k + 1) * bin_width, 1.0);
    expected[k] = n * (hi - static_cast<double>(k) * bin_width);
  }
  return chi_square_counts(h.counts, expected, "chi_square");
}

TestReport chi_square_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 256 * 5) throw DomainError("chi_square_bytes: need >= 1280 bytes");
  std::array<std::uint64_t, 256> counts{};
  for (auto b : bytes) ++counts[b];
  const std::vector<double> expected(256, static_cast<double>(bytes.size()) / 256.0);
  return chi_square_counts(counts, expected, "chi_square_bytes");
}

TestReport chi_square_grid(std::span<const Pair> pairs, std::size_t cells_per_axis) {
  if (cells_per_axis < 2) throw DomainError("chi_square_grid: need >= 2 cells per axis");
  const std::size_t cells = cells_per_axis * cells_per_axis;
  const double expected_each = static_cast<double>(pairs.size()) / static_cast<double>(cells);
  if (expected_each < 5.0) throw DomainError("chi_square_grid: fewer than 5 expected per cell");
  const double w = 1.0 / static_cast<double>(cells_per_axis);
  std::vector<std::uint64_t> counts(cells, 0);
  for (const auto& [u, v] : pairs) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
      throw DomainError("chi_square_grid: pair outside [0, 1]^2");
    }
    ++counts[bin_index(u, w, cells_per_axis) * cells_per_axis + bin_index(v, w, cells_per_axis)];
  }
  return chi_square_counts(counts, std::vector<double>(cells, expected_each), "chi_square_grid");
}

double ppcc_statistic(std::span<const double> sample) {
  if (sample.size() < 3) throw DomainError("ppcc: need at least 3 values");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  auto r = Positions(s.size()).correlate(s);
  if (!r) throw DegenerateSample("ppcc: sample has zero variance");
  return *r;
}

PpccNull PpccNull::simulate(std::size_t n, std::optional<int> rounding_decimals,
                            std::size_t num_sims, EntropySource& e) {
  if (n < 3) throw DomainError("PpccNull: need n >= 3");
  if (num_sims < 1) throw DomainError("PpccNull: need at least one simulation");
  const Positions positions(n);
  const double scale = rounding_decimals ? std::pow(10.0, *rounding_decimals) : 1.0;

  PpccNull out;
  out.n_ = n;
  out.sorted_.reserve(num_sims);
  std::vector<double> buf(n);
  for (std::size_t s = 0; s < num_sims; ++s) {
    for (auto& v : buf) {
      v = e.uniform(0.0, 1.0);
      // nearbyint honors the default round-half-to-even mode
      if (rounding_decimals) v = std::nearbyint(v * scale) / scale;
    }
    std::sort(buf.begin(), buf.end());
    out.sorted_.push_back(positions.correlate(buf).value_or(0.0));
  }
  std::sort(out.sorted_.begin(), out.sorted_.end());
  return out;
}

double PpccNull::p_value(double statistic) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), statistic);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double PpccNull::critical_value(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("critical_value: alpha must lie in (0, 1)");
  const double pos = alpha * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted_.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted_[lo] + frac * (sorted_[hi] - sorted_[lo]);
}

TestReport ppcc_uniform(std::span<const double> sample, std::optional<int> rounding_decimals,
                        std::size_t num_sims, EntropySource& e) {
  if (num_sims < 1000) throw DomainError("ppcc_uniform: num_sims must be >= 1000");
  require_unit_sample(sample, "ppcc_uniform");
  const double r = ppcc_statistic(sample);
  const auto null = PpccNull::simulate(sample.size(), rounding_decimals, num_sims, e);
  return {r, std::nullopt, null.p_value(r), sample.size(), "ppcc"};
}

std::vector<double> autocorrelation(std::span<const double> sample, std::size_t max_lag) {
  const std::size_t n = sample.size();
  if (max_lag >= n) throw DomainError("autocorrelation: max_lag must be < n");
  const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
  if (*lo == *hi) throw DegenerateSample("autocorrelation: constant sample");
  const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  std::transform(sample.begin(), sample.end(), centered.begin(),
                 [mean](double v) { return v - mean; });
  const double c0 = std::inner_product(centered.begin(), centered.end(), centered.begin(), 0.0);
  if (!(c0 > 0.0)) throw DegenerateSample("autocorrelation: constant sample");

  std::vector<double> acf(max_lag + 1);
  acf[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    const double ck =
        std::inner_product(centered.begin(), centered.end() - static_cast<std::ptrdiff_t>(k),
                           centered.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    acf[k] = ck / c0;
  }
  return acf;
}

HistogramSpec histogram(std::span<const double> sample, double bin_width) {
  const std::size_t bins = bin_count(bin_width);
  require_unit_sample(sample, "histogram");
  HistogramSpec h{bin_width, std::vector<std::uint64_t>(bins, 0)};
  for (double v : sample) ++h.counts[bin_index(v, bin_width, bins)];
  return h;
}

std::vector<Pair> scatter_pairs(std::span<const double> sample) {
  std::vector<Pair> out;
  if (sample.size() < 2) return out;
  out.reserve(sample.size() - 1);
  for (std::size_t i = 0; i + 1 < sample.size(); ++i) out.emplace_back(sample[i], sample[i + 1]);
  return out;
}

void write_reports_csv(std::ostream& os, std::span<const TestReport> reports) {
  const auto old = os.precision(10);
  os << "method,statistic,df,p_value,n\n";
  for (const auto& r : reports) {
    os << r.method << ',' << r.statistic << ',';
    if (r.df) os << *r.df;
    os << ',' << r.p_value << ',' << r.n << '\n';
  }
  os.precision(old);
}

void write_reports_text(std::ostream& os, std::span<const TestReport> reports) {
  const auto flags = os.flags();
  const auto old = os.precision();
  os << std::left << std::setw(18) << "test" << std::setw(14) << "statistic" << std::setw(6)
     << "df" << std::setw(12) << "p-value" << "n\n";
  for (const auto& r : reports) {
    os << std::setw(18) << r.method << std::setw(14) << std::setprecision(6) << r.statistic
       << std::setw(6) << (r.df ? std::to_string(*r.df) : "-") << std::setw(12) << r.p_value
       << r.n << '\n';
  }
  os.flags(flags);
  os.precision(old);
}

void write_histogram_csv(std::ostream& os, const HistogramSpec& h) {
  const auto old = os.precision(10);
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double lo = static_cast<double>(k) * h.bin_width;
    const double hi = std::min(static_cast<double>(k + 1) * h.bin_width, 1.0);
    os << lo << ',' << hi << ',' << h.counts[k] << '\n';
  }
  os.precision(old);
}

void write_pairs_csv(std::ostream& os, std::span<const Pair> pairs) {
  const auto old = os.precision(17);
  os << "x,next\n";
  for (const auto& [a, b] : pairs) os << a << ',' << b << '\n';
  os.precision(old);
}

void write_autocorrelation_csv(std::ostream& os, std::span<const double> acf) {
  const auto old = os.precision(10);
  os << "lag,acf\n";
  for (std::size_t k = 0; k < acf.size(); ++k) os << k << ',' << acf[k] << '\n';
  os.precision(old);
}

}  // namespace rcf
