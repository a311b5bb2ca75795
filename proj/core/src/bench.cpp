#include "rcf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rcf/errors.hpp"

namespace rcf {

void Mt19937::seed(result_type s) noexcept {
  state_[0] = s;
  for (std::size_t i = 1; i < kN; ++i) {
    state_[i] = 1812433253u * (state_[i - 1] ^ (state_[i - 1] >> 30)) + static_cast<result_type>(i);
  }
  index_ = kN;
}

void Mt19937::twist() noexcept {
  constexpr result_type kUpper = 0x80000000u;
  constexpr result_type kLower = 0x7fffffffu;
  constexpr result_type kMatrix = 0x9908b0dfu;
  for (std::size_t i = 0; i < kN; ++i) {
    const result_type y = (state_[i] & kUpper) | (state_[(i + 1) % kN] & kLower);
    state_[i] = state_[(i + kM) % kN] ^ (y >> 1) ^ ((y & 1u) ? kMatrix : 0u);
  }
  index_ = 0;
}

namespace {

std::atomic_flag g_measuring = ATOMIC_FLAG_INIT;

double quantile7(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

MeasurementLock::MeasurementLock() {
  if (g_measuring.test_and_set(std::memory_order_acquire)) {
    throw Error("benchmark harness: another measurement is already running");
  }
}

MeasurementLock::~MeasurementLock() { g_measuring.clear(std::memory_order_release); }

void validate_measure_args(std::uint64_t iterations, std::size_t repetitions) {
  if (iterations < 1'000'000) throw DomainError("measure: iterations must be >= 10^6");
  if (repetitions < 1) throw DomainError("measure: repetitions must be >= 1");
}

BenchReport summarize(std::string name, std::uint64_t iterations,
                      std::span<const double> samples_ns) {
  if (samples_ns.empty()) throw DomainError("summarize: no samples");
  BenchReport r;
  r.generator_name = std::move(name);
  r.iterations = iterations;
  r.repetitions = samples_ns.size();
  r.samples_ns.assign(samples_ns.begin(), samples_ns.end());

  const double n = static_cast<double>(samples_ns.size());
  r.mean_ns = std::accumulate(samples_ns.begin(), samples_ns.end(), 0.0) / n;
  if (samples_ns.size() > 1) {
    double ss = 0.0;
    for (double v : samples_ns) ss += (v - r.mean_ns) * (v - r.mean_ns);
    r.sd_ns = std::sqrt(ss / (n - 1.0));
  }
  std::vector<double> sorted(samples_ns.begin(), samples_ns.end());
  std::sort(sorted.begin(), sorted.end());
  r.five_number_summary = {sorted.front(), quantile7(sorted, 0.25), quantile7(sorted, 0.5),
                           quantile7(sorted, 0.75), sorted.back()};
  return r;
}

void write_bench_table(std::ostream& os, std::span<const BenchReport> reports) {
  const auto flags = os.flags();
  const auto old = os.precision();
  os << std::left << std::setw(20) << "Generator" << std::setw(24) << "Number of Data Points"
     << std::setw(12) << "Mean" << std::setw(20) << "Standard Deviation"
     << "Five-Number Summary\n";
  for (const auto& r : reports) {
    std::ostringstream five;
    five << std::fixed << std::setprecision(2);
    for (std::size_t i = 0; i < 5; ++i) five << (i ? ", " : "") << r.five_number_summary[i];
    os << std::setw(20) << r.generator_name << std::setw(24) << r.repetitions << std::fixed
       << std::setprecision(4) << std::setw(12) << r.mean_ns << std::setw(20) << r.sd_ns
       << five.str() << '\n';
  }
  os.flags(flags);
  os.precision(old);
}

void write_bench_csv(std::ostream& os, std::span<const BenchReport> reports) {
  const auto old = os.precision(8);
  os << "generator,iterations,repetitions,mean_ns,sd_ns,min,q1,median,q3,max,checksum\n";
  for (const auto& r : reports) {
    os << r.generator_name << ',' << r.iterations << ',' << r.repetitions << ',' << r.mean_ns
       << ',' << r.sd_ns;
    for (double v : r.five_number_summary) os << ',' << v;
    os << ',' << r.checksum << '\n';
  }
  os.precision(old);
}

}  // namespace rcf
