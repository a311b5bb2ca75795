#pragma once

// Wall-clock throughput harness and the MT19937 comparison baseline.

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rcf {

/// 32-bit Mersenne Twister (MT19937), tempering and seeding as published by
/// Matsumoto and Nishimura.
class Mt19937 {
 public:
  using result_type = std::uint32_t;
  static constexpr result_type default_seed = 5489u;

  explicit Mt19937(result_type seed = default_seed) { this->seed(seed); }

  void seed(result_type s) noexcept;

  result_type operator()() noexcept {
    if (index_ >= kN) twist();
    result_type y = state_[index_++];
    y ^= y >> 11;
    y ^= (y << 7) & 0x9d2c5680u;
    y ^= (y << 15) & 0xefc60000u;
    y ^= y >> 18;
    return y;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  static constexpr std::size_t kN = 624;
  static constexpr std::size_t kM = 397;

  void twist() noexcept;

  std::array<result_type, kN> state_{};
  std::size_t index_ = kN;
};

struct BenchReport {
  std::string generator_name;
  std::uint64_t iterations = 0;
  double mean_ns = 0.0;
  double sd_ns = 0.0;
  /// min, Q1, median, Q3, max of the per-repetition ns/word.
  std::array<double, 5> five_number_summary{};
  std::size_t repetitions = 0;
  /// ns/word of each timed pass, in run order.
  std::vector<double> samples_ns;
  /// Fold of every emitted word; printing it keeps the loops observable.
  std::uint64_t checksum = 0;
  std::vector<std::string> warnings;
};

/// Mean, sample standard deviation and type-7 quartiles of per-pass ns/word.
BenchReport summarize(std::string name, std::uint64_t iterations, std::span<const double> samples_ns);

/// Holds the process-wide measurement slot; throws Error if another
/// measurement is already running.
class MeasurementLock {
 public:
  MeasurementLock();
  ~MeasurementLock();
  MeasurementLock(const MeasurementLock&) = delete;
  MeasurementLock& operator=(const MeasurementLock&) = delete;
};

/// Throws DomainError unless iterations >= 10^6 and repetitions >= 1.
void validate_measure_args(std::uint64_t iterations, std::size_t repetitions);

/// A warm-up pass, then `repetitions` timed passes of `iterations` words each.
template <class Gen>
BenchReport measure(std::string name, Gen& gen, std::uint64_t iterations, std::size_t repetitions) {
  validate_measure_args(iterations, repetitions);
  MeasurementLock lock;
  using clock = std::chrono::steady_clock;

  std::uint64_t sink = 0;
  auto pass = [&](std::uint64_t count) {
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < count; ++i) acc += static_cast<std::uint64_t>(gen());
    sink ^= acc;
  };

  pass(iterations < 10'000'000 ? iterations : 10'000'000);

  std::vector<double> samples;
  samples.reserve(repetitions);
  std::size_t short_passes = 0;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const auto start = clock::now();
    pass(iterations);
    const auto elapsed = std::chrono::duration<double, std::nano>(clock::now() - start).count();
    if (elapsed < 1e7) ++short_passes;
    samples.push_back(elapsed / static_cast<double>(iterations));
  }

  BenchReport report = summarize(std::move(name), iterations, samples);
  report.checksum = sink;
  if (short_passes > 0) {
    report.warnings.push_back(std::to_string(short_passes) +
                              " pass(es) ran under 10 ms; timer resolution may dominate");
  }
  return report;
}

/// Columns: Generator, Number of Data Points, Mean, Standard Deviation, Five-Number Summary.
void write_bench_table(std::ostream& os, std::span<const BenchReport> reports);
void write_bench_csv(std::ostream& os, std::span<const BenchReport> reports);

}  // namespace rcf
