#pragma once

#include <cstdint>
#include <memory>
#include <random>

namespace rcf {

/// Supplier of raw 64-bit words and of reals uniform on the open interval (0, 1).
class EntropySource {
 public:
  virtual ~EntropySource() = default;

  /// Throws EntropyFailure if the source cannot deliver.
  virtual std::uint64_t next_u64() = 0;

  /// 53-bit uniform real, redrawn until strictly inside (0, 1).
  double uniform_open01();

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi);
};

/// SplitMix64: a counter stepped by the golden-ratio increment and a
/// 64-bit finalizer. Same seed, same sequence.
class SplitMix64 final : public EntropySource {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : counter_(seed) {}

  std::uint64_t next_u64() noexcept override;

  /// Independent stream for sub-task `index`.
  [[nodiscard]] SplitMix64 fork(std::uint64_t index) const noexcept;

  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t counter_;
};

/// Operating-system entropy via std::random_device.
class OsEntropy final : public EntropySource {
 public:
  OsEntropy();
  std::uint64_t next_u64() override;

 private:
  std::random_device device_;
};

/// Entropy policy of a generator: the OS device, or a reproducible SplitMix64 stream.
struct EntropyMode {
  enum class Kind { Os, DeterministicAux };
  Kind kind = Kind::DeterministicAux;
  std::uint64_t seed = 0;

  static EntropyMode os() { return {Kind::Os, 0}; }
  static EntropyMode deterministic(std::uint64_t s) { return {Kind::DeterministicAux, s}; }
};

std::unique_ptr<EntropySource> make_entropy(const EntropyMode& mode);

}  // namespace rcf
