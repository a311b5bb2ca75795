#pragma once

// The coupled n-dimensional r-CF generator
//
//   x_{t+1,j} = G( x_{t,j} / (A + (B - A) x_{t,psi(j)}) ),   0 <= j <= n,
//
// emitting floor(x_{t,j} * 2^w) in row-major (t, j) order, starting with the
// seed row t = 0. A coordinate whose finite-precision image leaves (0, 1) is
// replaced by a fresh draw from the configured entropy source (a reseed).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "rcf/entropy.hpp"

namespace rcf {

/// Coupling index map psi: {0..n} -> {0..n}.
struct PsiMode {
  enum class Kind { SelfIndex, CyclicShift };
  Kind kind = Kind::SelfIndex;
  std::size_t offset = 0;

  /// psi(j) = floor((n + 1) x_{t,j}).
  static PsiMode self_index() { return {Kind::SelfIndex, 0}; }
  /// psi(j) = (j + k) mod (n + 1).
  static PsiMode cyclic(std::size_t k) { return {Kind::CyclicShift, k}; }
};

enum class WordSize { Bits32 = 32, Bits64 = 64 };

/// How frac(r / x) is evaluated for 53-bit state.
enum class PrecisionMode {
  /// Native long double quotient (64-bit significand on x87 targets).
  Extended,
  /// Double quotient plus an FMA-recovered remainder (double-word evaluation).
  Compensated,
};

/// Synchronous: every psi lookup reads the step-t vector.
/// Sequential: coordinates are overwritten in place in increasing j.
enum class UpdateOrder { Synchronous, Sequential };

/// Extended when long double carries at least 64 significand bits, Compensated otherwise.
constexpr PrecisionMode default_precision() noexcept {
  return std::numeric_limits<long double>::digits >= 64 ? PrecisionMode::Extended
                                                        : PrecisionMode::Compensated;
}

struct GeneratorConfig {
  std::size_t n = 1000;
  double A = 1000.0;
  double B = 10000.0;
  PsiMode psi = PsiMode::self_index();
  WordSize word_size = WordSize::Bits32;
  EntropyMode entropy = EntropyMode::os();
  PrecisionMode precision = default_precision();
  UpdateOrder update = UpdateOrder::Synchronous;

  /// Throws DomainError on A <= 0, B <= A, non-finite bounds, or a cyclic
  /// offset that is 0 mod (n + 1).
  void validate() const;

  /// Soft diagnostics, e.g. A or B beyond the tested 10^3 / 10^4 scale.
  [[nodiscard]] std::vector<std::string> warnings() const;
};

template <class Real>
class BasicRcfGenerator {
 public:
  static_assert(std::is_same_v<Real, double> || std::is_same_v<Real, long double>);

  using real_type = Real;
  using word_type = std::conditional_t<std::is_same_v<Real, double>, std::uint32_t, std::uint64_t>;
  using result_type = word_type;
  static constexpr int word_bits = std::numeric_limits<word_type>::digits;
  static constexpr std::size_t word_bytes = sizeof(word_type);

  /// Every coordinate drawn from the entropy named by cfg.entropy.
  static BasicRcfGenerator from_entropy(const GeneratorConfig& cfg);
  /// Every coordinate drawn from `source`, which is then kept for reseeds.
  static BasicRcfGenerator from_entropy(const GeneratorConfig& cfg,
                                        std::unique_ptr<EntropySource> source);
  /// Seed row taken verbatim; reseeds use cfg.entropy. Throws InvalidSeed
  /// on a length other than n + 1 or any entry outside (0, 1).
  static BasicRcfGenerator from_vector(const GeneratorConfig& cfg, std::span<const Real> seed);
  static BasicRcfGenerator from_vector(const GeneratorConfig& cfg, std::span<const Real> seed,
                                       std::unique_ptr<EntropySource> source);

  BasicRcfGenerator(BasicRcfGenerator&&) noexcept = default;
  BasicRcfGenerator& operator=(BasicRcfGenerator&&) noexcept = default;

  [[nodiscard]] std::size_t psi(std::size_t j) const noexcept {
    if (cfg_.psi.kind == PsiMode::Kind::CyclicShift) return (j + cfg_.psi.offset) % dim_;
    const auto idx = static_cast<std::size_t>(static_cast<Real>(dim_) * x_[j]);
    return idx < dim_ ? idx : dim_ - 1;
  }

  /// Advance every coordinate by one application of the coupled map.
  void step();

  /// floor(x[cursor] * 2^w), then advance the cursor; stepping after index n.
  word_type next_word() {
    if (cursor_ == dim_) {
      step();
      cursor_ = 0;
    }
    return scale(x_[cursor_++]);
  }

  word_type operator()() { return next_word(); }
  static constexpr word_type min() noexcept { return 0; }
  static constexpr word_type max() noexcept { return std::numeric_limits<word_type>::max(); }

  /// Consecutive words, little-endian. Throws BufferSizeError unless
  /// out.size() is a multiple of word_bytes.
  void fill_bytes(std::span<std::byte> out);

  [[nodiscard]] std::span<const Real> state() const noexcept { return x_; }
  [[nodiscard]] std::uint64_t t() const noexcept { return t_; }
  /// Index of the coordinate the next word reads.
  [[nodiscard]] std::size_t cursor() const noexcept { return cursor_ == dim_ ? 0 : cursor_; }
  [[nodiscard]] std::uint64_t reseed_count() const noexcept { return reseed_count_; }
  [[nodiscard]] const GeneratorConfig& config() const noexcept { return cfg_; }

 private:
  BasicRcfGenerator(const GeneratorConfig& cfg, std::vector<Real> x,
                    std::unique_ptr<EntropySource> source);

  static word_type scale(Real x) noexcept {
    constexpr Real two_w = static_cast<Real>(1ULL << (word_bits - 1)) * 2;
    return static_cast<word_type>(x * two_w);
  }

  Real image(Real x, Real r) const noexcept;

  GeneratorConfig cfg_;
  std::size_t dim_;
  Real span_;
  std::vector<Real> x_;
  std::vector<Real> next_;
  std::uint64_t t_ = 0;
  std::size_t cursor_ = 0;
  std::uint64_t reseed_count_ = 0;
  std::unique_ptr<EntropySource> entropy_;
};

/// 32-bit words from 53-bit state.
using RcfGenerator = BasicRcfGenerator<double>;
/// 64-bit words from extended-precision state.
using RcfGenerator64 = BasicRcfGenerator<long double>;

extern template class BasicRcfGenerator<double>;
extern template class BasicRcfGenerator<long double>;

}  // namespace rcf
