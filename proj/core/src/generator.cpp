#include "rcf/generator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rcf/errors.hpp"

namespace rcf {

void GeneratorConfig::validate() const {
  if (!std::isfinite(A) || !std::isfinite(B) || !(A > 0.0)) {
    throw DomainError("GeneratorConfig: A must be a positive finite real");
  }
  if (!(B > A)) throw DomainError("GeneratorConfig: B must exceed A");
  if (psi.kind == PsiMode::Kind::CyclicShift && psi.offset % (n + 1) == 0) {
    throw DomainError("GeneratorConfig: cyclic offset must be nonzero mod n + 1");
  }
}

std::vector<std::string> GeneratorConfig::warnings() const {
  std::vector<std::string> out;
  if (A > 1000.0 || B > 10000.0) {
    out.emplace_back("A = " + std::to_string(A) + ", B = " + std::to_string(B) +
                     " exceed the tested range A = 1000, B = 10000; larger bounds raise the "
                     "reseed rate and have been observed to lower output quality");
  }
  return out;
}

template <class Real>
BasicRcfGenerator<Real>::BasicRcfGenerator(const GeneratorConfig& cfg, std::vector<Real> x,
                                           std::unique_ptr<EntropySource> source)
    : cfg_(cfg),
      dim_(cfg.n + 1),
      span_(static_cast<Real>(cfg.B) - static_cast<Real>(cfg.A)),
      x_(std::move(x)),
      next_(dim_),
      entropy_(std::move(source)) {}

namespace {

template <class Real>
void check_word_size(const GeneratorConfig& cfg) {
  constexpr auto expected = std::is_same_v<Real, double> ? WordSize::Bits32 : WordSize::Bits64;
  if (cfg.word_size != expected) {
    throw DomainError(std::is_same_v<Real, double>
                          ? "RcfGenerator emits 32-bit words; use RcfGenerator64 for 64"
                          : "RcfGenerator64 emits 64-bit words; use RcfGenerator for 32");
  }
}

}  // namespace

template <class Real>
BasicRcfGenerator<Real> BasicRcfGenerator<Real>::from_entropy(const GeneratorConfig& cfg) {
  return from_entropy(cfg, make_entropy(cfg.entropy));
}

template <class Real>
BasicRcfGenerator<Real> BasicRcfGenerator<Real>::from_entropy(
    const GeneratorConfig& cfg, std::unique_ptr<EntropySource> source) {
  cfg.validate();
  check_word_size<Real>(cfg);
  if (!source) throw EntropyFailure("from_entropy: no entropy source");
  std::vector<Real> x(cfg.n + 1);
  for (auto& v : x) v = static_cast<Real>(source->uniform_open01());
  return BasicRcfGenerator(cfg, std::move(x), std::move(source));
}

template <class Real>
BasicRcfGenerator<Real> BasicRcfGenerator<Real>::from_vector(const GeneratorConfig& cfg,
                                                             std::span<const Real> seed) {
  return from_vector(cfg, seed, make_entropy(cfg.entropy));
}

template <class Real>
BasicRcfGenerator<Real> BasicRcfGenerator<Real>::from_vector(
    const GeneratorConfig& cfg, std::span<const Real> seed,
    std::unique_ptr<EntropySource> source) {
  cfg.validate();
  check_word_size<Real>(cfg);
  if (seed.size() != cfg.n + 1) {
    throw InvalidSeed("seed vector has " + std::to_string(seed.size()) + " entries, expected " +
                      std::to_string(cfg.n + 1));
  }
  for (std::size_t j = 0; j < seed.size(); ++j) {
    if (!(seed[j] > 0 && seed[j] < 1)) {
      throw InvalidSeed("seed entry " + std::to_string(j) + " is outside (0, 1)");
    }
  }
  if (!source) throw EntropyFailure("from_vector: no entropy source");
  return BasicRcfGenerator(cfg, std::vector<Real>(seed.begin(), seed.end()), std::move(source));
}

template <class Real>
Real BasicRcfGenerator<Real>::image(Real x, Real r) const noexcept {
  if constexpr (std::is_same_v<Real, double>) {
    if (cfg_.precision == PrecisionMode::Extended) {
      const long double q = static_cast<long double>(r) / static_cast<long double>(x);
      return static_cast<double>(q - std::floor(q));
    }
    // q + rem / x == r / x to about 106 bits; q - floor(q) is exact.
    const double q = r / x;
    const double rem = std::fma(-q, x, r);
    double f = (q - std::floor(q)) + rem / x;
    if (f < 0.0) f += 1.0;
    return f;
  } else {
    const Real q = r / x;
    return q - std::floor(q);
  }
}

template <class Real>
void BasicRcfGenerator<Real>::step() {
  const Real a = static_cast<Real>(cfg_.A);
  const bool in_place = cfg_.update == UpdateOrder::Sequential;
  std::vector<Real>& dst = in_place ? x_ : next_;
  for (std::size_t j = 0; j < dim_; ++j) {
    const Real r = a + span_ * x_[psi(j)];
    const Real y = image(x_[j], r);
    if (y > 0 && y < 1) {
      dst[j] = y;
    } else {
      dst[j] = static_cast<Real>(entropy_->uniform_open01());
      ++reseed_count_;
    }
  }
  if (!in_place) x_.swap(next_);
  ++t_;
}

template <class Real>
void BasicRcfGenerator<Real>::fill_bytes(std::span<std::byte> out) {
  if (out.size() % word_bytes != 0) {
    throw BufferSizeError("fill_bytes: buffer length " + std::to_string(out.size()) +
                          " is not a multiple of " + std::to_string(word_bytes));
  }
  for (std::size_t i = 0; i < out.size(); i += word_bytes) {
    auto w = next_word();
    for (std::size_t b = 0; b < word_bytes; ++b) {
      out[i + b] = static_cast<std::byte>(w & 0xFFu);
      w >>= 8;
    }
  }
}

template class BasicRcfGenerator<double>;
template class BasicRcfGenerator<long double>;

}  // namespace rcf
