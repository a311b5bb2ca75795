#include "rcf/entropy.hpp"

#include <exception>
#include <string>

#include "rcf/errors.hpp"

namespace rcf {

double EntropySource::uniform_open01() {
  constexpr double kScale = 0x1.0p-53;
  for (;;) {
    const double u = static_cast<double>(next_u64() >> 11) * kScale;
    if (u > 0.0) return u;
  }
}

double EntropySource::uniform(double lo, double hi) {
  constexpr double kScale = 0x1.0p-53;
  const double u = static_cast<double>(next_u64() >> 11) * kScale;
  return lo + (hi - lo) * u;
}

std::uint64_t SplitMix64::next_u64() noexcept {
  std::uint64_t z = (counter_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::fork(std::uint64_t index) const noexcept {
  SplitMix64 mixer(counter_ ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return SplitMix64(mixer.next_u64());
}

OsEntropy::OsEntropy() try : device_() {
} catch (const std::exception& e) {
  throw EntropyFailure(std::string("OS entropy unavailable: ") + e.what());
}

std::uint64_t OsEntropy::next_u64() {
  try {
    const std::uint64_t hi = device_();
    const std::uint64_t lo = device_();
    return (hi << 32) ^ lo;
  } catch (const std::exception& e) {
    throw EntropyFailure(std::string("OS entropy read failed: ") + e.what());
  }
}

std::unique_ptr<EntropySource> make_entropy(const EntropyMode& mode) {
  if (mode.kind == EntropyMode::Kind::Os) return std::make_unique<OsEntropy>();
  return std::make_unique<SplitMix64>(mode.seed);
}

}  // namespace rcf
