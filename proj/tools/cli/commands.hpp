#pragma once

// Subcommands of the `rcf` tool. Each command writes its payload to an
// OutputSink so the same code drives stdout pipes and in-memory test buffers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcf/generator.hpp"
#include "rcf/stats.hpp"

namespace rcf::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Thrown for flag values that parse but are not acceptable.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputSink {
 public:
  virtual ~OutputSink() = default;
  /// Returns false once the consumer has gone away; nothing further is written.
  virtual bool write(std::span<const std::byte> bytes) = 0;
  bool write(std::string_view text) { return write(std::as_bytes(std::span(text))); }
};

/// Blocking writes to a file descriptor; EPIPE ends the stream quietly.
class FdSink final : public OutputSink {
 public:
  explicit FdSink(int fd) : fd_(fd) {}
  bool write(std::span<const std::byte> bytes) override;
  using OutputSink::write;

 private:
  int fd_;
  bool closed_ = false;
};

/// Accumulates into a string. With a limit, the first write that would exceed
/// it is refused and reported as a closed consumer.
class StringSink final : public OutputSink {
 public:
  explicit StringSink(std::optional<std::size_t> limit = std::nullopt) : limit_(limit) {}
  bool write(std::span<const std::byte> bytes) override;
  using OutputSink::write;
  [[nodiscard]] const std::string& str() const noexcept { return data_; }

 private:
  std::string data_;
  std::optional<std::size_t> limit_;
};

/// "os" or a 64-bit hex value with optional 0x prefix.
EntropyMode parse_seed(const std::string& text);
/// "self" or "cyclic:k".
PsiMode parse_psi(const std::string& text);
/// Byte count with optional K, M, G, T suffix (powers of 1024).
std::uint64_t parse_size(const std::string& text);

struct SeedExperimentOptions {
  int k = 5;
  bool constant = false;
  std::size_t n = 1000;
  double A = 1000.0;
  double B = 10000.0;
  std::size_t max_blocks = 1024;
  std::size_t block_bytes = std::size_t{1} << 20;
  std::uint64_t tlmin_bytes = 0;
  double alpha = 1e-6;
  std::uint64_t seed = 0x5eed;
  UpdateOrder update = UpdateOrder::Synchronous;
  bool include_seed_row = false;
};

struct BlockResult {
  std::size_t index = 0;
  TestReport report;
  bool pass = false;
};

struct SeedExperimentResult {
  double x0 = 0.0;
  std::vector<BlockResult> blocks;
  std::optional<std::size_t> first_failure;
  /// First block from which every examined block passes.
  std::optional<std::size_t> recovery_block;
  std::uint64_t reseeds = 0;
};

/// Near-constant seed x0 + eps_j with eps_j uniform on [-10^-k, 10^-k]
/// (eps = 0 when opts.constant), then per-block byte chi-square. Examination
/// continues through tlmin_bytes regardless of failures and stops at the first
/// failing block after that, or at max_blocks.
SeedExperimentResult run_seed_experiment(const SeedExperimentOptions& opts);

/// Full command line (argv[0] included). Returns the process exit status.
int run(const std::vector<std::string>& args, OutputSink& out, std::ostream& err);

}  // namespace rcf::cli
