#include "commands.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rcf/bench.hpp"
#include "rcf/errors.hpp"
#include "rcf/lyapunov.hpp"

namespace rcf::cli {

bool FdSink::write(std::span<const std::byte> bytes) {
  if (closed_) return false;
  const auto* p = reinterpret_cast<const char*>(bytes.data());
  std::size_t left = bytes.size();
  while (left > 0) {
    const ssize_t n = ::write(fd_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      closed_ = true;
      if (errno == EPIPE) return false;
      throw Error(std::string("write failed: ") + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  return true;
}

bool StringSink::write(std::span<const std::byte> bytes) {
  if (limit_ && data_.size() + bytes.size() > *limit_) return false;
  data_.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  return true;
}

EntropyMode parse_seed(const std::string& text) {
  if (text == "os") return EntropyMode::os();
  std::string_view digits = text;
  if (digits.starts_with("0x") || digits.starts_with("0X")) digits.remove_prefix(2);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (digits.empty() || digits.size() > 16 || ec != std::errc{} ||
      end != digits.data() + digits.size()) {
    throw UsageError("--seed expects 'os' or a 64-bit hex value, got '" + text + "'");
  }
  return EntropyMode::deterministic(value);
}

PsiMode parse_psi(const std::string& text) {
  if (text == "self") return PsiMode::self_index();
  if (text.starts_with("cyclic:")) {
    std::string_view k = std::string_view(text).substr(7);
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(k.data(), k.data() + k.size(), value);
    if (!k.empty() && ec == std::errc{} && end == k.data() + k.size() && value >= 1) {
      return PsiMode::cyclic(value);
    }
  }
  throw UsageError("--psi expects 'self' or 'cyclic:k' with k >= 1, got '" + text + "'");
}

std::uint64_t parse_size(const std::string& text) {
  std::string_view s = text;
  std::uint64_t mult = 1;
  if (!s.empty()) {
    switch (s.back()) {
      case 'K': case 'k': mult = 1ULL << 10; break;
      case 'M': case 'm': mult = 1ULL << 20; break;
      case 'G': case 'g': mult = 1ULL << 30; break;
      case 'T': case 't': mult = 1ULL << 40; break;
      default: break;
    }
    if (mult != 1) s.remove_suffix(1);
  }
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
    throw UsageError("expected a byte count such as 1048576, 64M or 1G, got '" + text + "'");
  }
  return value * mult;
}

namespace {

constexpr std::size_t kFlushBytes = 1 << 16;

struct GeneratorFlags {
  std::size_t n = 1000;
  double A = 1000.0;
  double B = 10000.0;
  std::string psi = "self";
  std::string seed = "os";

  void add_to(CLI::App& app) {
    app.add_option("--n", n, "State dimension minus one (state has n+1 entries)")
        ->capture_default_str();
    app.add_option("--A", A, "Lower end of the r interval")->capture_default_str();
    app.add_option("--B", B, "Upper end of the r interval")->capture_default_str();
    app.add_option("--psi", psi, "Coupling map: self | cyclic:k")->capture_default_str();
    app.add_option("--seed", seed, "os | 64-bit hex seed")->capture_default_str();
  }

  GeneratorConfig config(WordSize w) const {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.A = A;
    cfg.B = B;
    cfg.psi = parse_psi(psi);
    cfg.word_size = w;
    cfg.entropy = parse_seed(seed);
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

void print_warnings(const GeneratorConfig& cfg, std::ostream& err) {
  for (const auto& w : cfg.warnings()) err << "warning: " << w << '\n';
}

// ---- generate --------------------------------------------------------------

struct GenerateFlags {
  GeneratorFlags gen;
  int words = 32;
  std::optional<std::uint64_t> count;
  bool infinite = false;
  std::string format = "raw";
};

template <class Gen>
int emit_words(Gen& g, const GenerateFlags& f, std::size_t dim, OutputSink& out) {
  using word_type = typename Gen::word_type;
  const bool forever = f.infinite;
  const std::uint64_t total = f.count.value_or(0);

  if (f.format == "raw") {
    constexpr std::size_t kWordsPerChunk = kFlushBytes / sizeof(word_type);
    std::vector<std::byte> buf(kWordsPerChunk * sizeof(word_type));
    std::uint64_t done = 0;
    while (forever || done < total) {
      const std::uint64_t words =
          forever ? kWordsPerChunk : std::min<std::uint64_t>(kWordsPerChunk, total - done);
      const std::span<std::byte> chunk(buf.data(), static_cast<std::size_t>(words) * sizeof(word_type));
      g.fill_bytes(chunk);
      if (!out.write(chunk)) return kOk;
      done += words;
    }
    return kOk;
  }

  const bool csv = f.format == "csv";
  std::string buf;
  buf.reserve(kFlushBytes + 64);
  if (csv) buf += "t,j,word\n";
  std::uint64_t t = 0;
  std::size_t j = 0;
  char num[32];
  for (std::uint64_t done = 0; forever || done < total; ++done) {
    const word_type w = g.next_word();
    if (csv) {
      buf.append(num, std::to_chars(num, num + sizeof num, t).ptr);
      buf += ',';
      buf.append(num, std::to_chars(num, num + sizeof num, j).ptr);
      buf += ',';
    }
    buf.append(num, std::to_chars(num, num + sizeof num, w).ptr);
    buf += '\n';
    if (++j == dim) {
      j = 0;
      ++t;
    }
    if (buf.size() >= kFlushBytes) {
      if (!out.write(buf)) return kOk;
      buf.clear();
    }
  }
  if (!buf.empty()) out.write(buf);
  return kOk;
}

int do_generate(const GenerateFlags& f, OutputSink& out, std::ostream& err) {
  if (f.count.has_value() == f.infinite) {
    throw UsageError("generate: give exactly one of --count N or --infinite");
  }
  const auto cfg = f.gen.config(f.words == 64 ? WordSize::Bits64 : WordSize::Bits32);
  print_warnings(cfg, err);
  if (f.words == 64) {
    auto g = RcfGenerator64::from_entropy(cfg);
    return emit_words(g, f, cfg.n + 1, out);
  }
  auto g = RcfGenerator::from_entropy(cfg);
  return emit_words(g, f, cfg.n + 1, out);
}

// ---- lyapunov --------------------------------------------------------------

struct LyapunovFlags {
  double r_min = 0.0;
  double r_max = 0.0;
  double alpha = 1.0;
  std::size_t samples = 10000;
  std::uint64_t orbit_len = 100000;
  std::uint64_t burn_in = 0;
  std::string seed = "os";
};

int do_lyapunov(const LyapunovFlags& f, OutputSink& out, std::ostream&) {
  if (!(f.r_min >= 1.0)) throw UsageError("lyapunov: --r-min must be >= 1");
  if (!(f.r_min < f.r_max)) throw UsageError("lyapunov: --r-min must be < --r-max");
  if (!(f.alpha > 0.0)) throw UsageError("lyapunov: --alpha must be > 0");
  if (f.samples < 1 || f.orbit_len < 1) {
    throw UsageError("lyapunov: --samples and --orbit-len must be >= 1");
  }
  auto entropy = make_entropy(parse_seed(f.seed));
  LyapunovOptions opts;
  opts.burn_in = f.burn_in;
  const auto records = sweep(f.r_min, f.r_max, f.alpha, f.samples, f.orbit_len, *entropy, opts);
  std::ostringstream os;
  write_sweep_csv(os, records);
  out.write(os.str());
  return kOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeFlags {
  GeneratorFlags gen;
  std::size_t count = 50000;
  std::vector<double> bin_widths{0.1, 0.01};
  std::size_t max_lag = 50;
  std::uint64_t burn_in = 100;
  std::size_t ppcc_sims = 1000;
  std::size_t grid = 10;
  std::string out_dir;
};

int do_analyze(const AnalyzeFlags& f, OutputSink& out, std::ostream& err) {
  if (f.count < 100) throw UsageError("analyze: --count must be >= 100");
  if (f.max_lag >= f.count) throw UsageError("analyze: --max-lag must be < --count");
  if (f.ppcc_sims < 1000) throw UsageError("analyze: --ppcc-sims must be >= 1000");
  for (double w : f.bin_widths) {
    if (!(w > 0.0 && w <= 1.0)) throw UsageError("analyze: --bin-width must lie in (0, 1]");
  }
  const auto cfg = f.gen.config(WordSize::Bits32);
  print_warnings(cfg, err);
  auto g = RcfGenerator::from_entropy(cfg);
  for (std::uint64_t i = 0; i < f.burn_in * (cfg.n + 1); ++i) g.next_word();

  std::vector<double> sample(f.count);
  for (auto& v : sample) v = static_cast<double>(g.next_word()) * 0x1.0p-32;

  std::vector<std::pair<std::string, std::string>> sections;
  std::vector<TestReport> reports;
  reports.push_back(ks_uniform(sample));
  for (double w : f.bin_widths) {
    std::ostringstream os;
    write_histogram_csv(os, histogram(sample, w));
    std::ostringstream name;
    name << "histogram_" << w;
    sections.emplace_back(name.str(), os.str());
    if (static_cast<double>(sample.size()) * w >= 5.0 && bin_count(w) >= 2) {
      auto rep = chi_square_uniform(sample, w);
      rep.method += "_w" + name.str().substr(10);
      reports.push_back(std::move(rep));
    }
  }
  const auto pairs = scatter_pairs(sample);
  {
    std::ostringstream os;
    write_pairs_csv(os, pairs);
    sections.emplace_back("scatter", os.str());
  }
  {
    std::ostringstream os;
    write_autocorrelation_csv(os, autocorrelation(sample, f.max_lag));
    sections.emplace_back("autocorrelation", os.str());
  }
  if (pairs.size() >= 5 * f.grid * f.grid) reports.push_back(chi_square_grid(pairs, f.grid));

  std::unique_ptr<EntropySource> sims;
  if (cfg.entropy.kind == EntropyMode::Kind::DeterministicAux) {
    sims = std::make_unique<SplitMix64>(SplitMix64(cfg.entropy.seed).fork(1));
  } else {
    sims = make_entropy(cfg.entropy);
  }
  reports.push_back(ppcc_uniform(sample, std::nullopt, f.ppcc_sims, *sims));
  {
    std::ostringstream os;
    write_reports_csv(os, reports);
    sections.emplace_back("reports", os.str());
  }

  if (!f.out_dir.empty()) {
    const std::filesystem::path dir(f.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& [name, body] : sections) {
      std::ofstream file(dir / (name + ".csv"));
      if (!file) throw Error("analyze: cannot write " + (dir / (name + ".csv")).string());
      file << body;
    }
    std::ostringstream os;
    write_reports_text(os, reports);
    out.write(os.str());
    return kOk;
  }
  for (const auto& [name, body] : sections) {
    if (!out.write("# " + name + "\n") || !out.write(body)) return kOk;
  }
  return kOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchFlags {
  std::uint64_t iterations = 200'000'000;
  std::size_t repetitions = 50;
  std::string format = "text";
  std::string seed = "os";
};

int do_bench(const BenchFlags& f, OutputSink& out, std::ostream& err) {
  try {
    validate_measure_args(f.iterations, f.repetitions);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  GeneratorConfig cfg;
  cfg.entropy = parse_seed(f.seed);
  auto rcf_gen = RcfGenerator::from_entropy(cfg);
  Mt19937 mt;

  std::vector<BenchReport> reports;
  reports.push_back(measure("r-CF", rcf_gen, f.iterations, f.repetitions));
  reports.push_back(measure("Mersenne Twister", mt, f.iterations, f.repetitions));

  for (const auto& r : reports) {
    for (const auto& w : r.warnings) err << "warning: " << r.generator_name << ": " << w << '\n';
    if (r.repetitions > 1 && r.sd_ns / r.mean_ns > 0.05) {
      err << "warning: " << r.generator_name
          << ": coefficient of variation above 5%; the machine may not be idle\n";
    }
  }

  std::ostringstream os;
  if (f.format == "csv") {
    write_bench_csv(os, reports);
  } else {
    write_bench_table(os, reports);
    os << "throughput ratio (Mersenne Twister / r-CF): " << reports[0].mean_ns / reports[1].mean_ns
       << '\n';
    os << "checksums: " << reports[0].checksum << ' ' << reports[1].checksum << '\n';
  }
  out.write(os.str());
  return kOk;
}

// ---- seed-experiment -------------------------------------------------------

struct SeedExperimentFlags {
  SeedExperimentOptions opts;
  std::optional<int> k;
  std::string tlmin = "0";
  std::string seed = "5eed";
  std::string update = "sync";
};

int do_seed_experiment(const SeedExperimentFlags& f, OutputSink& out, std::ostream&) {
  SeedExperimentOptions opts = f.opts;
  if (!opts.constant) {
    if (!f.k) throw UsageError("seed-experiment: give --k or --constant");
    if (*f.k < 1) throw UsageError("seed-experiment: --k must be >= 1");
    opts.k = *f.k;
  }
  if (opts.max_blocks < 1) throw UsageError("seed-experiment: --count must be >= 1");
  opts.tlmin_bytes = parse_size(f.tlmin);
  const auto mode = parse_seed(f.seed);
  if (mode.kind != EntropyMode::Kind::DeterministicAux) {
    throw UsageError("seed-experiment: --seed must be a hex value");
  }
  opts.seed = mode.seed;
  if (f.update == "sync") {
    opts.update = UpdateOrder::Synchronous;
  } else if (f.update == "seq") {
    opts.update = UpdateOrder::Sequential;
  } else {
    throw UsageError("seed-experiment: --update expects sync or seq");
  }

  const auto result = run_seed_experiment(opts);
  std::ostringstream os;
  os.precision(10);
  os << "block,offset_bytes,chi_square,p_value,pass\n";
  for (const auto& b : result.blocks) {
    os << b.index << ',' << b.index * opts.block_bytes << ',' << b.report.statistic << ','
       << b.report.p_value << ',' << (b.pass ? 1 : 0) << '\n';
  }
  auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  os << "# x0=" << result.x0 << " k=" << (opts.constant ? std::string("const") : std::to_string(opts.k))
     << " blocks_examined=" << result.blocks.size() << " first_failure=" << opt(result.first_failure)
     << " recovery_block=" << opt(result.recovery_block) << " reseeds=" << result.reseeds << '\n';
  out.write(os.str());
  return kOk;
}

}  // namespace

SeedExperimentResult run_seed_experiment(const SeedExperimentOptions& opts) {
  if (opts.block_bytes % 4 != 0 || opts.block_bytes < 1280) {
    throw DomainError("seed experiment: block size must be a multiple of 4 and >= 1280");
  }
  GeneratorConfig cfg;
  cfg.n = opts.n;
  cfg.A = opts.A;
  cfg.B = opts.B;
  cfg.update = opts.update;
  cfg.entropy = EntropyMode::deterministic(SplitMix64(opts.seed).fork(1).next_u64());

  SplitMix64 draws(opts.seed);
  SeedExperimentResult result;
  const double width = opts.constant ? 0.0 : std::pow(10.0, -opts.k);
  // x0 is kept away from the ends so every x0 + eps lies in (0, 1).
  result.x0 = draws.uniform(0.25, 0.75);
  std::vector<double> seed(cfg.n + 1);
  for (auto& v : seed) v = opts.constant ? result.x0 : result.x0 + draws.uniform(-width, width);

  auto g = RcfGenerator::from_vector(cfg, seed);
  if (!opts.include_seed_row) {
    for (std::size_t j = 0; j <= cfg.n; ++j) g.next_word();
  }

  std::vector<std::uint8_t> block(opts.block_bytes);
  for (std::size_t b = 0; b < opts.max_blocks; ++b) {
    g.fill_bytes(std::as_writable_bytes(std::span(block)));
    BlockResult br{b, chi_square_bytes(block), false};
    br.pass = br.report.p_value >= opts.alpha;
    result.blocks.push_back(br);
    if (!br.pass) {
      if (!result.first_failure) result.first_failure = b;
      result.recovery_block.reset();
      if ((b + 1) * opts.block_bytes >= opts.tlmin_bytes) break;
    } else if (!result.recovery_block) {
      result.recovery_block = b;
    }
  }
  result.reseeds = g.reseed_count();
  return result;
}

int run(const std::vector<std::string>& args, OutputSink& out, std::ostream& err) {
  CLI::App app{"r-continued-fraction pseudorandom generator toolkit", "rcf"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Emit generator words on standard output");
  gen.gen.add_to(*generate);
  generate->add_option("--words", gen.words, "Word size")
      ->check(CLI::IsMember({32, 64}))
      ->capture_default_str();
  auto* count_opt = generate->add_option("--count", gen.count, "Number of words to emit");
  auto* inf_opt = generate->add_flag("--infinite", gen.infinite, "Emit until the reader closes");
  count_opt->excludes(inf_opt);
  generate->add_option("--format", gen.format, "raw | text | csv")
      ->check(CLI::IsMember({"raw", "text", "csv"}))
      ->capture_default_str();

  LyapunovFlags lya;
  auto* lyapunov = app.add_subcommand("lyapunov", "Sweep Lyapunov exponent estimates over r");
  lyapunov->add_option("--r-min", lya.r_min, "Lower end of the r range")->required();
  lyapunov->add_option("--r-max", lya.r_max, "Upper end of the r range")->required();
  lyapunov->add_option("--alpha", lya.alpha, "Exponent of T_{r,alpha}")->capture_default_str();
  lyapunov->add_option("--samples", lya.samples, "Number of r values")->capture_default_str();
  lyapunov->add_option("--orbit-len", lya.orbit_len, "Orbit length N")->capture_default_str();
  lyapunov->add_option("--burn-in", lya.burn_in, "Iterations discarded per orbit")
      ->capture_default_str();
  lyapunov->add_option("--seed", lya.seed, "os | 64-bit hex seed")->capture_default_str();

  AnalyzeFlags ana;
  auto* analyze = app.add_subcommand("analyze", "Histogram, scatter, autocorrelation and tests");
  ana.gen.add_to(*analyze);
  analyze->add_option("--count", ana.count, "Number of outputs analyzed")->capture_default_str();
  analyze->add_option("--bin-width", ana.bin_widths, "Histogram bin width(s)")
      ->capture_default_str();
  analyze->add_option("--max-lag", ana.max_lag, "Largest autocorrelation lag")
      ->capture_default_str();
  analyze->add_option("--burn-in", ana.burn_in, "Sweeps of n+1 words discarded first")
      ->capture_default_str();
  analyze->add_option("--ppcc-sims", ana.ppcc_sims, "Simulated samples for the PPCC p-value")
      ->capture_default_str();
  analyze->add_option("--out-dir", ana.out_dir, "Write one CSV per section into this directory");

  BenchFlags ben;
  auto* bench = app.add_subcommand("bench", "Throughput of r-CF against MT19937");
  bench->add_option("--iterations", ben.iterations, "Words per timed pass")->capture_default_str();
  bench->add_option("--repetitions", ben.repetitions, "Timed passes")->capture_default_str();
  bench->add_option("--format", ben.format, "text | csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  bench->add_option("--seed", ben.seed, "os | 64-bit hex seed")->capture_default_str();

  SeedExperimentFlags sx;
  auto* seedx = app.add_subcommand("seed-experiment", "Recovery from near-constant seed vectors");
  seedx->add_option("--k", sx.k, "Perturbation half-width 10^-k");
  seedx->add_flag("--constant", sx.opts.constant, "Use the exactly constant seed (eps = 0)");
  seedx->add_option("--n", sx.opts.n, "State dimension minus one")->capture_default_str();
  seedx->add_option("--count", sx.opts.max_blocks, "Maximum 1 MiB blocks examined")
      ->capture_default_str();
  seedx->add_option("--tlmin-equivalent", sx.tlmin,
                    "Bytes examined regardless of failures, e.g. 1G (0: stop at first failure)")
      ->capture_default_str();
  seedx->add_option("--alpha", sx.opts.alpha, "Per-block significance level")
      ->capture_default_str();
  seedx->add_option("--seed", sx.seed, "64-bit hex seed for x0, eps and reseeds")
      ->capture_default_str();
  seedx->add_option("--update", sx.update, "sync | seq coordinate update order")
      ->capture_default_str();
  seedx->add_flag("--include-seed-row", sx.opts.include_seed_row,
                  "Also test the n+1 seed words themselves");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::ostringstream os;
    os << app.help();
    out.write(os.str());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    std::ostringstream os;
    os << app.help("", CLI::AppFormatMode::All);
    out.write(os.str());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rcf: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kUsageError;
  }

  try {
    if (*generate) return do_generate(gen, out, err);
    if (*lyapunov) return do_lyapunov(lya, out, err);
    if (*analyze) return do_analyze(ana, out, err);
    if (*bench) return do_bench(ben, out, err);
    if (*seedx) return do_seed_experiment(sx, out, err);
  } catch (const UsageError& e) {
    err << "rcf: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "rcf: error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace rcf::cli
