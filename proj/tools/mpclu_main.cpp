#include <CLI11.hpp>

#include <iostream>

#include "mpclu/bench.hpp"
#include "mpclu/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSingular = 2;
constexpr int kExitVerify = 3;

struct BenchArgs {
  std::string prec = "dd";
  std::string algo = "normal";
  std::string method = "3m";
  std::string kernel = "blocked";
  std::size_t n = 256;
  std::string k_sweep;
  int splits = 0;
  std::string threads = "1";
  std::uint64_t seed = 1;
  int reps = 3;
  std::size_t block = mpclu::kDefaultBlock;
  std::size_t threshold = mpclu::kDefaultStrassenThreshold;
  bool verify = false;
  bool strict = false;
  std::string csv;
};

void add_kernel_options(CLI::App* cmd, BenchArgs& a) {
  cmd->add_option("--prec", a.prec, "dd, td or qd")->capture_default_str();
  cmd->add_option("--method", a.method, "3m or 4m")->capture_default_str();
  cmd->add_option("--kernel", a.kernel, "naive, blocked, strassen or ozaki")->capture_default_str();
  cmd->add_option("--n", a.n, "matrix order")->capture_default_str();
  cmd->add_option("--splits", a.splits, "Ozaki split count (0: 6/8/12 by precision)")->capture_default_str();
  cmd->add_option("--threads", a.threads, "comma separated thread counts")->capture_default_str();
  cmd->add_option("--seed", a.seed, "generator seed")->capture_default_str();
  cmd->add_option("--reps", a.reps, "repetitions per case (median reported)")->capture_default_str();
  cmd->add_option("--block", a.block, "cache block of the blocked kernel")->capture_default_str();
  cmd->add_option("--threshold", a.threshold, "Strassen cutoff")->capture_default_str();
  cmd->add_flag("--verify", a.verify, "check results against the reference");
  cmd->add_option("--csv", a.csv, "output path (default stdout)");
}

mpclu::BenchConfig to_config(const BenchArgs& a) {
  mpclu::BenchConfig cfg;
  cfg.precision = mpclu::parse_precision(a.prec);
  cfg.algorithm = mpclu::parse_algorithm(a.algo);
  cfg.method = mpclu::parse_method(a.method);
  cfg.kernel = mpclu::parse_kernel(a.kernel);
  cfg.n = a.n;
  if (!a.k_sweep.empty()) cfg.ks = mpclu::parse_k_sweep(a.k_sweep);
  cfg.splits = a.splits;
  cfg.threads = mpclu::parse_int_list(a.threads);
  cfg.seed = a.seed;
  cfg.reps = a.reps;
  cfg.block = a.block;
  cfg.threshold = a.threshold;
  cfg.verify = a.verify;
  cfg.validate();
  return cfg;
}

void emit(const std::vector<mpclu::BenchRecord>& records, const std::string& path) {
  if (path.empty())
    mpclu::write_csv(records, std::cout);
  else
    mpclu::emit_csv(records, path);
}

int bench_exit_code(const std::vector<mpclu::BenchRecord>& records, bool strict) {
  int code = kExitOk;
  for (const auto& r : records) {
    if (r.status == "verify_failed") code = kExitVerify;
    if (r.status == "singular" && strict && code == kExitOk) code = kExitSingular;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-precision complex LU benchmarks"};
  app.require_subcommand(1);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time LU solves of random systems");
  add_kernel_options(bench, bench_args);
  bench->add_option("--algo", bench_args.algo, "normal or blocked")->capture_default_str();
  bench->add_option("--k-sweep", bench_args.k_sweep, "block sizes LO:HI:STEP (default 32:n:32)");
  bench->add_flag("--strict", bench_args.strict, "exit 2 when any system is singular");

  BenchArgs mm_args;
  auto* matmul = app.add_subcommand("matmul-bench", "time complex matrix products");
  add_kernel_options(matmul, mm_args);

  std::string suite;
  unsigned verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "run invariant self-checks");
  verify->add_option("--suite", suite, "eft, scalar, matmul or lu")
      ->required()
      ->check(CLI::IsMember({"eft", "scalar", "matmul", "lu"}));
  verify->add_option("--seed", verify_seed, "generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*bench) {
      const auto records = mpclu::run_bench(to_config(bench_args));
      emit(records, bench_args.csv);
      return bench_exit_code(records, bench_args.strict);
    }
    if (*matmul) {
      const auto records = mpclu::run_matmul_bench(to_config(mm_args));
      emit(records, mm_args.csv);
      return kExitOk;
    }
    const bool ok = mpclu::report(mpclu::run_verify_suite(suite, verify_seed), std::cout);
    return ok ? kExitOk : kExitVerify;
  } catch (const mpclu::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
