#include "mpclu/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mpclu/expansion_io.hpp"

namespace mpclu {

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::kDD:
      return "dd";
    case Precision::kTD:
      return "td";
    case Precision::kQD:
      return "qd";
  }
  return "?";
}

std::string_view to_string(Algorithm a) { return a == Algorithm::kNormal ? "normal" : "blocked"; }

Precision parse_precision(std::string_view s) {
  if (s == "dd") return Precision::kDD;
  if (s == "td") return Precision::kTD;
  if (s == "qd") return Precision::kQD;
  throw ConfigError("unknown precision '" + std::string(s) + "' (expected dd, td or qd)");
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "normal") return Algorithm::kNormal;
  if (s == "blocked") return Algorithm::kBlocked;
  throw ConfigError("unknown algorithm '" + std::string(s) + "' (expected normal or blocked)");
}

int components(Precision p) { return p == Precision::kDD ? 2 : p == Precision::kTD ? 3 : 4; }

int default_splits(Precision p) { return p == Precision::kDD ? 6 : p == Precision::kTD ? 8 : 12; }

// ---------------------------------------------------------------------------
// Random numbers

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t index) const {
  return mix(mix(seed_ ^ mix(stream)) + index);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index) const {
  return static_cast<double>(bits(stream, index) >> 11) * 0x1p-53;
}

template <int K>
ComplexMatrix<K> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, std::uint64_t tag) {
  const CounterRng rng(seed);
  ComplexMatrix<K> m(rows, cols);
  for (int plane = 0; plane < 2; ++plane) {
    RealMatrix<K>& dst = plane == 0 ? m.re : m.im;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        // Stream per entry: (tag, plane, row, column).
        const std::uint64_t stream = ((tag * 2 + plane) * 0x100000000ULL + i) * 0x100000000ULL + j;
        std::array<double, K> t;
        double scale = 1.0;
        for (int c = 0; c < K; ++c) {
          t[c] = rng.uniform(stream, c) * scale;
          scale *= 0x1p-53;
        }
        dst.set(i, j, renormalize<K>(t));
      }
    }
  }
  return m;
}

template <int K>
ComplexVector<K> true_solution(std::size_t n) {
  ComplexVector<K> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = static_cast<double>(k + 1);
    x.set(k, Complex<K>(v, v));
  }
  return x;
}

template <int K>
ComplexVector<K> reference_rhs(const ComplexMatrix<K>& a, const ComplexVector<K>& x) {
  if (a.cols() != x.size()) throw DimensionError("reference product shape mismatch");
  const ComplexMatrix<8> wide = convert<8>(a);
  const ComplexVector<8> xw = convert<8>(x);
  ComplexVector<K> b(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex<8> s;
    for (std::size_t j = 0; j < a.cols(); ++j) s = s + cmul_4m(wide(i, j), xw(j));
    b.set(i, {renormalize<K>(s.re.c), renormalize<K>(s.im.c)});
  }
  return b;
}

template <int K>
Problem<K> gen_problem(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("problem size must be >= 1");
  Problem<K> p;
  p.a = random_matrix<K>(n, n, seed);
  p.x = true_solution<K>(n);
  p.b = reference_rhs(p.a, p.x);
  return p;
}

// ---------------------------------------------------------------------------
// Configuration

int BenchConfig::effective_splits() const {
  if (kernel != RealKernel::kOzaki) return 0;
  return splits > 0 ? splits : default_splits(precision);
}

std::vector<std::size_t> BenchConfig::sweep() const {
  if (algorithm == Algorithm::kNormal) return {0};
  if (!ks.empty()) return ks;
  std::vector<std::size_t> out;
  for (std::size_t k = 32; k <= n; k += 32) out.push_back(k);
  if (out.empty()) out.push_back(n);
  return out;
}

void BenchConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (reps < 1) throw ConfigError("repetitions must be >= 1");
  if (threads.empty()) throw ConfigError("thread list is empty");
  for (int t : threads)
    if (t < 1) throw ConfigError("thread counts must be >= 1");
  if (algorithm == Algorithm::kBlocked)
    for (std::size_t k : sweep())
      if (k < 1 || k > n) throw ConfigError("K values must lie in [1, n]");
  if (block < 1) throw ConfigError("block size must be >= 1");
  if (kernel == RealKernel::kStrassen && threshold < 2) throw ConfigError("Strassen threshold must be >= 2");
  if (kernel == RealKernel::kOzaki) {
    if (splits < 0) throw ConfigError("split count must be >= 1");
    try {
      split_budget(n);
    } catch (const SplitBudgetError& e) {
      throw ConfigError(e.what());
    }
  }
}

std::vector<std::size_t> parse_k_sweep(std::string_view s) {
  auto number = [&](std::string_view part) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
      throw ConfigError("malformed K sweep '" + std::string(s) + "'");
    return v;
  };
  const auto first = s.find(':');
  if (first == std::string_view::npos) return {number(s)};
  const auto second = s.find(':', first + 1);
  if (second == std::string_view::npos) throw ConfigError("K sweep must be LO:HI:STEP");
  const std::size_t lo = number(s.substr(0, first));
  const std::size_t hi = number(s.substr(first + 1, second - first - 1));
  const std::size_t step = number(s.substr(second + 1));
  if (step == 0 || lo == 0 || lo > hi) throw ConfigError("K sweep needs 1 <= LO <= HI and STEP >= 1");
  std::vector<std::size_t> out;
  for (std::size_t k = lo; k <= hi; k += step) out.push_back(k);
  return out;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    std::string_view part = s.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
      throw ConfigError("malformed integer list '" + std::string(s) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <int K>
std::string error_string(const Expansion<K>& e) {
  return to_string(e, 17);
}

BenchRecord base_record(const BenchConfig& cfg, std::string algorithm) {
  BenchRecord r;
  r.precision = std::string(to_string(cfg.precision));
  r.algorithm = std::move(algorithm);
  r.method = std::string(to_string(cfg.method));
  r.kernel = std::string(to_string(cfg.kernel));
  r.n = cfg.n;
  r.splits = cfg.effective_splits();
  r.seed = cfg.seed;
  return r;
}

KernelChoice kernel_choice(const BenchConfig& cfg, int threads) {
  KernelChoice kc;
  kc.method = cfg.method;
  kc.kernel = cfg.kernel;
  kc.block = cfg.block;
  kc.threshold = cfg.threshold;
  kc.splits = cfg.effective_splits();
  kc.threads = threads;
  return kc;
}

template <int K>
std::vector<BenchRecord> run_lu(const BenchConfig& cfg) {
  const Problem<K> p = gen_problem<K>(cfg.n, cfg.seed);
  std::vector<BenchRecord> out;
  for (std::size_t k : cfg.sweep()) {
    for (int t : cfg.threads) {
      BenchRecord rec = base_record(cfg, std::string(to_string(cfg.algorithm)));
      rec.K = k;
      rec.threads = t;
      const KernelChoice kc = kernel_choice(cfg, t);
      std::vector<double> times;
      try {
        LUFactors<K> f;
        ComplexVector<K> xhat;
        for (int r = 0; r < cfg.reps; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          f = cfg.algorithm == Algorithm::kNormal ? lu_normal(p.a, t, cfg.method) : lu_blocked(p.a, k, kc);
          xhat = solve(f, p.b, cfg.method);
          const auto t1 = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        rec.seconds = median(times);
        rec.max_relerr = error_string(max_rel_err(xhat, p.x));
        rec.status = "ok";
        if (cfg.verify && !(lu_residual(p.a, f, t) <= 64.0 * eps<K>())) rec.status = "verify_failed";
      } catch (const SingularError&) {
        rec.seconds = times.empty() ? 0.0 : median(times);
        rec.max_relerr = "nan";
        rec.status = "singular";
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

template <int K>
std::vector<BenchRecord> run_matmul(const BenchConfig& cfg) {
  const ComplexMatrix<K> a = random_matrix<K>(cfg.n, cfg.n, cfg.seed, 1);
  const ComplexMatrix<K> b = random_matrix<K>(cfg.n, cfg.n, cfg.seed, 2);
  std::vector<BenchRecord> out;
  for (int t : cfg.threads) {
    BenchRecord rec = base_record(cfg, "matmul");
    rec.threads = t;
    const KernelChoice kc = kernel_choice(cfg, t);
    std::vector<double> times;
    ComplexMatrix<K> c;
    for (int r = 0; r < cfg.reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      c = cgemm(a, b, kc);
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    rec.seconds = median(times);
    rec.max_relerr = "nan";
    if (cfg.verify) {
      KernelChoice ref;
      ref.method = Method::k4M;
      ref.kernel = RealKernel::kNaive;
      ref.threads = t;
      const ComplexMatrix<8> exact = cgemm(convert<8>(a), convert<8>(b), ref);
      Expansion<K> worst;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        for (std::size_t j = 0; j < cfg.n; ++j) {
          const Complex<8> e = exact(i, j);
          const Complex<8> d = convert<8>(c(i, j)) - e;
          const Expansion<8> ratio = norm(d) / norm(e);
          const Expansion<K> r = convert<K>(ratio);
          if (compare(r, worst) > 0) worst = r;
        }
      }
      rec.max_relerr = error_string(sqrt(worst));
    }
    rec.status = "ok";
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  cfg.validate();
  switch (cfg.precision) {
    case Precision::kDD:
      return run_lu<2>(cfg);
    case Precision::kTD:
      return run_lu<3>(cfg);
    case Precision::kQD:
      return run_lu<4>(cfg);
  }
  return {};
}

std::vector<BenchRecord> run_matmul_bench(const BenchConfig& cfg) {
  cfg.validate();
  switch (cfg.precision) {
    case Precision::kDD:
      return run_matmul<2>(cfg);
    case Precision::kTD:
      return run_matmul<3>(cfg);
    case Precision::kQD:
      return run_matmul<4>(cfg);
  }
  return {};
}

// ---------------------------------------------------------------------------
// CSV

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  char seconds[64];
  for (const BenchRecord& r : records) {
    std::snprintf(seconds, sizeof seconds, "%.17g", r.seconds);
    out << r.precision << ',' << r.algorithm << ',' << r.method << ',' << r.kernel << ',' << r.n << ',' << r.K << ','
        << r.splits << ',' << r.threads << ',' << seconds << ',' << r.max_relerr << ',' << r.seed << ',' << r.status
        << '\n';
  }
}

void emit_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_csv(records, out);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

namespace {

template <typename T>
T parse_field(const std::string& s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw ParseError("bad CSV field '" + s + "'");
  return v;
}

}  // namespace

std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("missing or unexpected CSV header");
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 12) throw ParseError("CSV row must have 12 fields: '" + line + "'");
    BenchRecord r;
    r.precision = f[0];
    r.algorithm = f[1];
    r.method = f[2];
    r.kernel = f[3];
    r.n = parse_field<std::size_t>(f[4]);
    r.K = parse_field<std::size_t>(f[5]);
    r.splits = parse_field<int>(f[6]);
    r.threads = parse_field<int>(f[7]);
    r.seconds = parse_field<double>(f[8]);
    r.max_relerr = f[9];
    r.seed = parse_field<std::uint64_t>(f[10]);
    r.status = f[11];
    out.push_back(std::move(r));
  }
  return out;
}

#define MPCLU_INSTANTIATE_BENCH(K)                                                                    \
  template ComplexMatrix<K> random_matrix<K>(std::size_t, std::size_t, std::uint64_t, std::uint64_t); \
  template ComplexVector<K> true_solution<K>(std::size_t);                                            \
  template ComplexVector<K> reference_rhs<K>(const ComplexMatrix<K>&, const ComplexVector<K>&);       \
  template Problem<K> gen_problem<K>(std::size_t, std::uint64_t);

MPCLU_INSTANTIATE_BENCH(2)
MPCLU_INSTANTIATE_BENCH(3)
MPCLU_INSTANTIATE_BENCH(4)
MPCLU_INSTANTIATE_BENCH(8)

}  // namespace mpclu
