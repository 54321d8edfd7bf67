#pragma once

// Benchmark protocol: random systems with known solution, timed LU solves,
// CSV records.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpclu/complex_gemm.hpp"
#include "mpclu/lu.hpp"

namespace mpclu {

enum class Precision { kDD, kTD, kQD };
enum class Algorithm { kNormal, kBlocked };

std::string_view to_string(Precision p);
std::string_view to_string(Algorithm a);
Precision parse_precision(std::string_view s);
Algorithm parse_algorithm(std::string_view s);
int components(Precision p);
/// Default Ozaki split count: 6, 8, 12 for DD, TD, QD.
int default_splits(Precision p);

/// Counter-based generator: SplitMix64 finalizer applied to
/// (seed, stream, index). Every matrix entry draws from its own stream, so
/// values do not depend on generation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  static std::uint64_t mix(std::uint64_t z);
  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const;
  /// Uniform in [0, 1) on the 2^-53 grid.
  double uniform(std::uint64_t stream, std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

/// A x = b with x_k = k + k i (k from 1).
template <int K>
struct Problem {
  ComplexMatrix<K> a;
  ComplexVector<K> b;
  ComplexVector<K> x;
};

/// n x n matrix whose real and imaginary entries are uniform in [0, 1) to
/// the full K-component precision.
template <int K>
ComplexMatrix<K> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, std::uint64_t tag = 0);

template <int K>
ComplexVector<K> true_solution(std::size_t n);

/// b = A x with naive dot products in 8-component arithmetic, rounded to K.
template <int K>
ComplexVector<K> reference_rhs(const ComplexMatrix<K>& a, const ComplexVector<K>& x);

template <int K>
Problem<K> gen_problem(std::size_t n, std::uint64_t seed);

struct BenchConfig {
  Precision precision = Precision::kDD;
  Algorithm algorithm = Algorithm::kNormal;
  Method method = Method::k3M;
  RealKernel kernel = RealKernel::kBlocked;
  int splits = 0;  // 0 selects default_splits(precision)
  std::size_t n = 256;
  std::vector<std::size_t> ks;  // empty selects 32, 64, ..., n
  std::size_t block = kDefaultBlock;
  std::size_t threshold = kDefaultStrassenThreshold;
  std::uint64_t seed = 1;
  std::vector<int> threads{1};
  int reps = 3;
  bool verify = false;

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
  /// K values the run will sweep (a single 0 for the normal algorithm).
  std::vector<std::size_t> sweep() const;
  int effective_splits() const;
};

/// Parses "LO:HI:STEP" (or a single value) into K values.
std::vector<std::size_t> parse_k_sweep(std::string_view s);
/// Parses a comma separated list of thread counts.
std::vector<int> parse_int_list(std::string_view s);

struct BenchRecord {
  std::string precision;
  std::string algorithm;
  std::string method;
  std::string kernel;
  std::size_t n = 0;
  std::size_t K = 0;
  int splits = 0;
  int threads = 1;
  double seconds = 0.0;
  std::string max_relerr;
  std::uint64_t seed = 0;
  std::string status;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline constexpr const char* kCsvHeader =
    "precision,algorithm,method,kernel,n,K,splits,threads,rep_median_seconds,max_relerr,seed,status";

/// One record per (K, thread count). A singular system yields a record with
/// status "singular"; a failed reconstruction check under verify yields
/// "verify_failed".
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

/// Times one complex product per thread count; algorithm column "matmul".
/// The error column is measured against the 8-component product only when
/// cfg.verify is set, otherwise it is "nan".
std::vector<BenchRecord> run_matmul_bench(const BenchConfig& cfg);

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
/// Writes the header and records to path; throws Error on I/O failure.
void emit_csv(const std::vector<BenchRecord>& records, const std::string& path);
/// Throws ParseError on a malformed header or row.
std::vector<BenchRecord> parse_csv(std::istream& in);

}  // namespace mpclu
