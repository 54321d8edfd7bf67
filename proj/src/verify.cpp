#include "mpclu/verify.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "mpclu/bench.hpp"
#include "mpclu/eft.hpp"
#include "mpclu/expansion.hpp"

namespace mpclu {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult bound_check(std::string name, double value, double bound) {
  return {std::move(name), value <= bound, sci(value) + " <= " + sci(bound)};
}

double random_wide(std::mt19937_64& g) {
  std::uniform_real_distribution<double> m(-1.0, 1.0);
  std::uniform_int_distribution<int> e(-60, 60);
  return std::ldexp(m(g), e(g));
}

template <int K>
Expansion<K> random_expansion(std::mt19937_64& g) {
  std::array<double, K> t;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double scale = 1.0;
  for (int c = 0; c < K; ++c) {
    t[c] = u(g) * scale;
    scale *= 0x1p-53;
  }
  return renormalize<K>(t);
}

std::vector<CheckResult> eft_suite(unsigned seed) {
  std::mt19937_64 g(seed);
  long sum_bad = 0, prod_bad = 0, fast_bad = 0;
  for (int i = 0; i < 200000; ++i) {
    const double a = random_wide(g), b = random_wide(g);
    // Both routes return an exact pair; they must agree bitwise.
    const SumErr s = two_sum(a, b);
    const SumErr f = std::fabs(a) >= std::fabs(b) ? fast_two_sum(a, b) : fast_two_sum(b, a);
    if (s.s != a + b) ++sum_bad;
    if (s.s != f.s || s.e != f.e) ++fast_bad;
    const SumErr p = two_prod_fma(a, b), d = two_prod_dekker(a, b);
    if (p.s != a * b || p.s != d.s || p.e != d.e) ++prod_bad;
  }
  return {
      {"two_sum rounded part", sum_bad == 0, std::to_string(sum_bad) + " mismatches"},
      {"two_sum equals ordered fast_two_sum", fast_bad == 0, std::to_string(fast_bad) + " mismatches"},
      {"two_prod fma equals Dekker", prod_bad == 0, std::to_string(prod_bad) + " mismatches"},
  };
}

template <int K>
void scalar_checks(std::mt19937_64& g, std::vector<CheckResult>& out) {
  double add = 0, mul = 0, div = 0;
  bool normalized = true;
  for (int i = 0; i < 5000; ++i) {
    const auto x = random_expansion<K>(g), y = random_expansion<K>(g);
    const auto xw = convert<8>(x), yw = convert<8>(y);
    const auto s = x + y, p = x * y, q = x / y;
    normalized = normalized && is_normalized(s) && is_normalized(p) && is_normalized(q);
    auto rel = [](const auto& got, const Expansion<8>& want) {
      return std::fabs((convert<8>(got) - want).c[0]) / std::fabs(want.c[0]);
    };
    add = std::max(add, rel(s, xw + yw));
    mul = std::max(mul, rel(p, xw * yw));
    div = std::max(div, rel(q, xw / yw));
  }
  const std::string k = "k=" + std::to_string(K) + " ";
  out.push_back(bound_check(k + "add", add, 2 * eps<K>()));
  out.push_back(bound_check(k + "mul", mul, 4 * eps<K>()));
  out.push_back(bound_check(k + "div", div, 8 * eps<K>()));
  out.push_back({k + "outputs nonoverlapping", normalized, ""});
}

std::vector<CheckResult> scalar_suite(unsigned seed) {
  std::mt19937_64 g(seed);
  std::vector<CheckResult> out;
  scalar_checks<2>(g, out);
  scalar_checks<3>(g, out);
  scalar_checks<4>(g, out);
  return out;
}

template <int K>
double max_scaled_diff(const ComplexMatrix<K>& c, const ComplexMatrix<8>& ref, double scale) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      const Complex<8> d = convert<8>(c(i, j)) - ref(i, j);
      worst = std::max({worst, std::fabs(d.re.c[0]), std::fabs(d.im.c[0])});
    }
  return worst / scale;
}

template <int K>
void matmul_checks(unsigned seed, std::vector<CheckResult>& out) {
  const std::size_t n = 32;
  const auto a = random_matrix<K>(n, n, seed, 1), b = random_matrix<K>(n, n, seed, 2);
  KernelChoice ref;
  ref.method = Method::k4M;
  ref.kernel = RealKernel::kNaive;
  const auto exact = cgemm(convert<8>(a), convert<8>(b), ref);
  const double scale = 2.0 * static_cast<double>(n);
  const std::string k = "k=" + std::to_string(K) + " ";
  for (RealKernel kernel : {RealKernel::kNaive, RealKernel::kBlocked, RealKernel::kStrassen, RealKernel::kOzaki}) {
    KernelChoice kc;
    kc.kernel = kernel;
    kc.threshold = 8;
    kc.splits = default_splits(K == 2 ? Precision::kDD : K == 3 ? Precision::kTD : Precision::kQD);
    const auto c3 = cgemm_3m(a, b, kc), c4 = cgemm_4m(a, b, kc);
    const std::string name = k + std::string(to_string(kernel));
    out.push_back(bound_check(name + " 3m vs reference", max_scaled_diff(c3, exact, scale), 32 * n * eps<K>()));
    out.push_back(bound_check(name + " 4m vs reference", max_scaled_diff(c4, exact, scale), 32 * n * eps<K>()));
    out.push_back({name + " real planes of 3m and 4m equal", c3.re == c4.re, ""});
    kc.threads = 4;
    out.push_back({name + " thread invariant", cgemm_3m(a, b, kc) == c3, ""});
  }
}

std::vector<CheckResult> matmul_suite(unsigned seed) {
  std::vector<CheckResult> out;
  matmul_checks<2>(seed, out);
  matmul_checks<3>(seed, out);
  matmul_checks<4>(seed, out);
  return out;
}

template <int K>
void lu_checks(unsigned seed, std::vector<CheckResult>& out) {
  const std::size_t n = 48;
  const auto p = gen_problem<K>(n, seed);
  const std::string k = "k=" + std::to_string(K) + " ";
  const auto fn = lu_normal(p.a);
  out.push_back(bound_check(k + "normal PA=LU", lu_residual(p.a, fn), 64 * eps<K>()));
  KernelChoice kc;
  kc.kernel = RealKernel::kStrassen;
  kc.threshold = 8;
  const auto fb = lu_blocked(p.a, 16, kc);
  out.push_back(bound_check(k + "blocked PA=LU", lu_residual(p.a, fb), 64 * eps<K>()));
  const auto ff = lu_blocked(p.a, n, kc);
  out.push_back({k + "blocked K=n equals normal", ff.packed == fn.packed && ff.pivots == fn.pivots, ""});
  out.push_back(
      bound_check(k + "solution error", max_rel_err(solve(fn, p.b), p.x).c[0], 1e4 * eps<K>()));
}

std::vector<CheckResult> lu_suite(unsigned seed) {
  std::vector<CheckResult> out;
  lu_checks<2>(seed, out);
  lu_checks<3>(seed, out);
  lu_checks<4>(seed, out);
  return out;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(std::string_view suite, unsigned seed) {
  if (suite == "eft") return eft_suite(seed);
  if (suite == "scalar") return scalar_suite(seed);
  if (suite == "matmul") return matmul_suite(seed);
  if (suite == "lu") return lu_suite(seed);
  throw ConfigError("unknown verify suite '" + std::string(suite) + "' (expected eft, scalar, matmul or lu)");
}

bool report(const std::vector<CheckResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace mpclu
