#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpclu/bench.hpp"
#include "mpclu/expansion_io.hpp"
#include "mpclu/verify.hpp"

namespace py = pybind11;
using namespace mpclu;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Accepts shape (rows, cols) as binary64 values or (rows, cols, k) with at
// most K components per entry.
template <int K>
RealMatrix<K> to_matrix(const Array& a) {
  if (a.ndim() != 2 && a.ndim() != 3) throw DimensionError("matrix must have 2 or 3 dimensions");
  const std::size_t rows = a.shape(0), cols = a.shape(1);
  const std::size_t k = a.ndim() == 3 ? a.shape(2) : 1;
  if (k > static_cast<std::size_t>(K)) throw DimensionError("more components than the precision holds");
  RealMatrix<K> m(rows, cols);
  const double* p = a.data();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::array<double, K> t{};
      for (std::size_t c = 0; c < k; ++c) t[c] = p[(i * cols + j) * k + c];
      m.set(i, j, renormalize<K>(t));
    }
  return m;
}

template <int K>
ComplexMatrix<K> to_complex(const Array& re, const Array& im) {
  return {to_matrix<K>(re), to_matrix<K>(im)};
}

template <int K>
std::vector<Expansion<K>> to_entries(const Array& a) {
  if (a.ndim() != 1 && a.ndim() != 2) throw DimensionError("vector must have 1 or 2 dimensions");
  const std::size_t n = a.shape(0), k = a.ndim() == 2 ? a.shape(1) : 1;
  if (k > static_cast<std::size_t>(K)) throw DimensionError("more components than the precision holds");
  std::vector<Expansion<K>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, K> t{};
    for (std::size_t c = 0; c < k; ++c) t[c] = a.data()[i * k + c];
    out[i] = renormalize<K>(t);
  }
  return out;
}

template <int K>
ComplexVector<K> to_vector(const Array& re, const Array& im) {
  ComplexVector<K> v;
  v.re = to_entries<K>(re);
  v.im = to_entries<K>(im);
  if (v.re.size() != v.im.size()) throw DimensionError("real and imaginary parts differ in length");
  return v;
}

template <int K>
Array from_matrix(const RealMatrix<K>& m) {
  Array out({m.rows(), m.cols(), static_cast<std::size_t>(K)});
  double* p = out.mutable_data();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Expansion<K> x = m(i, j);
      for (int c = 0; c < K; ++c) p[(i * m.cols() + j) * K + c] = x.c[c];
    }
  return out;
}

template <int K>
Array from_vector(const std::vector<Expansion<K>>& v) {
  Array out({v.size(), static_cast<std::size_t>(K)});
  double* p = out.mutable_data();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (int c = 0; c < K; ++c) p[i * K + c] = v[i].c[c];
  return out;
}

KernelChoice make_choice(const std::string& method, const std::string& kernel, int splits, int threads,
                         Precision prec) {
  KernelChoice kc;
  kc.method = parse_method(method);
  kc.kernel = parse_kernel(kernel);
  kc.splits = splits > 0 ? splits : default_splits(prec);
  kc.threads = threads;
  kc.validate();
  return kc;
}

template <int K>
LUFactors<K> factor(const ComplexMatrix<K>& a, const std::string& algorithm, std::size_t block,
                    const KernelChoice& kc) {
  if (parse_algorithm(algorithm) == Algorithm::kNormal) return lu_normal(a, kc.threads, kc.method);
  return lu_blocked(a, block, kc);
}

// Calls f.template operator()<K>() with K chosen by the precision name.
template <typename F>
auto dispatch(const std::string& prec, F&& f) {
  switch (parse_precision(prec)) {
    case Precision::kDD:
      return f.template operator()<2>();
    case Precision::kTD:
      return f.template operator()<3>();
    case Precision::kQD:
      break;
  }
  return f.template operator()<4>();
}

py::dict record_to_dict(const BenchRecord& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["algorithm"] = r.algorithm;
  d["method"] = r.method;
  d["kernel"] = r.kernel;
  d["n"] = r.n;
  d["K"] = r.K;
  d["splits"] = r.splits;
  d["threads"] = r.threads;
  d["rep_median_seconds"] = r.seconds;
  d["max_relerr"] = r.max_relerr;
  d["seed"] = r.seed;
  d["status"] = r.status;
  return d;
}

BenchConfig make_config(const std::string& prec, const std::string& algorithm, const std::string& method,
                        const std::string& kernel, std::size_t n, std::vector<std::size_t> ks, int splits,
                        std::vector<int> threads, std::uint64_t seed, int reps, bool verify) {
  BenchConfig cfg;
  cfg.precision = parse_precision(prec);
  cfg.algorithm = parse_algorithm(algorithm);
  cfg.method = parse_method(method);
  cfg.kernel = parse_kernel(kernel);
  cfg.n = n;
  cfg.ks = std::move(ks);
  cfg.splits = splits;
  cfg.threads = std::move(threads);
  cfg.seed = seed;
  cfg.reps = reps;
  cfg.verify = verify;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_mpclu, m) {
  m.doc() = "Multiple-precision complex matrix products and LU solves";

  // Translators run newest first, so the base class goes first.
  const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SingularError>(m, "SingularError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("eps", [](const std::string& prec) { return dispatch(prec, []<int K>() { return eps<K>(); }); },
        py::arg("prec"), "Unit round-off of dd, td or qd.");

  m.def(
      "parse",
      [](const std::string& text, const std::string& prec) {
        return dispatch(prec, [&]<int K>() {
          const auto x = from_string<K>(text);
          return std::vector<double>(x.c.begin(), x.c.end());
        });
      },
      py::arg("text"), py::arg("prec") = "qd", "Decimal string to expansion components.");

  m.def(
      "format",
      [](const std::vector<double>& components, int digits) {
        auto go = [&]<int K>() {
          std::array<double, K> t{};
          std::copy(components.begin(), components.end(), t.begin());
          const Expansion<K> x = renormalize<K>(t);
          return digits > 0 ? to_string(x, digits) : to_string(x);
        };
        switch (components.size()) {
          case 1:
          case 2:
            return go.template operator()<2>();
          case 3:
            return go.template operator()<3>();
          case 4:
            return go.template operator()<4>();
        }
        throw DimensionError("expected 1 to 4 components");
      },
      py::arg("components"), py::arg("digits") = 0, "Expansion components to a decimal string.");

  m.def(
      "cgemm",
      [](const Array& a_re, const Array& a_im, const Array& b_re, const Array& b_im, const std::string& prec,
         const std::string& method, const std::string& kernel, int splits, int threads) {
        return dispatch(prec, [&]<int K>() {
          const KernelChoice kc = make_choice(method, kernel, splits, threads, parse_precision(prec));
          const ComplexMatrix<K> c = cgemm(to_complex<K>(a_re, a_im), to_complex<K>(b_re, b_im), kc);
          return py::make_tuple(from_matrix(c.re), from_matrix(c.im));
        });
      },
      py::arg("a_re"), py::arg("a_im"), py::arg("b_re"), py::arg("b_im"), py::arg("prec") = "dd",
      py::arg("method") = "3m", py::arg("kernel") = "blocked", py::arg("splits") = 0, py::arg("threads") = 1,
      "Complex product; returns (re, im) arrays of shape (m, n, k).");

  m.def(
      "lu",
      [](const Array& a_re, const Array& a_im, const std::string& prec, const std::string& algorithm,
         std::size_t block, const std::string& method, const std::string& kernel, int splits, int threads) {
        return dispatch(prec, [&]<int K>() {
          const KernelChoice kc = make_choice(method, kernel, splits, threads, parse_precision(prec));
          const ComplexMatrix<K> a = to_complex<K>(a_re, a_im);
          const LUFactors<K> f = factor(a, algorithm, block, kc);
          return py::make_tuple(from_matrix(f.packed.re), from_matrix(f.packed.im), f.pivots,
                                lu_residual(a, f, threads));
        });
      },
      py::arg("a_re"), py::arg("a_im"), py::arg("prec") = "dd", py::arg("algorithm") = "normal",
      py::arg("block") = 32, py::arg("method") = "3m", py::arg("kernel") = "blocked", py::arg("splits") = 0,
      py::arg("threads") = 1, "Packed LU factors: (re, im, pivots, residual).");

  m.def(
      "solve",
      [](const Array& a_re, const Array& a_im, const Array& b_re, const Array& b_im, const std::string& prec,
         const std::string& algorithm, std::size_t block, const std::string& method, const std::string& kernel,
         int splits, int threads) {
        return dispatch(prec, [&]<int K>() {
          const KernelChoice kc = make_choice(method, kernel, splits, threads, parse_precision(prec));
          const LUFactors<K> f = factor(to_complex<K>(a_re, a_im), algorithm, block, kc);
          const ComplexVector<K> x = solve(f, to_vector<K>(b_re, b_im), kc.method);
          return py::make_tuple(from_vector(x.re), from_vector(x.im));
        });
      },
      py::arg("a_re"), py::arg("a_im"), py::arg("b_re"), py::arg("b_im"), py::arg("prec") = "dd",
      py::arg("algorithm") = "normal", py::arg("block") = 32, py::arg("method") = "3m",
      py::arg("kernel") = "blocked", py::arg("splits") = 0, py::arg("threads") = 1,
      "Solves A x = b; returns (re, im) arrays of shape (n, k).");

  m.def(
      "bench",
      [](const std::string& prec, const std::string& algorithm, const std::string& method,
         const std::string& kernel, std::size_t n, std::vector<std::size_t> ks, int splits, std::vector<int> threads,
         std::uint64_t seed, int reps, bool verify) {
        const BenchConfig cfg =
            make_config(prec, algorithm, method, kernel, n, std::move(ks), splits, std::move(threads), seed, reps, verify);
        std::vector<BenchRecord> records;
        {
          py::gil_scoped_release release;
          records = run_bench(cfg);
        }
        py::list out;
        for (const auto& r : records) out.append(record_to_dict(r));
        return out;
      },
      py::arg("prec") = "dd", py::arg("algorithm") = "normal", py::arg("method") = "3m",
      py::arg("kernel") = "blocked", py::arg("n") = 256, py::arg("ks") = std::vector<std::size_t>{},
      py::arg("splits") = 0, py::arg("threads") = std::vector<int>{1}, py::arg("seed") = 1, py::arg("reps") = 3,
      py::arg("verify") = false, "Benchmark records as dicts keyed by the CSV columns.");

  m.def(
      "matmul_bench",
      [](const std::string& prec, const std::string& method, const std::string& kernel, std::size_t n, int splits,
         std::vector<int> threads, std::uint64_t seed, int reps, bool verify) {
        const BenchConfig cfg =
            make_config(prec, "normal", method, kernel, n, {}, splits, std::move(threads), seed, reps, verify);
        std::vector<BenchRecord> records;
        {
          py::gil_scoped_release release;
          records = run_matmul_bench(cfg);
        }
        py::list out;
        for (const auto& r : records) out.append(record_to_dict(r));
        return out;
      },
      py::arg("prec") = "dd", py::arg("method") = "3m", py::arg("kernel") = "blocked", py::arg("n") = 256,
      py::arg("splits") = 0, py::arg("threads") = std::vector<int>{1}, py::arg("seed") = 1, py::arg("reps") = 3,
      py::arg("verify") = false);

  m.def(
      "verify",
      [](const std::string& suite, unsigned seed) {
        py::list out;
        for (const auto& r : run_verify_suite(suite, seed)) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("suite"), py::arg("seed") = 1, "Self-check results as (name, passed, detail).");

  m.attr("CSV_HEADER") = kCsvHeader;
}
