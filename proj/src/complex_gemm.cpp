#include "mpclu/complex_gemm.hpp"

namespace mpclu {

void KernelChoice::validate() const {
  if (threads < 1) throw ConfigError("thread count must be >= 1");
  if (block < 1) throw ConfigError("block size must be >= 1");
  if (kernel == RealKernel::kStrassen && threshold < 2) throw ConfigError("Strassen threshold must be >= 2");
  if (kernel == RealKernel::kOzaki && splits < 1) throw ConfigError("split count must be >= 1");
}

std::string_view to_string(Method m) { return m == Method::k3M ? "3m" : "4m"; }

std::string_view to_string(RealKernel k) {
  switch (k) {
    case RealKernel::kNaive:
      return "naive";
    case RealKernel::kBlocked:
      return "blocked";
    case RealKernel::kStrassen:
      return "strassen";
    case RealKernel::kOzaki:
      return "ozaki";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "3m" || s == "3M") return Method::k3M;
  if (s == "4m" || s == "4M") return Method::k4M;
  throw ConfigError("unknown method '" + std::string(s) + "' (expected 3m or 4m)");
}

RealKernel parse_kernel(std::string_view s) {
  if (s == "naive") return RealKernel::kNaive;
  if (s == "blocked") return RealKernel::kBlocked;
  if (s == "strassen") return RealKernel::kStrassen;
  if (s == "ozaki") return RealKernel::kOzaki;
  throw ConfigError("unknown kernel '" + std::string(s) + "'");
}

template <int K>
RealMatrix<K> rgemm(const RealMatrix<K>& a, const RealMatrix<K>& b, const KernelChoice& kc) {
  if (kc.counters) ++kc.counters->real_products;
  switch (kc.kernel) {
    case RealKernel::kNaive:
      return rgemm_naive(a, b, kc.threads);
    case RealKernel::kBlocked:
      return rgemm_blocked(a, b, kc.block, kc.threads);
    case RealKernel::kStrassen:
      return rgemm_strassen(a, b, kc.threshold, kc.threads, kc.block);
    case RealKernel::kOzaki:
      return rgemm_ozaki(a, b, kc.splits, kc.threads, kc.binary64_gemm);
  }
  throw ConfigError("unknown kernel");
}

namespace {

template <int K>
void check_shapes(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b) {
  if (a.cols() != b.rows()) throw DimensionError("inner dimensions differ in complex product");
}

template <int K>
RealMatrix<K> add(const RealMatrix<K>& x, const RealMatrix<K>& y, const KernelChoice& kc) {
  if (kc.counters) ++kc.counters->additions;
  return mat_add(x, y, kc.threads);
}

template <int K>
RealMatrix<K> sub(const RealMatrix<K>& x, const RealMatrix<K>& y, const KernelChoice& kc) {
  if (kc.counters) ++kc.counters->additions;
  return mat_sub(x, y, kc.threads);
}

}  // namespace

template <int K>
ComplexMatrix<K> cgemm_3m(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b, const KernelChoice& kc) {
  check_shapes(a, b);
  kc.validate();
  RealMatrix<K> t1 = rgemm(a.re, b.re, kc);
  RealMatrix<K> t2 = rgemm(a.im, b.im, kc);
  RealMatrix<K> t3 = rgemm(add(a.re, a.im, kc), add(b.re, b.im, kc), kc);
  RealMatrix<K> re = sub(t1, t2, kc);
  RealMatrix<K> im = sub(sub(t3, t1, kc), t2, kc);
  return {std::move(re), std::move(im)};
}

template <int K>
ComplexMatrix<K> cgemm_4m(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b, const KernelChoice& kc) {
  check_shapes(a, b);
  kc.validate();
  RealMatrix<K> rr = rgemm(a.re, b.re, kc);
  RealMatrix<K> ii = rgemm(a.im, b.im, kc);
  RealMatrix<K> ir = rgemm(a.im, b.re, kc);
  RealMatrix<K> ri = rgemm(a.re, b.im, kc);
  return {sub(rr, ii, kc), add(ir, ri, kc)};
}

template <int K>
ComplexMatrix<K> cgemm(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b, const KernelChoice& kc) {
  return kc.method == Method::k3M ? cgemm_3m(a, b, kc) : cgemm_4m(a, b, kc);
}

#define MPCLU_INSTANTIATE_COMPLEX_GEMM(K)                                                                  \
  template RealMatrix<K> rgemm<K>(const RealMatrix<K>&, const RealMatrix<K>&, const KernelChoice&);       \
  template ComplexMatrix<K> cgemm_3m<K>(const ComplexMatrix<K>&, const ComplexMatrix<K>&, const KernelChoice&); \
  template ComplexMatrix<K> cgemm_4m<K>(const ComplexMatrix<K>&, const ComplexMatrix<K>&, const KernelChoice&); \
  template ComplexMatrix<K> cgemm<K>(const ComplexMatrix<K>&, const ComplexMatrix<K>&, const KernelChoice&);

MPCLU_INSTANTIATE_COMPLEX_GEMM(2)
MPCLU_INSTANTIATE_COMPLEX_GEMM(3)
MPCLU_INSTANTIATE_COMPLEX_GEMM(4)
MPCLU_INSTANTIATE_COMPLEX_GEMM(8)

}  // namespace mpclu
