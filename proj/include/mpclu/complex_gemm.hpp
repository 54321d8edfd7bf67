#pragma once

// Complex matrix products over the planar layout, built from real kernels.

#include <atomic>
#include <cstddef>
#include <string>
#include <string_view>

#include "mpclu/complex.hpp"
#include "mpclu/matrix.hpp"
#include "mpclu/real_gemm.hpp"

namespace mpclu {

enum class RealKernel { kNaive, kBlocked, kStrassen, kOzaki };

/// Instrumentation for tests: number of real-kernel calls and matrix
/// additions/subtractions issued by the complex products.
struct KernelCounters {
  std::atomic<long> real_products{0};
  std::atomic<long> additions{0};
};

struct KernelChoice {
  Method method = Method::k3M;
  RealKernel kernel = RealKernel::kBlocked;
  std::size_t block = kDefaultBlock;
  std::size_t threshold = kDefaultStrassenThreshold;
  int splits = 6;
  int threads = 1;
  Binary64Gemm binary64_gemm{};
  KernelCounters* counters = nullptr;

  /// Throws ConfigError when a parameter is out of range for the kernel.
  void validate() const;
};

std::string_view to_string(Method m);
std::string_view to_string(RealKernel k);
Method parse_method(std::string_view s);
RealKernel parse_kernel(std::string_view s);

/// Real product with the kernel selected by kc.
template <int K>
RealMatrix<K> rgemm(const RealMatrix<K>& a, const RealMatrix<K>& b, const KernelChoice& kc);

/// T1 = ReA ReB, T2 = ImA ImB, C = (T1 - T2) + ((ReA+ImA)(ReB+ImB) - T1 - T2) i.
template <int K>
ComplexMatrix<K> cgemm_3m(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b, const KernelChoice& kc);

/// C = (ReA ReB - ImA ImB) + (ImA ReB + ReA ImB) i.
template <int K>
ComplexMatrix<K> cgemm_4m(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b, const KernelChoice& kc);

/// Dispatches on kc.method.
template <int K>
ComplexMatrix<K> cgemm(const ComplexMatrix<K>& a, const ComplexMatrix<K>& b, const KernelChoice& kc);

}  // namespace mpclu
