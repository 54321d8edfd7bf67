#pragma once

// Real extended-precision matrix products.
//
// Every kernel fixes the order in which each output element is accumulated,
// so the result is bitwise reproducible and does not depend on `threads`.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "mpclu/matrix.hpp"

namespace mpclu {

inline constexpr std::size_t kDefaultBlock = 16;
inline constexpr std::size_t kDefaultStrassenThreshold = 32;

/// C = A B with a triple loop; each C(i,j) accumulates in ascending k.
template <int K>
RealMatrix<K> rgemm_naive(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads = 1);

/// Cache-blocked product. Each C(i,j) is the running sum, over inner blocks
/// in ascending order, of that block's partial dot product. With
/// block >= inner dimension this is bitwise equal to rgemm_naive.
template <int K>
RealMatrix<K> rgemm_blocked(const RealMatrix<K>& a, const RealMatrix<K>& b, std::size_t block = kDefaultBlock,
                            int threads = 1);

/// Strassen recursion (seven subproducts per level) down to `threshold`,
/// below which rgemm_blocked is used. Odd dimensions are peeled off and
/// handled with rank-1 and matrix-vector updates.
template <int K>
RealMatrix<K> rgemm_strassen(const RealMatrix<K>& a, const RealMatrix<K>& b,
                             std::size_t threshold = kDefaultStrassenThreshold, int threads = 1,
                             std::size_t block = kDefaultBlock);

template <int K>
RealMatrix<K> mat_add(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads = 1);
template <int K>
RealMatrix<K> mat_sub(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads = 1);

// ---------------------------------------------------------------------------
// Ozaki scheme

/// Rows for a left operand (aligned per row), columns for a right operand.
enum class SplitAxis { kRows, kCols };

/// A matrix written as a sum of d binary64 slices. Slice p of line i holds
/// integers of magnitude <= 2^beta times 2^(exponents[i] - (p+1)*beta), so
/// any product of a row slice and a column slice over `inner` terms is exact.
struct SplitStack {
  int d = 0;
  int beta = 0;
  SplitAxis axis = SplitAxis::kRows;
  std::vector<int> exponents;
  std::vector<Binary64Matrix> parts;
  std::vector<bool> nonzero;
};

/// Bits per slice for an inner dimension n: floor((53 - ceil(log2 n)) / 2).
/// Throws SplitBudgetError when no bit is left.
int split_budget(std::size_t inner);

template <int K>
SplitStack ozaki_split(const RealMatrix<K>& a, int d, SplitAxis axis = SplitAxis::kRows);

/// Sum of the slices, in slice order, at K components.
template <int K>
RealMatrix<K> ozaki_reconstruct(const SplitStack& s);

/// Slice pairs (p, q) used for a K-component product, in accumulation
/// order: descending significance p+q, then ascending p. Pairs whose
/// significance 2^-(p+q)beta is below the K-component round-off are dropped.
std::vector<std::pair<int, int>> ozaki_schedule(int d, int beta, int K);

/// Exact binary64 product kernel; the seam for substituting an external
/// DGEMM. Any kernel that computes the exact products is interchangeable.
using Binary64Gemm = std::function<Binary64Matrix(const Binary64Matrix&, const Binary64Matrix&)>;

Binary64Matrix dgemm_plain(const Binary64Matrix& a, const Binary64Matrix& b);

template <int K>
RealMatrix<K> rgemm_ozaki(const RealMatrix<K>& a, const RealMatrix<K>& b, int d, int threads = 1,
                          const Binary64Gemm& kernel = {});

}  // namespace mpclu
