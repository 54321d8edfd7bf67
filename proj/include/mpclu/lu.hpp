#pragma once

// Complex LU decomposition with partial pivoting.

#include <cstddef>
#include <vector>

#include "mpclu/complex_gemm.hpp"
#include "mpclu/matrix.hpp"

namespace mpclu {

/// Unit-lower L (diagonal implicit) and U packed in one matrix. Row i was
/// swapped with row pivots[i] >= i at step i.
template <int K>
struct LUFactors {
  ComplexMatrix<K> packed;
  std::vector<std::size_t> pivots;
};

/// Right-looking elimination without matrix products. Pivot is the largest
/// |Re| + |Im| in the column, lowest row on ties. Throws SingularError on an
/// exactly zero pivot column.
template <int K>
LUFactors<K> lu_normal(const ComplexMatrix<K>& a, int threads = 1, Method method = Method::k3M);

/// Panels of `block` columns factored as in lu_normal, then
/// U12 = L11^-1 A12 and A22 -= L21 U12 through cgemm with kc.
template <int K>
LUFactors<K> lu_blocked(const ComplexMatrix<K>& a, std::size_t block, const KernelChoice& kc);

/// X with L X = B for unit-lower L (strict lower part of l is read).
template <int K>
ComplexMatrix<K> trsm_unit_lower(const ComplexMatrix<K>& l, const ComplexMatrix<K>& b, int threads = 1,
                                 Method method = Method::k3M);

template <int K>
ComplexVector<K> solve(const LUFactors<K>& f, const ComplexVector<K>& b, Method method = Method::k3M);

/// max_k |xhat_k - x_k| / |x_k| with the complex modulus.
template <int K>
Expansion<K> max_rel_err(const ComplexVector<K>& xhat, const ComplexVector<K>& x);

/// max over entries of |Re| and |Im| of PA - LU, divided by the same maximum
/// over A. The product LU is formed with one extra component.
template <int K>
double lu_residual(const ComplexMatrix<K>& a, const LUFactors<K>& f, int threads = 1);

/// Applies the recorded row swaps to a copy of v.
template <int K>
ComplexVector<K> apply_pivots(const std::vector<std::size_t>& pivots, const ComplexVector<K>& v);

}  // namespace mpclu
