#include "mpclu/real_gemm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpclu/parallel.hpp"

namespace mpclu {

namespace {

template <int K>
void check_product_shapes(const RealMatrix<K>& a, const RealMatrix<K>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("inner dimensions differ: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

template <int K>
void check_same_shape(const RealMatrix<K>& a, const RealMatrix<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix shapes differ");
}

template <int K, typename Op>
RealMatrix<K> elementwise(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads, Op op) {
  check_same_shape(a, b);
  RealMatrix<K> c(a.rows(), a.cols());
  parallel_for(threads, 0, a.rows(), [&](std::size_t i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, op(a(i, j), b(i, j)));
  });
  return c;
}

// Sum over k of a(i,k) b(k,j) for a single output, ascending k.
template <int K>
Expansion<K> dot_row_col(const RealMatrix<K>& a, std::size_t i, const RealMatrix<K>& b, std::size_t j) {
  Expansion<K> acc;
  for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
  return acc;
}

template <int K>
RealMatrix<K> strassen_rec(const RealMatrix<K>& a, const RealMatrix<K>& b, std::size_t threshold, int threads,
                           std::size_t block) {
  const std::size_t m = a.rows(), n = a.cols(), l = b.cols();
  if (std::min({m, n, l}) <= threshold) return rgemm_blocked(a, b, block, threads);

  const std::size_t me = m & ~std::size_t{1}, ne = n & ~std::size_t{1}, le = l & ~std::size_t{1};
  if (me != m || ne != n || le != l) {
    // Dynamic peeling: recurse on the even core, then patch the odd edges.
    RealMatrix<K> c(m, l);
    RealMatrix<K> core = strassen_rec(a.block(0, 0, me, ne), b.block(0, 0, ne, le), threshold, threads, block);
    if (ne != n) {
      parallel_for(threads, 0, me, [&](std::size_t i) {
        const Expansion<K> ai = a(i, ne);
        for (std::size_t j = 0; j < le; ++j) core.set(i, j, core(i, j) + ai * b(ne, j));
      });
    }
    c.set_block(0, 0, core);
    if (le != l) {
      parallel_for(threads, 0, me, [&](std::size_t i) { c.set(i, le, dot_row_col(a, i, b, le)); });
    }
    if (me != m) {
      parallel_for(threads, 0, l, [&](std::size_t j) { c.set(me, j, dot_row_col(a, me, b, j)); });
    }
    return c;
  }

  const std::size_t hm = m / 2, hn = n / 2, hl = l / 2;
  const RealMatrix<K> a11 = a.block(0, 0, hm, hn), a12 = a.block(0, hn, hm, hn);
  const RealMatrix<K> a21 = a.block(hm, 0, hm, hn), a22 = a.block(hm, hn, hm, hn);
  const RealMatrix<K> b11 = b.block(0, 0, hn, hl), b12 = b.block(0, hl, hn, hl);
  const RealMatrix<K> b21 = b.block(hn, 0, hn, hl), b22 = b.block(hn, hl, hn, hl);

  // Seven independent subproducts; spare threads go to each of them.
  const int outer = std::min(threads, 7);
  const int inner = std::max(1, threads / 7);
  std::array<RealMatrix<K>, 7> mm;
  auto rec = [&](const RealMatrix<K>& x, const RealMatrix<K>& y) {
    return strassen_rec(x, y, threshold, inner, block);
  };
  parallel_invoke(outer, {
                             [&] { mm[0] = rec(mat_add(a11, a22), mat_add(b11, b22)); },
                             [&] { mm[1] = rec(mat_add(a21, a22), b11); },
                             [&] { mm[2] = rec(a11, mat_sub(b12, b22)); },
                             [&] { mm[3] = rec(a22, mat_sub(b21, b11)); },
                             [&] { mm[4] = rec(mat_add(a11, a12), b22); },
                             [&] { mm[5] = rec(mat_sub(a21, a11), mat_add(b11, b12)); },
                             [&] { mm[6] = rec(mat_sub(a12, a22), mat_add(b21, b22)); },
                         });

  RealMatrix<K> c(m, l);
  c.set_block(0, 0, mat_add(mat_sub(mat_add(mm[0], mm[3], threads), mm[4], threads), mm[6], threads));
  c.set_block(0, hl, mat_add(mm[2], mm[4], threads));
  c.set_block(hm, 0, mat_add(mm[1], mm[3], threads));
  c.set_block(hm, hl, mat_add(mat_add(mat_sub(mm[0], mm[1], threads), mm[2], threads), mm[5], threads));
  return c;
}

int exponent_bound(double mu) {
  // Smallest t with mu <= 2^t.
  int e;
  double m = std::frexp(mu, &e);
  return m == 0.5 ? e - 1 : e;
}

}  // namespace

template <int K>
RealMatrix<K> rgemm_naive(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads) {
  check_product_shapes(a, b);
  const std::size_t n = a.cols(), l = b.cols();
  RealMatrix<K> c(a.rows(), l);
  parallel_for(threads, 0, a.rows(), [&](std::size_t i) {
    std::vector<Expansion<K>> acc(l);
    for (std::size_t k = 0; k < n; ++k) {
      const Expansion<K> aik = a(i, k);
      for (std::size_t j = 0; j < l; ++j) acc[j] = acc[j] + aik * b(k, j);
    }
    for (std::size_t j = 0; j < l; ++j) c.set(i, j, acc[j]);
  });
  return c;
}

template <int K>
RealMatrix<K> rgemm_blocked(const RealMatrix<K>& a, const RealMatrix<K>& b, std::size_t block, int threads) {
  check_product_shapes(a, b);
  if (block == 0) throw ConfigError("block size must be >= 1");
  const std::size_t m = a.rows(), n = a.cols(), l = b.cols();
  RealMatrix<K> c(m, l);
  const std::size_t row_blocks = (m + block - 1) / block;
  parallel_for(threads, 0, row_blocks, [&](std::size_t rb) {
    const std::size_t i0 = rb * block, i1 = std::min(m, i0 + block);
    std::vector<Expansion<K>> acc(block);
    for (std::size_t j0 = 0; j0 < l; j0 += block) {
      const std::size_t j1 = std::min(l, j0 + block);
      for (std::size_t k0 = 0; k0 < n; k0 += block) {
        const std::size_t k1 = std::min(n, k0 + block);
        for (std::size_t i = i0; i < i1; ++i) {
          std::fill(acc.begin(), acc.end(), Expansion<K>());
          for (std::size_t k = k0; k < k1; ++k) {
            const Expansion<K> aik = a(i, k);
            for (std::size_t j = j0; j < j1; ++j) acc[j - j0] = acc[j - j0] + aik * b(k, j);
          }
          for (std::size_t j = j0; j < j1; ++j)
            c.set(i, j, k0 == 0 ? acc[j - j0] : c(i, j) + acc[j - j0]);
        }
      }
    }
  });
  return c;
}

template <int K>
RealMatrix<K> rgemm_strassen(const RealMatrix<K>& a, const RealMatrix<K>& b, std::size_t threshold, int threads,
                             std::size_t block) {
  check_product_shapes(a, b);
  if (threshold < 2) throw ConfigError("Strassen threshold must be >= 2");
  return strassen_rec(a, b, threshold, std::max(1, threads), block);
}

template <int K>
RealMatrix<K> mat_add(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads) {
  return elementwise(a, b, threads, [](const Expansion<K>& x, const Expansion<K>& y) { return x + y; });
}

template <int K>
RealMatrix<K> mat_sub(const RealMatrix<K>& a, const RealMatrix<K>& b, int threads) {
  return elementwise(a, b, threads, [](const Expansion<K>& x, const Expansion<K>& y) { return x - y; });
}

int split_budget(std::size_t inner) {
  int lg = 0;
  while (lg < 64 && (std::size_t{1} << lg) < inner) ++lg;
  const int beta = (53 - lg) / 2;
  if (beta < 1) throw SplitBudgetError();
  return beta;
}

template <int K>
SplitStack ozaki_split(const RealMatrix<K>& a, int d, SplitAxis axis) {
  if (d < 1) throw ConfigError("split count must be >= 1");
  const bool by_rows = axis == SplitAxis::kRows;
  SplitStack s;
  s.d = d;
  s.axis = axis;
  s.beta = split_budget(std::max<std::size_t>(1, by_rows ? a.cols() : a.rows()));
  const std::size_t lines = by_rows ? a.rows() : a.cols();
  s.exponents.assign(lines, 0);

  auto lead = a.plane(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const std::size_t line = by_rows ? i : j;
      const double v = std::fabs(lead[i * a.cols() + j]);
      if (v > 0.0) {
        const int t = exponent_bound(v);
        s.exponents[line] = std::max(s.exponents[line], t);
      }
    }
  }
  // Lines that are entirely zero keep exponent 0; all their slices are zero.

  s.parts.assign(static_cast<std::size_t>(d), Binary64Matrix(a.rows(), a.cols()));
  s.nonzero.assign(static_cast<std::size_t>(d), false);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const int tau = s.exponents[by_rows ? i : j];
      std::array<double, K> r = a(i, j).c;
      for (int p = 0; p < d && r[0] != 0.0; ++p) {
        const double unit = std::ldexp(1.0, tau - (p + 1) * s.beta);
        const double q = std::nearbyint(r[0] / unit);
        if (q == 0.0) continue;
        const double slice = q * unit;
        s.parts[static_cast<std::size_t>(p)](i, j) = slice;
        s.nonzero[static_cast<std::size_t>(p)] = true;
        // r[0] - slice is exact; renormalizing K terms is exact as well.
        r[0] -= slice;
        detail::insertion_sort(r.data(), K);
        r = detail::vecsum_extract<K>(r.data(), K).c;
      }
    }
  }
  return s;
}

template <int K>
RealMatrix<K> ozaki_reconstruct(const SplitStack& s) {
  if (s.parts.empty()) return {};
  const std::size_t rows = s.parts[0].rows, cols = s.parts[0].cols;
  RealMatrix<K> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      Expansion<K> acc;
      for (const auto& part : s.parts) acc = acc + part(i, j);
      out.set(i, j, acc);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> ozaki_schedule(int d, int beta, int K) {
  std::vector<std::pair<int, int>> pairs;
  const int bits = 53 * K - 1;
  for (int level = 0; level <= 2 * (d - 1); ++level) {
    if (level * beta > bits) break;
    for (int p = std::max(0, level - d + 1); p <= std::min(level, d - 1); ++p) pairs.emplace_back(p, level - p);
  }
  return pairs;
}

Binary64Matrix dgemm_plain(const Binary64Matrix& a, const Binary64Matrix& b) {
  if (a.cols != b.rows) throw DimensionError("inner dimensions differ in binary64 product");
  Binary64Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* crow = c.data.data() + i * c.cols;
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.data.data() + k * b.cols;
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

template <int K>
RealMatrix<K> rgemm_ozaki(const RealMatrix<K>& a, const RealMatrix<K>& b, int d, int threads,
                          const Binary64Gemm& kernel) {
  check_product_shapes(a, b);
  const std::size_t m = a.rows(), l = b.cols();
  RealMatrix<K> c(m, l);
  if (a.cols() == 0) {
    if (d < 1) throw ConfigError("split count must be >= 1");
    return c;
  }
  const SplitStack sa = ozaki_split(a, d, SplitAxis::kRows);
  const SplitStack sb = ozaki_split(b, d, SplitAxis::kCols);
  const Binary64Gemm gemm = kernel ? kernel : Binary64Gemm(dgemm_plain);
  const auto schedule = ozaki_schedule(d, sa.beta, K);

  // One significance level at a time: products in parallel, then a serial
  // (per element) accumulation in schedule order.
  std::size_t first = 0;
  while (first < schedule.size()) {
    const int level = schedule[first].first + schedule[first].second;
    std::size_t last = first;
    while (last < schedule.size() && schedule[last].first + schedule[last].second == level) ++last;

    std::vector<Binary64Matrix> products(last - first);
    std::vector<char> used(last - first, 0);
    parallel_for(threads, first, last, [&](std::size_t t) {
      const auto [p, q] = schedule[t];
      if (!sa.nonzero[static_cast<std::size_t>(p)] || !sb.nonzero[static_cast<std::size_t>(q)]) return;
      products[t - first] = gemm(sa.parts[static_cast<std::size_t>(p)], sb.parts[static_cast<std::size_t>(q)]);
      used[t - first] = 1;
    });
    parallel_for(threads, 0, m, [&](std::size_t i) {
      for (std::size_t j = 0; j < l; ++j) {
        Expansion<K> acc = c(i, j);
        for (std::size_t t = 0; t < products.size(); ++t)
          if (used[t]) acc = acc + products[t](i, j);
        c.set(i, j, acc);
      }
    });
    first = last;
  }
  return c;
}

#define MPCLU_INSTANTIATE_REAL_GEMM(K)                                                                    \
  template RealMatrix<K> rgemm_naive<K>(const RealMatrix<K>&, const RealMatrix<K>&, int);               \
  template RealMatrix<K> rgemm_blocked<K>(const RealMatrix<K>&, const RealMatrix<K>&, std::size_t, int); \
  template RealMatrix<K> rgemm_strassen<K>(const RealMatrix<K>&, const RealMatrix<K>&, std::size_t, int, \
                                           std::size_t);                                                 \
  template RealMatrix<K> mat_add<K>(const RealMatrix<K>&, const RealMatrix<K>&, int);                   \
  template RealMatrix<K> mat_sub<K>(const RealMatrix<K>&, const RealMatrix<K>&, int);                   \
  template SplitStack ozaki_split<K>(const RealMatrix<K>&, int, SplitAxis);                              \
  template RealMatrix<K> ozaki_reconstruct<K>(const SplitStack&);                                        \
  template RealMatrix<K> rgemm_ozaki<K>(const RealMatrix<K>&, const RealMatrix<K>&, int, int, const Binary64Gemm&);

MPCLU_INSTANTIATE_REAL_GEMM(2)
MPCLU_INSTANTIATE_REAL_GEMM(3)
MPCLU_INSTANTIATE_REAL_GEMM(4)
MPCLU_INSTANTIATE_REAL_GEMM(8)

}  // namespace mpclu
