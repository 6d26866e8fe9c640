#pragma once

#include <cstddef>
#include <vector>

namespace prismcalc {

/// Division-free characteristic polynomial (Berkowitz/Samuelson).
///
/// `a` is an n x n row-major matrix over a commutative ring R; only +, *,
/// unary - are used. Returns the n+1 coefficients of det(xI - A),
/// leading-first (result[0] = 1).
template <class R>
std::vector<R> berkowitz_charpoly(const std::vector<R>& a, std::size_t n, const R& zero,
                                  const R& one) {
    std::vector<R> c{one};
    for (std::size_t r = 1; r <= n; ++r) {
        std::vector<R> t(r + 1, zero);
        t[0] = one;
        t[1] = -a[(r - 1) * n + (r - 1)];
        if (r >= 2) {
            // vec starts as the column A[0..r-2][r-1] and is advanced by the
            // principal (r-1)x(r-1) submatrix
            std::vector<R> vec(r - 1, zero);
            for (std::size_t i = 0; i + 1 < r; ++i) vec[i] = a[i * n + (r - 1)];
            for (std::size_t k = 2; k <= r; ++k) {
                R dot = zero;
                for (std::size_t j = 0; j + 1 < r; ++j)
                    dot = dot + a[(r - 1) * n + j] * vec[j];
                t[k] = -dot;
                if (k < r) {
                    std::vector<R> next(r - 1, zero);
                    for (std::size_t i = 0; i + 1 < r; ++i) {
                        R s = zero;
                        for (std::size_t j = 0; j + 1 < r; ++j)
                            s = s + a[i * n + j] * vec[j];
                        next[i] = s;
                    }
                    vec = std::move(next);
                }
            }
        }
        std::vector<R> nc(r + 1, zero);
        for (std::size_t i = 0; i <= r; ++i) {
            R s = zero;
            for (std::size_t j = 0; j < c.size() && j <= i; ++j) {
                if (i - j <= r) s = s + t[i - j] * c[j];
            }
            nc[i] = s;
        }
        c = std::move(nc);
    }
    return c;
}

} // namespace prismcalc
