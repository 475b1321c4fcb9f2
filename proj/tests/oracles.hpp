#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// invariant factors through determinantal divisors (gcds of k x k minors)
// and a cofactor-expansion determinant. Only suitable for small matrices.

#include <vector>

#include "spunembed/algebra.hpp"
#include "spunembed/int128.hpp"

namespace oracle {

using spunembed::Int128;
using spunembed::IntMatrix;

inline Int128 cofactor_det(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int128 total = 0;
    Int128 sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        total += sign * m.at(0, j) * cofactor_det(minor);
        sign = -sign;
    }
    return total;
}

inline void enumerate_subsets(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                              std::size_t start,
                              std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        enumerate_subsets(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

/// gcd of all k x k minors; zero when every minor vanishes.
inline Int128 determinantal_divisor(const IntMatrix& m, std::size_t k) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    std::vector<std::size_t> cur;
    enumerate_subsets(m.rows(), k, cur, 0, row_sets);
    enumerate_subsets(m.cols(), k, cur, 0, col_sets);
    Int128 g = 0;
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            g = spunembed::gcd(g, cofactor_det(sub));
        }
    return g;
}

/// Invariant factors d_k = D_k / D_{k-1} from the determinantal divisors,
/// including the trailing 1s; stops at the rank.
inline std::vector<Int128> invariant_factors(const IntMatrix& m) {
    std::vector<Int128> factors;
    Int128 prev = 1;
    std::size_t kmax = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= kmax; ++k) {
        Int128 dk = determinantal_divisor(m, k);
        if (dk == Int128{0}) break;
        factors.push_back(dk / prev);
        prev = dk;
    }
    return factors;
}

} // namespace oracle
