#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spunembed/errors.hpp"
#include "spunembed/int128.hpp"

namespace spunembed {

/// Dense integer matrix with checked 128-bit entries. Row-major, immutable in
/// spirit: the mutating accessor exists for construction and the in-place
/// elementary operations of the normal-form routines.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw DimensionError("ragged row in matrix literal");
            std::size_t j = 0;
            for (long long x : row) m.at(i, j++) = x;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int128& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int128& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        IntMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                Int128 aik = a.at(i, k);
                if (aik == Int128{0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionError("matrix difference shape mismatch");
        IntMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            r.entries_[i] = a.entries_[i] - b.entries_[i];
        return r;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (e != Int128{0}) return false;
        return true;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
    }
    /// row i -= q * row j
    void add_row_multiple(std::size_t i, std::size_t j, Int128 q) {
        for (std::size_t k = 0; k < cols_; ++k) at(i, k) -= q * at(j, k);
    }
    /// col i -= q * col j
    void add_col_multiple(std::size_t i, std::size_t j, Int128 q) {
        for (std::size_t k = 0; k < rows_; ++k) at(k, i) -= q * at(k, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Int128> entries_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int128 determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int128 sign = 1;
    Int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == Int128{0}) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == Int128{0}) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j)) / prev;
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

/// u, d, v with u*m*v = d, u and v unimodular, d diagonal with each diagonal
/// entry dividing the next.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
};

namespace detail {

/// Pivot selection: smallest nonzero absolute value in the trailing block,
/// ties broken by lowest row index, then lowest column index.
inline std::optional<std::pair<std::size_t, std::size_t>>
select_pivot(const IntMatrix& a, std::size_t k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int128 best_abs = 0;
    for (std::size_t i = k; i < a.rows(); ++i)
        for (std::size_t j = k; j < a.cols(); ++j) {
            Int128 e = abs(a.at(i, j));
            if (e == Int128{0}) continue;
            if (!best || e < best_abs) {
                best = {{i, j}};
                best_abs = e;
            }
        }
    return best;
}

} // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            auto pivot = detail::select_pivot(a, k);
            if (!pivot) {
                // trailing block is zero; done with the whole sweep
                k = n;
                break;
            }
            a.swap_rows(k, pivot->first);
            u.swap_rows(k, pivot->first);
            a.swap_cols(k, pivot->second);
            v.swap_cols(k, pivot->second);

            // rows before columns: reduce the pivot column, then the pivot row
            bool dirty = false;
            for (std::size_t i = k + 1; i < a.rows(); ++i) {
                if (a.at(i, k) == Int128{0}) continue;
                Int128 q = a.at(i, k) / a.at(k, k);
                a.add_row_multiple(i, k, q);
                u.add_row_multiple(i, k, q);
                if (a.at(i, k) != Int128{0}) dirty = true;
            }
            for (std::size_t j = k + 1; j < a.cols(); ++j) {
                if (a.at(k, j) == Int128{0}) continue;
                Int128 q = a.at(k, j) / a.at(k, k);
                a.add_col_multiple(j, k, q);
                v.add_col_multiple(j, k, q);
                if (a.at(k, j) != Int128{0}) dirty = true;
            }
            if (dirty) continue; // remainders became the new smallest entries

            // pivot cleared its row and column; enforce divisibility of the
            // trailing block by folding a bad row into row k and re-reducing
            bool divides_all = true;
            for (std::size_t i = k + 1; i < a.rows() && divides_all; ++i)
                for (std::size_t j = k + 1; j < a.cols() && divides_all; ++j)
                    if (a.at(i, j) % a.at(k, k) != Int128{0}) {
                        a.add_row_multiple(k, i, Int128{-1});
                        u.add_row_multiple(k, i, Int128{-1});
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (k == n) break;
    }

    for (std::size_t k = 0; k < n; ++k)
        if (a.at(k, k) < Int128{0}) {
            a.negate_row(k);
            u.negate_row(k);
        }
    return {std::move(u), std::move(a), std::move(v)};
}

/// Finitely generated abelian group in invariant-factor normal form:
/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2.
/// Elements are integer vectors listing free coordinates first.
struct AbelianGroupPresentation {
    std::size_t free_rank{0};
    std::vector<Int128> torsion;

    std::size_t generator_count() const { return free_rank + torsion.size(); }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    /// Group order; nullopt when infinite.
    std::optional<Int128> order() const {
        if (free_rank > 0) return std::nullopt;
        Int128 n = 1;
        for (const auto& d : torsion) n *= d;
        return n;
    }

    friend bool operator==(const AbelianGroupPresentation&,
                           const AbelianGroupPresentation&) = default;
};

/// "0", "Z^2", "Z + Z/3", ...
inline std::string to_string(const AbelianGroupPresentation& g) {
    if (g.is_trivial()) return "0";
    std::string out;
    if (g.free_rank == 1)
        out = "Z";
    else if (g.free_rank > 1)
        out = "Z^" + std::to_string(g.free_rank);
    for (const auto& d : g.torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + to_string(d);
    }
    return out;
}

/// Presentation of Z^rows / column-image(m).
inline AbelianGroupPresentation cokernel_presentation(const IntMatrix& m) {
    SmithDecomposition snf = smith_normal_form(m);
    std::size_t n = std::min(m.rows(), m.cols());
    AbelianGroupPresentation g;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Int128 d = snf.d.at(k, k);
        if (d == Int128{0}) continue;
        ++rank;
        if (d >= Int128{2}) g.torsion.push_back(d);
    }
    g.free_rank = m.rows() - rank;
    return g;
}

/// Does n*x = c have a solution x in g? Coordinates of c follow the
/// presentation order (free generators, then torsion generators).
inline bool solve_divisibility(const AbelianGroupPresentation& g,
                               const std::vector<Int128>& c, Int128 n) {
    if (c.size() != g.generator_count())
        throw DimensionError("element coordinate count does not match presentation");
    if (n <= Int128{0}) throw std::domain_error("divisor must be positive");
    for (std::size_t i = 0; i < g.free_rank; ++i)
        if (c[i] % n != Int128{0}) return false;
    for (std::size_t j = 0; j < g.torsion.size(); ++j) {
        Int128 d = g.torsion[j];
        Int128 target = c[g.free_rank + j] % d;
        if (target < Int128{0}) target += d;
        // n*x = target (mod d) is solvable iff gcd(n, d) divides target
        if (target % gcd(n, d) != Int128{0}) return false;
    }
    return true;
}

} // namespace spunembed
