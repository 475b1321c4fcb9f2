#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spunembed/mcg.hpp"
#include "spunembed/surface.hpp"

namespace spunembed {

/// Z2 quadratic refinement of the intersection pairing:
/// q(x+y) = q(x) + q(y) + <x,y> (mod 2). The values on the interleaved basis
/// determine the form.
class QuadraticForm {
public:
    QuadraticForm(int genus, std::vector<std::uint8_t> basis_values)
        : genus_(genus), basis_values_(std::move(basis_values)) {
        if (genus_ < 1) throw std::invalid_argument("form genus must be >= 1");
        if (basis_values_.size() != static_cast<std::size_t>(2 * genus_))
            throw DimensionError("basis value count must be 2g");
        for (auto& v : basis_values_) v &= 1u;
    }

    static QuadraticForm zero(int genus) {
        return QuadraticForm(genus, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * genus)));
    }

    int genus() const { return genus_; }
    const std::vector<std::uint8_t>& basis_values() const { return basis_values_; }

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
    friend bool operator<(const QuadraticForm& a, const QuadraticForm& b) {
        return a.basis_values_ < b.basis_values_; // lexicographic
    }

private:
    int genus_;
    std::vector<std::uint8_t> basis_values_;
};

/// q(sum x_i e_i) = sum x_i q(e_i) + sum_{i<j} x_i x_j <e_i, e_j>  (mod 2).
/// In the interleaved basis the cross terms are exactly the (a_i, b_i) pairs.
inline std::uint8_t evaluate(const QuadraticForm& q, const std::vector<std::uint8_t>& x) {
    if (x.size() != q.basis_values().size())
        throw DimensionError("form evaluation length mismatch");
    unsigned total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) total += (x[i] & 1u) * q.basis_values()[i];
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) total += (x[i] & 1u) * (x[i + 1] & 1u);
    return static_cast<std::uint8_t>(total & 1u);
}

inline std::uint8_t evaluate(const QuadraticForm& q, const CurveClass& c) {
    return evaluate(q, mod2_class(c));
}

/// Arf invariant: sum q(a_i) q(b_i) mod 2.
inline std::uint8_t arf(const QuadraticForm& q) {
    unsigned total = 0;
    const auto& v = q.basis_values();
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) total += v[i] * v[i + 1];
    return static_cast<std::uint8_t>(total & 1u);
}

namespace detail {

/// Image of x under the mod-2 transvection about c: x + <x,c> c. Over Z2 the
/// map is its own inverse and is independent of the twist sign.
inline std::vector<std::uint8_t> transvect_mod2(const std::vector<std::uint8_t>& x,
                                                const std::vector<std::uint8_t>& c) {
    unsigned pair = 0;
    for (std::size_t i = 0; i + 1 < x.size(); i += 2)
        pair += (x[i] & 1u) * (c[i + 1] & 1u) + (x[i + 1] & 1u) * (c[i] & 1u);
    std::vector<std::uint8_t> r = x;
    if (pair & 1u)
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (r[i] ^ c[i]) & 1u;
    return r;
}

} // namespace detail

/// Pushforward of q by the word: q'(x) = q(Phi^{-1} x) with Phi the mod-2
/// homology action. Arf is preserved.
inline QuadraticForm pushforward(const QuadraticForm& q, const TwistWord& w) {
    if (q.genus() != w.genus())
        throw DimensionError("form and word genus mismatch");
    std::size_t n = static_cast<std::size_t>(2 * q.genus());
    // Phi = T_k ... T_1 and each T is a mod-2 involution, so
    // Phi^{-1} x = T_1 (T_2 (... T_k x)).
    std::vector<std::vector<std::uint8_t>> twist_classes;
    twist_classes.reserve(w.size());
    for (const auto& l : w.letters())
        twist_classes.push_back(mod2_class(w.registry().get(l.curve)));

    std::vector<std::uint8_t> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint8_t> x(n);
        x[i] = 1;
        for (auto it = twist_classes.rbegin(); it != twist_classes.rend(); ++it)
            x = detail::transvect_mod2(x, *it);
        values[i] = evaluate(q, x);
    }
    return QuadraticForm(q.genus(), std::move(values));
}

/// Pushforward by a single unsigned twist about an explicit class.
inline QuadraticForm pushforward(const QuadraticForm& q, const CurveClass& c) {
    if (q.genus() != c.genus()) throw DimensionError("form and curve genus mismatch");
    std::size_t n = static_cast<std::size_t>(2 * q.genus());
    std::vector<std::uint8_t> cm = mod2_class(c);
    std::vector<std::uint8_t> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint8_t> x(n);
        x[i] = 1;
        values[i] = evaluate(q, detail::transvect_mod2(x, cm));
    }
    return QuadraticForm(q.genus(), std::move(values));
}

/// All forms q with q(c) = 1 for every alphabet class, the condition under
/// which the twist about c fixes q. Solves the induced affine system over Z2;
/// results in lexicographic order of basis values. Empty when inconsistent.
inline std::vector<QuadraticForm> fixed_forms(const std::vector<CurveClass>& alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("fixed_forms needs a nonempty alphabet");
    int g = alphabet.front().genus();
    for (const auto& c : alphabet)
        if (c.genus() != g) throw DimensionError("alphabet classes on different surfaces");
    std::size_t n = static_cast<std::size_t>(2 * g);

    // rows: sum_i x_i q_i = 1 + cross(x) over Z2, unknowns q_i
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<std::uint8_t> rhs;
    for (const auto& c : alphabet) {
        std::vector<std::uint8_t> x = mod2_class(c);
        unsigned cross = 0;
        for (std::size_t i = 0; i + 1 < n; i += 2) cross += x[i] * x[i + 1];
        rows.push_back(x);
        rhs.push_back(static_cast<std::uint8_t>((1u + cross) & 1u));
    }

    // Gaussian elimination
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[rank]);
        std::swap(rhs[sel], rhs[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            for (std::size_t cidx = 0; cidx < n; ++cidx) rows[r][cidx] ^= rows[rank][cidx];
            rhs[r] ^= rhs[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rhs[r] != 0) return {}; // inconsistent

    std::vector<std::size_t> free_cols;
    for (std::size_t col = 0, p = 0; col < n; ++col) {
        if (p < pivot_col.size() && pivot_col[p] == col)
            ++p;
        else
            free_cols.push_back(col);
    }

    std::vector<QuadraticForm> result;
    std::size_t combos = static_cast<std::size_t>(1) << free_cols.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<std::uint8_t> q(n, 0);
        for (std::size_t f = 0; f < free_cols.size(); ++f)
            q[free_cols[f]] = static_cast<std::uint8_t>((mask >> f) & 1u);
        for (std::size_t r = 0; r < rank; ++r) {
            unsigned acc = rhs[r];
            for (std::size_t f = 0; f < free_cols.size(); ++f)
                acc ^= rows[r][free_cols[f]] & q[free_cols[f]];
            q[pivot_col[r]] = static_cast<std::uint8_t>(acc & 1u);
        }
        result.emplace_back(g, std::move(q));
    }
    std::sort(result.begin(), result.end());
    return result;
}

/// BFS closure of q under single twists about the alphabet curves. Genus is
/// capped at 5 so the ambient set of 2^{2g} forms stays enumerable.
inline std::set<QuadraticForm> orbit(const QuadraticForm& q,
                                     const std::vector<CurveClass>& alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("orbit needs a nonempty alphabet");
    if (q.genus() > 5) throw std::invalid_argument("orbit enumeration capped at genus 5");
    for (const auto& c : alphabet)
        if (c.genus() != q.genus()) throw DimensionError("alphabet genus mismatch");

    std::set<QuadraticForm> seen{q};
    std::vector<QuadraticForm> frontier{q};
    while (!frontier.empty()) {
        QuadraticForm cur = frontier.back();
        frontier.pop_back();
        for (const auto& c : alphabet) {
            QuadraticForm next = pushforward(cur, c);
            if (seen.insert(next).second) frontier.push_back(next);
        }
    }
    return seen;
}

/// Witness that every twist in the alphabet stabilizes a common spin
/// structure, so the generated subgroup sits inside that structure's
/// stabilizer and cannot be the full mapping class group.
struct NonGenerationCertificate {
    QuadraticForm fixed_form;
    std::vector<CurveClass> alphabet;
    std::vector<std::uint8_t> generator_fixes; // per-generator verification bits

    bool verified() const {
        for (auto b : generator_fixes)
            if (!b) return false;
        return !generator_fixes.empty();
    }
};

/// Certificate with the lexicographically least fixed form, or nullopt when
/// no form is fixed by the whole alphabet.
inline std::optional<NonGenerationCertificate>
non_generation_certificate(const std::vector<CurveClass>& alphabet) {
    std::vector<QuadraticForm> fixed = fixed_forms(alphabet);
    if (fixed.empty()) return std::nullopt;
    NonGenerationCertificate cert{fixed.front(), alphabet, {}};
    cert.generator_fixes.reserve(alphabet.size());
    for (const auto& c : alphabet)
        cert.generator_fixes.push_back(pushforward(cert.fixed_form, c) == cert.fixed_form ? 1 : 0);
    return cert;
}

} // namespace spunembed
