#pragma once

#include <string>
#include <vector>

#include "spunembed/algebra.hpp"
#include "spunembed/surface.hpp"

namespace spunembed {

/// One signed Dehn twist: +1 right-handed, -1 left-handed.
struct TwistLetter {
    std::string curve;
    int sign{+1};

    friend bool operator==(const TwistLetter&, const TwistLetter&) = default;
};

/// Ordered twist word over a registry. The word is kept literally as given:
/// no free reduction, no normalization, so certificates replay the user's
/// exact input.
class TwistWord {
public:
    TwistWord(CurveRegistry registry, std::vector<TwistLetter> letters = {})
        : registry_(std::move(registry)), letters_(std::move(letters)) {
        for (const auto& l : letters_) validate(l);
    }

    const CurveRegistry& registry() const { return registry_; }
    const std::vector<TwistLetter>& letters() const { return letters_; }
    int genus() const { return registry_.genus(); }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    void push_back(TwistLetter l) {
        validate(l);
        letters_.push_back(std::move(l));
    }

    friend bool operator==(const TwistWord&, const TwistWord&) = default;

private:
    void validate(const TwistLetter& l) const {
        if (l.sign != 1 && l.sign != -1)
            throw std::invalid_argument("twist sign must be +1 or -1");
        if (!registry_.contains(l.curve))
            throw std::invalid_argument("twist about unregistered curve: " + l.curve);
    }

    CurveRegistry registry_;
    std::vector<TwistLetter> letters_;
};

/// Homology action of a single signed twist about c: x -> x + sign*<x,c>*c.
/// The result is symplectic for every class c.
inline IntMatrix transvection_matrix(const CurveClass& c, int sign) {
    int g = c.genus();
    std::size_t n = static_cast<std::size_t>(2 * g);
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int128> e(n);
        e[j] = 1;
        Int128 coeff = Int128{sign} * pairing(e, c.vec());
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) += coeff * c.vec()[i];
    }
    return m;
}

/// Total homology action of a word; the first letter acts first, so the
/// matrix is  T_n * ... * T_2 * T_1.
inline IntMatrix word_action(const TwistWord& w) {
    std::size_t n = static_cast<std::size_t>(2 * w.genus());
    IntMatrix phi = IntMatrix::identity(n);
    for (const auto& l : w.letters())
        phi = transvection_matrix(w.registry().get(l.curve), l.sign) * phi;
    return phi;
}

/// m^T J m = J for the block-diagonal J of the interleaved basis.
inline bool is_symplectic(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("symplectic test requires a square matrix");
    if (m.rows() % 2 != 0) throw DimensionError("symplectic test requires even dimension");
    std::size_t n = m.rows();
    IntMatrix j(n, n);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        j.at(i, i + 1) = 1;
        j.at(i + 1, i) = -1;
    }
    // compute m^T * j * m without forming the transpose
    IntMatrix jm = j * m;
    IntMatrix result(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            Int128 mki = m.at(k, i);
            if (mki == Int128{0}) continue;
            for (std::size_t c = 0; c < n; ++c) result.at(i, c) += mki * jm.at(k, c);
        }
    return result == j;
}

/// Reversed letters with flipped signs; w followed by formal_inverse(w) acts
/// trivially on homology.
inline TwistWord formal_inverse(const TwistWord& w) {
    std::vector<TwistLetter> rev;
    rev.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        rev.push_back({it->curve, -it->sign});
    return TwistWord(w.registry(), std::move(rev));
}

inline TwistWord concatenate(const TwistWord& w1, const TwistWord& w2) {
    if (!(w1.registry() == w2.registry()))
        throw std::invalid_argument("concatenation requires a common registry");
    std::vector<TwistLetter> letters = w1.letters();
    letters.insert(letters.end(), w2.letters().begin(), w2.letters().end());
    return TwistWord(w1.registry(), std::move(letters));
}

/// v w v^{-1} as a literal word.
inline TwistWord conjugate(const TwistWord& w, const TwistWord& v) {
    return concatenate(concatenate(v, w), formal_inverse(v));
}

} // namespace spunembed
