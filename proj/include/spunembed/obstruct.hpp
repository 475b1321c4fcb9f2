#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "spunembed/algebra.hpp"

namespace spunembed {

/// Element of a finitely generated abelian group, coordinates listed free
/// generators first. Torsion coordinates are kept reduced into [0, d).
struct CohomologyElement {
    AbelianGroupPresentation group;
    std::vector<Int128> coords;

    CohomologyElement(AbelianGroupPresentation g, std::vector<Int128> c)
        : group(std::move(g)), coords(std::move(c)) {
        if (coords.size() != group.generator_count())
            throw DimensionError("coordinate count does not match presentation");
        reduce();
    }

    static CohomologyElement zero(AbelianGroupPresentation g) {
        std::vector<Int128> c(g.generator_count());
        return {std::move(g), std::move(c)};
    }

    bool is_zero() const {
        for (const auto& x : coords)
            if (x != Int128{0}) return false;
        return true;
    }

    friend bool operator==(const CohomologyElement&, const CohomologyElement&) = default;

private:
    void reduce() {
        for (std::size_t j = 0; j < group.torsion.size(); ++j) {
            Int128& x = coords[group.free_rank + j];
            x = x % group.torsion[j];
            if (x < Int128{0}) x += group.torsion[j];
        }
    }
};

/// Homomorphism between presented groups, given by an integer matrix on
/// generators (columns indexed by source generators, rows by target ones).
/// Construction verifies the matrix kills the source relations, i.e. it is
/// well defined on torsion.
class PullbackMap {
public:
    PullbackMap(AbelianGroupPresentation source, AbelianGroupPresentation target,
                IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != target_.generator_count() ||
            matrix_.cols() != source_.generator_count())
            throw DimensionError("pullback matrix shape does not match presentations");
        for (std::size_t j = 0; j < source_.torsion.size(); ++j) {
            std::size_t col = source_.free_rank + j;
            Int128 d = source_.torsion[j];
            for (std::size_t i = 0; i < target_.generator_count(); ++i) {
                Int128 img = d * matrix_.at(i, col);
                if (i < target_.free_rank) {
                    if (img != Int128{0})
                        throw std::invalid_argument(
                            "map not well defined on torsion generator " + std::to_string(j));
                } else if (img % target_.torsion[i - target_.free_rank] != Int128{0}) {
                    throw std::invalid_argument(
                        "map not well defined on torsion generator " + std::to_string(j));
                }
            }
        }
    }

    const AbelianGroupPresentation& source() const { return source_; }
    const AbelianGroupPresentation& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    CohomologyElement apply(const CohomologyElement& x) const {
        if (!(x.group == source_)) throw DimensionError("element not in the source group");
        std::vector<Int128> y(target_.generator_count());
        for (std::size_t i = 0; i < y.size(); ++i)
            for (std::size_t j = 0; j < x.coords.size(); ++j)
                y[i] += matrix_.at(i, j) * x.coords[j];
        return {target_, std::move(y)};
    }

private:
    AbelianGroupPresentation source_;
    AbelianGroupPresentation target_;
    IntMatrix matrix_;
};

/// Does the pullback of the ambient Chern class equal the embedded one?
/// A contact embedding with trivial normal bundle forces equality, so a
/// mismatch obstructs the embedding.
inline bool pullback_condition(const CohomologyElement& c1_ambient, const PullbackMap& e_star,
                               const CohomologyElement& c1_embedded) {
    if (!(c1_embedded.group == e_star.target()))
        throw DimensionError("embedded class not in the pullback target");
    return e_star.apply(c1_ambient) == c1_embedded;
}

/// Admissible Chern coefficients k for a sphere-product target whose class
/// is 2k times a generator, constrained by the witness c1 evaluations one
/// insists on embedding: 2k must divide every witness.
struct DivisibilityConstraint {
    bool inconclusive{false};          // every witness was zero
    bool zero_excluded{false};         // some witness is nonzero, so k = 0 fails
    std::vector<long long> admissible; // positive representatives; -k admissible too

    bool admits(long long k) const {
        if (k == 0) return !zero_excluded;
        if (inconclusive) return true;
        return std::find(admissible.begin(), admissible.end(), k < 0 ? -k : k) !=
               admissible.end();
    }
};

inline DivisibilityConstraint s2s3_target_constraint(const std::vector<long long>& witnesses) {
    if (witnesses.empty())
        throw std::invalid_argument("witness list must be nonempty");
    long long g = 0;
    for (long long w : witnesses) {
        long long a = w < 0 ? -w : w;
        while (a != 0) {
            long long t = g % a;
            g = a;
            a = t;
        }
        // g now holds gcd(previous g, |w|)
    }
    DivisibilityConstraint out;
    if (g == 0) {
        out.inconclusive = true; // all witnesses zero: no constraint on k
        return out;
    }
    out.zero_excluded = true;
    for (long long k = 1; 2 * k <= g; ++k)
        if (g % (2 * k) == 0) out.admissible.push_back(k);
    return out;
}

/// Obstruction-theory difference of two almost contact structures on a
/// sphere product, from 2 d(eta, eta') = c1(eta) - c1(eta') evaluated on the
/// generator. Both Chern numbers are even, so an odd difference is an error.
inline long long difference_class(long long c1_eta, long long c1_eta_prime) {
    long long diff = c1_eta - c1_eta_prime;
    if (diff % 2 != 0)
        throw std::invalid_argument(
            "difference of Chern numbers must be even; no almost contact pair realizes " +
            std::to_string(diff));
    return diff / 2;
}

} // namespace spunembed
