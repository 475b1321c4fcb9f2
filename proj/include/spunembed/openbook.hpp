#pragma once

#include <string>
#include <utility>

#include "spunembed/algebra.hpp"
#include "spunembed/mcg.hpp"

namespace spunembed {

/// Open book with page the genus-g model surface (one boundary component)
/// and monodromy the given twist word.
struct OpenBookDescriptor {
    int genus;
    TwistWord word;
    std::string label;

    OpenBookDescriptor(int g, TwistWord w, std::string l = {})
        : genus(g), word(std::move(w)), label(std::move(l)) {
        if (word.genus() != genus)
            throw DimensionError("monodromy registry genus does not match page genus");
    }
};

/// H1 of the closed 3-manifold bound by the open book. For a page with one
/// boundary component the Wang sequence collapses to coker(Phi - I).
inline AbelianGroupPresentation first_homology(const OpenBookDescriptor& ob) {
    IntMatrix phi = word_action(ob.word);
    return cokernel_presentation(phi - IntMatrix::identity(phi.rows()));
}

/// Is c twice some class in h2? A first Chern class of a co-oriented contact
/// structure on a 3-manifold must be, so failures rule candidate classes out.
inline bool is_c1_even_candidate(const AbelianGroupPresentation& h2,
                                 const std::vector<Int128>& c) {
    return solve_divisibility(h2, c, Int128{2});
}

} // namespace spunembed
