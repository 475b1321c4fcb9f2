#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spunembed/mcg.hpp"

using namespace spunembed;

namespace {

TwistWord random_word(std::mt19937_64& rng, const CurveRegistry& reg, std::size_t max_len) {
    std::vector<std::string> names;
    for (const auto& c : reg.curves()) names.push_back(c.name());
    std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, names.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<TwistLetter> letters;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) letters.push_back({names[pick(rng)], coin(rng) ? 1 : -1});
    return TwistWord(reg, std::move(letters));
}

} // namespace

TEST_CASE("transvection about a1 at genus 1", "[mcg]") {
    CurveClass a1("a1", {1, 0});
    IntMatrix t = transvection_matrix(a1, +1);
    // a1 fixed, b1 -> b1 - a1
    REQUIRE(t.at(0, 0) == Int128{1});
    REQUIRE(t.at(1, 0) == Int128{0});
    REQUIRE(t.at(0, 1) == Int128{-1});
    REQUIRE(t.at(1, 1) == Int128{1});
}

TEST_CASE("opposite twists compose to the identity", "[mcg]") {
    CurveClass c("c", {2, -1, 3, 1});
    REQUIRE(transvection_matrix(c, +1) * transvection_matrix(c, -1) ==
            IntMatrix::identity(4));
}

TEST_CASE("separating curves act trivially on homology", "[mcg]") {
    CurveClass sep("sep", {0, 0}, true);
    REQUIRE(transvection_matrix(sep, +1) == IntMatrix::identity(2));
}

TEST_CASE("trefoil word has |det(Phi - I)| = 1", "[mcg]") {
    CurveRegistry reg = standard_registry(1);
    TwistWord w(reg, {{"gamma1", +1}, {"gamma2", +1}});
    IntMatrix phi = word_action(w);
    IntMatrix d = phi - IntMatrix::identity(2);
    Int128 det = d.at(0, 0) * d.at(1, 1) - d.at(0, 1) * d.at(1, 0);
    REQUIRE(abs(det) == Int128{1});
}

TEST_CASE("empty word acts as the identity", "[mcg]") {
    CurveRegistry reg = standard_registry(2);
    REQUIRE(word_action(TwistWord(reg)) == IntMatrix::identity(4));
}

TEST_CASE("word followed by formal inverse acts trivially", "[mcg]") {
    std::mt19937_64 rng(11);
    for (int g : {1, 2, 3}) {
        CurveRegistry reg = standard_registry(g);
        for (int trial = 0; trial < 20; ++trial) {
            TwistWord w = random_word(rng, reg, 12);
            REQUIRE(word_action(concatenate(w, formal_inverse(w))) ==
                    IntMatrix::identity(static_cast<std::size_t>(2 * g)));
        }
    }
}

TEST_CASE("word action is an anti-ordered homomorphism", "[mcg]") {
    std::mt19937_64 rng(12);
    CurveRegistry reg = standard_registry(3);
    for (int trial = 0; trial < 40; ++trial) {
        TwistWord w1 = random_word(rng, reg, 15);
        TwistWord w2 = random_word(rng, reg, 15);
        REQUIRE(word_action(concatenate(w1, w2)) == word_action(w2) * word_action(w1));
    }
}

TEST_CASE("transvections are symplectic, scalings are not", "[mcg]") {
    REQUIRE(is_symplectic(IntMatrix::identity(2)));
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> entry(-4, 4);
    for (int g : {1, 2, 3}) {
        std::size_t n = static_cast<std::size_t>(2 * g);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Int128> v(n);
            bool zero = true;
            for (auto& x : v) {
                x = entry(rng);
                if (x != Int128{0}) zero = false;
            }
            if (zero) v[0] = 1;
            REQUIRE(is_symplectic(transvection_matrix(CurveClass("c", v), trial % 2 ? 1 : -1)));
        }
    }
    IntMatrix bad(2, 2);
    bad.at(0, 0) = 2;
    bad.at(1, 1) = 1;
    REQUIRE_FALSE(is_symplectic(bad));
    REQUIRE_THROWS_AS(is_symplectic(IntMatrix::identity(3)), DimensionError);
}

TEST_CASE("random words act symplectically", "[mcg]") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        int g = 1 + static_cast<int>(rng() % 4);
        CurveRegistry reg = standard_registry(g);
        REQUIRE(is_symplectic(word_action(random_word(rng, reg, 50))));
    }
}

TEST_CASE("conjugation preserves the invariant factors of Phi - I", "[mcg]") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        int g = 1 + static_cast<int>(rng() % 3);
        CurveRegistry reg = standard_registry(g);
        TwistWord w = random_word(rng, reg, 15);
        TwistWord v = random_word(rng, reg, 8);
        IntMatrix phi = word_action(w);
        IntMatrix psi = word_action(conjugate(w, v));
        REQUIRE(cokernel_presentation(phi - IntMatrix::identity(phi.rows())) ==
                cokernel_presentation(psi - IntMatrix::identity(psi.rows())));
    }
}

TEST_CASE("letters must reference registered curves with unit signs", "[mcg]") {
    CurveRegistry reg = standard_registry(1);
    REQUIRE_THROWS_AS(TwistWord(reg, {{"gamma9", +1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(TwistWord(reg, {{"gamma1", 2}}), std::invalid_argument);
}

TEST_CASE("words are never normalized", "[mcg]") {
    CurveRegistry reg = standard_registry(1);
    TwistWord w(reg, {{"gamma1", +1}, {"gamma1", -1}});
    REQUIRE(w.size() == 2); // literal storage, even though the action is trivial
    REQUIRE(word_action(w) == IntMatrix::identity(2));
}
