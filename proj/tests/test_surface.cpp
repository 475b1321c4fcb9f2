#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spunembed/surface.hpp"

using namespace spunembed;

namespace {

std::vector<Int128> basis(int g, int index) {
    std::vector<Int128> v(static_cast<std::size_t>(2 * g));
    v[static_cast<std::size_t>(index)] = 1;
    return v;
}

} // namespace

TEST_CASE("registry chain classes at genus 3", "[surface]") {
    CurveRegistry reg = standard_registry(3);
    REQUIRE_FALSE(reg.truncated());
    REQUIRE(reg.curves().size() == 8);
    REQUIRE(reg.get("gamma1").vec() == basis(3, 0));  // a1
    REQUIRE(reg.get("gamma2").vec() == basis(3, 1));  // b1
    REQUIRE(reg.get("gamma4").vec() == basis(3, 3));  // b2
    REQUIRE(reg.get("gamma6").vec() == basis(3, 5));  // b3
    std::vector<Int128> a1a2 = basis(3, 0);
    a1a2[2] = 1;
    REQUIRE(reg.get("gamma3").vec() == a1a2);
}

TEST_CASE("chain intersection pattern", "[surface]") {
    for (int g : {3, 4, 5}) {
        CurveRegistry reg = standard_registry(g);
        for (int j = 1; j <= 2 * g; ++j)
            for (int k = 1; k <= 2 * g; ++k) {
                Int128 p = pairing(reg.get(gamma_name(static_cast<std::size_t>(j))),
                                   reg.get(gamma_name(static_cast<std::size_t>(k))));
                if (j == k || std::abs(j - k) >= 2)
                    REQUIRE(p == Int128{0});
                else
                    REQUIRE(abs(p) == Int128{1});
            }
    }
}

TEST_CASE("bounding relation determines the last curve mod 2", "[surface]") {
    CurveRegistry reg = standard_registry(3);
    auto lhs = mod2_class(reg.get("gamma8"));
    auto sum = mod2_class(reg.get("gamma1"));
    auto g3 = mod2_class(reg.get("gamma3"));
    auto g5 = mod2_class(reg.get("gamma5"));
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (sum[i] ^ g3[i] ^ g5[i]) & 1u;
    REQUIRE(lhs == sum);
    REQUIRE(lhs == mod2_class(CurveClass("a3", basis(3, 4)))); // reduces to a3
}

TEST_CASE("gamma7 reduces to a2 mod 2", "[surface]") {
    CurveRegistry reg = standard_registry(3);
    REQUIRE(mod2_class(reg.get("gamma7")) == mod2_class(CurveClass("a2", basis(3, 2))));
}

TEST_CASE("pairing on the defining basis", "[surface]") {
    CurveClass a1("a1", basis(1, 0)), b1("b1", basis(1, 1));
    REQUIRE(pairing(a1, b1) == Int128{1});
    REQUIRE(pairing(b1, a1) == Int128{-1});
    CurveClass a1g2("a1", basis(2, 0)), a2g2("a2", basis(2, 2)), b2g2("b2", basis(2, 3));
    REQUIRE(pairing(a1g2, a2g2) == Int128{0});
    std::vector<Int128> sum = basis(2, 0);
    sum[2] = 1;
    REQUIRE(pairing(CurveClass("a1+a2", sum), b2g2) == Int128{1});
}

TEST_CASE("pairing is bilinear and antisymmetric on random classes", "[surface]") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long long> entry(-6, 6);
    for (int g : {1, 2, 3, 4}) {
        std::size_t n = static_cast<std::size_t>(2 * g);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Int128> x(n), y(n), z(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = entry(rng);
                y[i] = entry(rng);
                z[i] = entry(rng);
            }
            REQUIRE(pairing(x, y) == -pairing(y, x));
            std::vector<Int128> xz(n);
            for (std::size_t i = 0; i < n; ++i) xz[i] = x[i] + z[i];
            REQUIRE(pairing(xz, y) == pairing(x, y) + pairing(z, y));
        }
    }
}

TEST_CASE("mod2 reduction", "[surface]") {
    REQUIRE(mod2_class(std::vector<Int128>{1, 0}) == std::vector<std::uint8_t>{1, 0});
    REQUIRE(mod2_class(std::vector<Int128>{2, 0}) == std::vector<std::uint8_t>{0, 0});
    REQUIRE(mod2_class(std::vector<Int128>{1, -1}) == std::vector<std::uint8_t>{1, 1});
    REQUIRE(mod2_class(std::vector<Int128>{-3, 4}) == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("small-genus registries are truncated with a warning flag", "[surface]") {
    CurveRegistry g1 = standard_registry(1);
    REQUIRE(g1.truncated());
    REQUIRE(g1.curves().size() == 2); // chain only
    REQUIRE_FALSE(g1.contains("gamma3"));

    CurveRegistry g2 = standard_registry(2);
    REQUIRE(g2.truncated());
    REQUIRE(g2.curves().size() == 5); // chain plus gamma5
    REQUIRE(g2.contains("gamma5"));
    REQUIRE_FALSE(g2.contains("gamma6"));

    REQUIRE_THROWS_AS(standard_registry(0), std::invalid_argument);
}

TEST_CASE("zero classes need the separating flag", "[surface]") {
    REQUIRE_THROWS_AS(CurveClass("bad", std::vector<Int128>{0, 0}), std::invalid_argument);
    CurveClass ok("sep", std::vector<Int128>{0, 0}, true);
    REQUIRE(ok.separating());
}

TEST_CASE("dimension mismatches are rejected", "[surface]") {
    CurveClass a("a", basis(1, 0));
    CurveClass b("b", basis(2, 0));
    REQUIRE_THROWS_AS(pairing(a, b), DimensionError);
    CurveRegistry reg = standard_registry(2);
    REQUIRE_THROWS_AS(reg.add(a), DimensionError);
    REQUIRE_THROWS_AS(reg.get("nope"), std::invalid_argument);
}
