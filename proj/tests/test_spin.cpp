#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spunembed/spin.hpp"

using namespace spunembed;

namespace {

std::vector<QuadraticForm> all_forms(int g) {
    std::size_t n = static_cast<std::size_t>(2 * g);
    std::vector<QuadraticForm> forms;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1);
        forms.emplace_back(g, std::move(bits));
    }
    return forms;
}

CurveClass basis_curve(int g, const std::string& name, int index) {
    std::vector<Int128> v(static_cast<std::size_t>(2 * g));
    v[static_cast<std::size_t>(index)] = 1;
    return {name, std::move(v)};
}

} // namespace

TEST_CASE("evaluation expands with the intersection cross terms", "[spin]") {
    QuadraticForm zero = QuadraticForm::zero(1);
    REQUIRE(evaluate(zero, {1, 0}) == 0);
    REQUIRE(evaluate(zero, {1, 1}) == 1); // q(a+b) = q(a)+q(b)+<a,b>
    QuadraticForm ones(1, {1, 1});
    REQUIRE(evaluate(ones, {1, 1}) == 1); // 1+1+1
    REQUIRE_THROWS_AS(evaluate(zero, {1, 0, 0, 0}), DimensionError);
}

TEST_CASE("the quadratic relation holds for every form and pair", "[spin]") {
    for (int g : {1, 2}) {
        std::size_t n = static_cast<std::size_t>(2 * g);
        for (const auto& q : all_forms(g))
            for (std::size_t xm = 0; xm < (std::size_t{1} << n); ++xm)
                for (std::size_t ym = 0; ym < (std::size_t{1} << n); ++ym) {
                    std::vector<std::uint8_t> x(n), y(n), xy(n);
                    unsigned cross = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        x[i] = (xm >> i) & 1;
                        y[i] = (ym >> i) & 1;
                        xy[i] = x[i] ^ y[i];
                    }
                    for (std::size_t i = 0; i + 1 < n; i += 2)
                        cross += x[i] * y[i + 1] + x[i + 1] * y[i];
                    REQUIRE(evaluate(q, xy) ==
                            ((evaluate(q, x) + evaluate(q, y) + cross) & 1u));
                }
    }
}

TEST_CASE("arf values", "[spin]") {
    REQUIRE(arf(QuadraticForm::zero(2)) == 0);
    REQUIRE(arf(QuadraticForm(1, {1, 1})) == 1);
    REQUIRE(arf(QuadraticForm(3, {1, 1, 0, 1, 1, 1})) == 0); // the chain-stabilized form
}

TEST_CASE("pushforward by the identity word is trivial", "[spin]") {
    CurveRegistry reg = standard_registry(2);
    TwistWord empty(reg);
    for (const auto& q : all_forms(2)) REQUIRE(pushforward(q, empty) == q);
}

TEST_CASE("a twist about an anisotropic curve fixes the form", "[spin]") {
    for (const auto& q : all_forms(1)) {
        CurveClass a1 = basis_curve(1, "a1", 0);
        bool fixes = pushforward(q, a1) == q;
        REQUIRE(fixes == (evaluate(q, a1) == 1));
    }
}

TEST_CASE("pushforward of the zero form by a twist about a1", "[spin]") {
    QuadraticForm q = QuadraticForm::zero(1);
    QuadraticForm pushed = pushforward(q, basis_curve(1, "a1", 0));
    REQUIRE(pushed.basis_values() == std::vector<std::uint8_t>{0, 1}); // q'(b1) = 1
}

TEST_CASE("fix-iff law, exhaustive at small genus", "[spin]") {
    for (int g : {1, 2, 3}) {
        CurveRegistry reg = standard_registry(g);
        std::vector<CurveClass> classes = reg.curves();
        for (int i = 1; i <= g; ++i) {
            classes.push_back(basis_curve(g, "a" + std::to_string(i), 2 * (i - 1)));
            classes.push_back(basis_curve(g, "b" + std::to_string(i), 2 * (i - 1) + 1));
        }
        for (const auto& q : all_forms(g))
            for (const auto& c : classes)
                REQUIRE((pushforward(q, c) == q) == (evaluate(q, c) == 1));
    }
}

TEST_CASE("arf is preserved by pushforward", "[spin]") {
    // exhaustive over words of length 2 at g <= 2, then random words
    std::mt19937_64 rng(77);
    for (int g : {1, 2}) {
        CurveRegistry reg = standard_registry(g);
        std::vector<std::string> names;
        for (const auto& c : reg.curves()) names.push_back(c.name());
        for (const auto& q : all_forms(g))
            for (const auto& n1 : names)
                for (const auto& n2 : names) {
                    TwistWord w(reg, {{n1, +1}, {n2, -1}});
                    REQUIRE(arf(pushforward(q, w)) == arf(q));
                }
    }
    CurveRegistry reg3 = standard_registry(3);
    std::vector<std::string> names3;
    for (const auto& c : reg3.curves()) names3.push_back(c.name());
    std::uniform_int_distribution<std::size_t> len(0, 30), pick(0, names3.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    auto forms3 = all_forms(3);
    std::uniform_int_distribution<std::size_t> fpick(0, forms3.size() - 1);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<TwistLetter> letters;
        std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i)
            letters.push_back({names3[pick(rng)], coin(rng) ? 1 : -1});
        TwistWord w(reg3, std::move(letters));
        const QuadraticForm& q = forms3[fpick(rng)];
        REQUIRE(arf(pushforward(q, w)) == arf(q));
    }
}

TEST_CASE("fixed forms of the genus 3 chain", "[spin]") {
    CurveRegistry reg = standard_registry(3);
    std::vector<CurveClass> chain;
    for (int i = 1; i <= 6; ++i) chain.push_back(reg.get(gamma_name(static_cast<std::size_t>(i))));

    auto fixed = fixed_forms(chain);
    REQUIRE(fixed.size() == 1);
    REQUIRE(fixed.front().basis_values() ==
            std::vector<std::uint8_t>{1, 1, 0, 1, 1, 1});

    auto with_g8 = chain;
    with_g8.push_back(reg.get("gamma8"));
    REQUIRE(fixed_forms(with_g8) == fixed); // q0(a3) = 1 stays consistent

    auto with_g7 = chain;
    with_g7.push_back(reg.get("gamma7"));
    REQUIRE(fixed_forms(with_g7).empty()); // q0(a2) = 0 contradicts the constraint
}

TEST_CASE("orbits at genus 1", "[spin]") {
    std::vector<CurveClass> alphabet = {basis_curve(1, "a1", 0), basis_curve(1, "b1", 1)};
    QuadraticForm odd(1, {1, 1});
    REQUIRE(orbit(odd, alphabet).size() == 1); // the unique odd form is alone
    QuadraticForm even = QuadraticForm::zero(1);
    REQUIRE(orbit(even, alphabet).size() == 3);
}

TEST_CASE("forms with q = 1 on the whole alphabet are fixed points", "[spin]") {
    CurveRegistry reg = standard_registry(3);
    std::vector<CurveClass> chain;
    for (int i = 1; i <= 6; ++i) chain.push_back(reg.get(gamma_name(static_cast<std::size_t>(i))));
    QuadraticForm q0(3, {1, 1, 0, 1, 1, 1});
    REQUIRE(orbit(q0, chain) == std::set<QuadraticForm>{q0});
}

TEST_CASE("orbit genus cap", "[spin]") {
    REQUIRE_THROWS_AS(orbit(QuadraticForm::zero(6), {basis_curve(6, "a1", 0)}),
                      std::invalid_argument);
}

TEST_CASE("non-generation certificates", "[spin]") {
    CurveRegistry reg = standard_registry(3);
    std::vector<CurveClass> with_g8, with_g7;
    for (int i = 1; i <= 6; ++i) {
        with_g8.push_back(reg.get(gamma_name(static_cast<std::size_t>(i))));
        with_g7.push_back(reg.get(gamma_name(static_cast<std::size_t>(i))));
    }
    with_g8.push_back(reg.get("gamma8"));
    with_g7.push_back(reg.get("gamma7"));

    auto cert = non_generation_certificate(with_g8);
    REQUIRE(cert.has_value());
    REQUIRE(cert->verified());
    for (const auto& c : cert->alphabet)
        REQUIRE(pushforward(cert->fixed_form, c) == cert->fixed_form);

    REQUIRE_FALSE(non_generation_certificate(with_g7).has_value());

    // single-curve alphabet: lexicographically least fixed form is reported
    auto single = non_generation_certificate({basis_curve(1, "a1", 0)});
    REQUIRE(single.has_value());
    REQUIRE(single->fixed_form.basis_values() == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("alphabet preconditions", "[spin]") {
    REQUIRE_THROWS_AS(fixed_forms({}), std::invalid_argument);
    REQUIRE_THROWS_AS(
        fixed_forms({basis_curve(1, "a1", 0), basis_curve(2, "a1", 0)}), DimensionError);
    REQUIRE_THROWS_AS(pushforward(QuadraticForm::zero(1), basis_curve(2, "a1", 0)),
                      DimensionError);
}
