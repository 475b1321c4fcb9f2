#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spunembed/contactcheck.hpp"
#include "spunembed/embedder.hpp"
#include "spunembed/handle5.hpp"
#include "spunembed/lefschetz.hpp"
#include "spunembed/obstruct.hpp"
#include "spunembed/openbook.hpp"
#include "spunembed/spin.hpp"

namespace spunembed {

/// The replayable verification suite: every calibration fact and invariant
/// the library is contractually required to reproduce, one result per
/// criterion. Randomized sections derive from the given seed.
struct CriterionResult {
    std::string name;
    bool pass;
    std::string detail;
};

namespace acceptance {

inline constexpr std::uint64_t default_seed = 20170824;

namespace detail {

inline TwistWord random_word(std::mt19937_64& rng, const CurveRegistry& reg,
                             const std::vector<std::string>& alphabet, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<TwistLetter> letters;
    std::size_t n = len(rng);
    letters.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        letters.push_back({alphabet[pick(rng)], coin(rng) ? +1 : -1});
    return TwistWord(reg, std::move(letters));
}

inline std::vector<std::string> registry_names(const CurveRegistry& reg) {
    std::vector<std::string> names;
    for (const auto& c : reg.curves()) names.push_back(c.name());
    return names;
}

inline std::vector<QuadraticForm> all_forms(int g) {
    std::size_t n = static_cast<std::size_t>(2 * g);
    std::vector<QuadraticForm> forms;
    forms.reserve(static_cast<std::size_t>(1) << n);
    for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n); ++mask) {
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1);
        forms.emplace_back(g, std::move(bits));
    }
    return forms;
}

inline std::optional<Int128> boundary_h1_order(LefschetzPreset p, int g) {
    return first_homology(boundary_open_book(preset(p, g))).order();
}

} // namespace detail

// criterion 1: boundary homology of the calibrated presets, genus by genus
inline CriterionResult calibration() {
    std::ostringstream detail;
    bool pass = true;
    for (int g : {3, 4, 5}) {
        auto o3 = detail::boundary_h1_order(LefschetzPreset::EMinus3, g);
        auto o4 = detail::boundary_h1_order(LefschetzPreset::EMinus4, g);
        auto od = detail::boundary_h1_order(LefschetzPreset::Disk, g);
        bool here = o3 && *o3 == Int128{3} && o4 && *o4 == Int128{4} && od && *od == Int128{1};
        pass = pass && here;
        detail << "g=" << g << ": |H1| = " << (o3 ? to_string(*o3) : "inf") << ","
               << (o4 ? to_string(*o4) : "inf") << "," << (od ? to_string(*od) : "inf")
               << " (want 3,4,1) ";
    }
    return {"calibration-E3-E4-DISK", pass, detail.str()};
}

// criterion 2: the S5 page preset has chi = 5 and S3 boundary
inline CriterionResult s5_page() {
    std::ostringstream detail;
    bool pass = true;
    for (int g : {3, 4}) {
        LefschetzDescriptor d = preset(LefschetzPreset::S5Page, g);
        long long chi = euler_characteristic(d);
        auto o = first_homology(boundary_open_book(d)).order();
        bool here = chi == 5 && o && *o == Int128{1};
        pass = pass && here;
        detail << "g=" << g << ": chi=" << chi << " |H1|=" << (o ? to_string(*o) : "inf")
               << " ";
    }
    return {"s5-page-preset", pass, detail.str()};
}

// criterion 3: the two fixed-form computations and the certificate
inline CriterionResult spin_obstruction() {
    std::ostringstream detail;
    bool pass = true;
    for (int g : {3, 4}) {
        CurveRegistry reg = standard_registry(g);
        std::vector<CurveClass> chain_plus_last, chain_plus_2g1;
        for (int i = 1; i <= 2 * g; ++i) {
            chain_plus_last.push_back(reg.get(gamma_name(static_cast<std::size_t>(i))));
            chain_plus_2g1.push_back(reg.get(gamma_name(static_cast<std::size_t>(i))));
        }
        chain_plus_last.push_back(reg.get(gamma_name(static_cast<std::size_t>(2 * g + 2))));
        chain_plus_2g1.push_back(reg.get(gamma_name(static_cast<std::size_t>(2 * g + 1))));

        auto with_last = fixed_forms(chain_plus_last);
        auto with_2g1 = fixed_forms(chain_plus_2g1);
        auto cert = non_generation_certificate(chain_plus_last);
        bool replay_ok = cert.has_value() && cert->verified();
        if (replay_ok)
            for (const auto& c : cert->alphabet)
                replay_ok = replay_ok && pushforward(cert->fixed_form, c) == cert->fixed_form;
        bool here = with_last.size() == 1 && with_2g1.empty() && replay_ok &&
                    !non_generation_certificate(chain_plus_2g1).has_value();
        pass = pass && here;
        detail << "g=" << g << ": |fixed(chain+g" << 2 * g + 2 << ")|=" << with_last.size()
               << " |fixed(chain+g" << 2 * g + 1 << ")|=" << with_2g1.size()
               << " cert=" << (replay_ok ? "replays" : "fails") << " ";
    }
    return {"spin-non-generation", pass, detail.str()};
}

// criterion 4: two twist orbits on forms, split exactly by Arf
inline CriterionResult spin_orbits() {
    std::ostringstream detail;
    bool pass = true;
    for (int g : {1, 2, 3}) {
        CurveRegistry reg = standard_registry(g);
        std::vector<CurveClass> alphabet;
        for (const auto& c : reg.curves())
            if (c.name() != gamma_name(static_cast<std::size_t>(2 * g + 2)))
                alphabet.push_back(c); // gamma_1 .. gamma_{2g+1} where defined

        std::map<std::vector<std::uint8_t>, int> orbit_of;
        std::vector<std::size_t> sizes;
        std::vector<std::uint8_t> arfs;
        bool arf_constant = true;
        for (const auto& q : detail::all_forms(g)) {
            if (orbit_of.count(q.basis_values())) continue;
            auto orb = orbit(q, alphabet);
            int id = static_cast<int>(sizes.size());
            std::uint8_t a = arf(q);
            for (const auto& member : orb) {
                orbit_of[member.basis_values()] = id;
                if (arf(member) != a) arf_constant = false;
            }
            sizes.push_back(orb.size());
            arfs.push_back(a);
        }
        std::size_t even_expected =
            (static_cast<std::size_t>(1) << (g - 1)) * ((static_cast<std::size_t>(1) << g) + 1);
        std::size_t odd_expected =
            (static_cast<std::size_t>(1) << (g - 1)) * ((static_cast<std::size_t>(1) << g) - 1);
        bool here = sizes.size() == 2 && arf_constant && arfs[0] != arfs[1];
        if (here) {
            std::size_t even_size = arfs[0] == 0 ? sizes[0] : sizes[1];
            std::size_t odd_size = arfs[0] == 0 ? sizes[1] : sizes[0];
            here = even_size == even_expected && odd_size == odd_expected;
        }
        pass = pass && here;
        detail << "g=" << g << ": " << sizes.size() << " orbits";
        for (std::size_t i = 0; i < sizes.size(); ++i)
            detail << " size=" << sizes[i] << "(Arf " << int(arfs[i]) << ")";
        detail << " ";
    }
    return {"spin-orbit-partition", pass, detail.str()};
}

// criterion 5: a single twist fixes q exactly when q(c) = 1
inline CriterionResult fix_iff() {
    std::ostringstream detail;
    bool pass = true;
    long long checked = 0;
    for (int g : {1, 2, 3}) {
        CurveRegistry reg = standard_registry(g);
        std::vector<CurveClass> classes = reg.curves();
        for (int i = 1; i <= g; ++i) { // include the basis classes
            std::vector<Int128> a(static_cast<std::size_t>(2 * g)),
                b(static_cast<std::size_t>(2 * g));
            a[static_cast<std::size_t>(2 * (i - 1))] = 1;
            b[static_cast<std::size_t>(2 * (i - 1) + 1)] = 1;
            classes.push_back(CurveClass("a" + std::to_string(i), std::move(a)));
            classes.push_back(CurveClass("b" + std::to_string(i), std::move(b)));
        }
        for (const auto& q : detail::all_forms(g))
            for (const auto& c : classes) {
                bool fixes = pushforward(q, c) == q;
                bool anisotropic = evaluate(q, c) == 1;
                if (fixes != anisotropic) pass = false;
                ++checked;
            }
    }
    detail << checked << " (form, class) pairs, g <= 3";
    return {"fix-iff-law", pass, detail.str()};
}

// criterion 6: symplecticity and conjugation invariance of coker(Phi - I)
inline CriterionResult symplectic_suite(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x6u);
    std::ostringstream detail;
    bool pass = true;
    std::uniform_int_distribution<int> genus_pick(1, 4);

    for (int trial = 0; trial < 1000; ++trial) {
        int g = genus_pick(rng);
        CurveRegistry reg = standard_registry(g);
        TwistWord w = detail::random_word(rng, reg, detail::registry_names(reg), 50);
        if (!is_symplectic(word_action(w))) {
            pass = false;
            detail << "non-symplectic action at trial " << trial << " ";
            break;
        }
    }
    for (int trial = 0; trial < 200 && pass; ++trial) {
        int g = genus_pick(rng);
        CurveRegistry reg = standard_registry(g);
        auto names = detail::registry_names(reg);
        TwistWord w = detail::random_word(rng, reg, names, 20);
        TwistWord v = detail::random_word(rng, reg, names, 10);
        IntMatrix phi = word_action(w);
        IntMatrix psi = word_action(conjugate(w, v));
        auto inv1 = cokernel_presentation(phi - IntMatrix::identity(phi.rows()));
        auto inv2 = cokernel_presentation(psi - IntMatrix::identity(psi.rows()));
        if (!(inv1 == inv2)) {
            pass = false;
            detail << "conjugation changed invariant factors at trial " << trial << " ";
        }
    }
    detail << "1000 symplectic words + 200 conjugation pairs, g <= 4";
    return {"transvection-symplectic-suite", pass, detail.str()};
}

// criterion 7: certify/verify round trips per target, plus mutation failures
inline CriterionResult embedding_roundtrip(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x7u);
    std::ostringstream detail;
    bool pass = true;
    const int g = 3;
    CurveRegistry reg = standard_registry(g);

    struct TargetAlphabet {
        EmbedTarget target;
        std::vector<std::string> names;
    };
    std::vector<TargetAlphabet> table = {
        {EmbedTarget::S5Contact, {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6"}},
        {EmbedTarget::S5Smooth,
         {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6", "gamma8"}},
        {EmbedTarget::S2xS3,
         {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6", "gamma8"}},
        {EmbedTarget::S2xTwistedS3,
         {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6", "gamma7"}}};

    long long mutations_caught = 0, trips = 0;
    for (const auto& [target, names] : table) {
        for (int trial = 0; trial < 500 && pass; ++trial) {
            TwistWord w = detail::random_word(rng, reg, names, 30);
            OpenBookDescriptor ob(g, w, "roundtrip");
            EmbeddingCertificate cert = certify(ob, target);
            if (!verify(cert).all_pass()) {
                pass = false;
                detail << "round trip failed for " << target_name(target) << " at trial "
                       << trial << " ";
                break;
            }
            ++trips;
            if (!cert.path.steps.empty()) {
                EmbeddingCertificate bad = cert;
                std::uniform_int_distribution<std::size_t> pick(0, bad.path.steps.size() - 1);
                std::size_t at = pick(rng);
                bad.path.steps[at].kind = bad.path.steps[at].kind == LoopKind::c
                                              ? LoopKind::c_prime
                                              : LoopKind::c;
                if (verify(bad).all_pass()) {
                    pass = false;
                    detail << "mutated certificate still verifies for "
                           << target_name(target) << " ";
                    break;
                }
                ++mutations_caught;
            }
        }
    }
    // a contact flag over an achiral fibration must fail
    {
        TwistWord w(reg, {{"gamma8", +1}});
        EmbeddingCertificate cert = certify(OpenBookDescriptor(g, w), EmbedTarget::S5Smooth);
        EmbeddingCertificate bad = cert;
        bad.contact = true;
        if (cert.contact || verify(bad).all_pass()) {
            pass = false;
            detail << "contact flag violation passed ";
        }
    }
    detail << trips << " round trips, " << mutations_caught << " mutations rejected";
    return {"embedding-round-trips", pass, detail.str()};
}

// criterion 8: the Chern-class calculus
inline CriterionResult chern_calculus() {
    bool pass = true;
    std::ostringstream detail;

    AbelianGroupPresentation z;
    z.free_rank = 1;
    AbelianGroupPresentation target;
    target.free_rank = 1;
    target.torsion = {3};
    IntMatrix m(2, 1);
    m.at(0, 0) = 1;
    m.at(1, 0) = 2;
    PullbackMap e(z, target, m);

    CohomologyElement zero_w = CohomologyElement::zero(z);
    CohomologyElement zero_m = CohomologyElement::zero(target);
    CohomologyElement nonzero_m(target, {Int128{2}, Int128{1}});
    pass = pass && pullback_condition(zero_w, e, zero_m);
    pass = pass && !pullback_condition(zero_w, e, nonzero_m);
    CohomologyElement two_h(z, {Int128{2}});
    pass = pass && pullback_condition(two_h, e, e.apply(two_h));

    DivisibilityConstraint c2 = s2s3_target_constraint({2});
    pass = pass && c2.admissible == std::vector<long long>{1} && c2.zero_excluded &&
           c2.admits(1) && c2.admits(-1) && !c2.admits(0) && !c2.admits(2);
    DivisibilityConstraint c4 = s2s3_target_constraint({4});
    pass = pass && c4.admissible == std::vector<long long>{1, 2};
    DivisibilityConstraint c0 = s2s3_target_constraint({0});
    pass = pass && c0.inconclusive && c0.admits(0) && c0.admits(7);

    pass = pass && difference_class(2, 0) == 1 && difference_class(-2, 0) == -1 &&
           difference_class(0, 0) == 0;
    bool threw = false;
    try {
        difference_class(3, 0);
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    pass = pass && threw;

    detail << "pullback, witness divisibility, difference class";
    return {"chern-obstruction-calculus", pass, detail.str()};
}

// criterion 9: handle ledgers for g <= 10 and random obstruction vectors
inline CriterionResult ledgers(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9u);
    bool pass = true;
    std::ostringstream detail;
    for (int g = 0; g <= 10 && pass; ++g) {
        HandleLedger s5 = build_s5_ledger(g);
        pass = pass && verify_ledger(s5).all_pass() &&
               s5.final_residue == std::vector<std::string>{"H0", "H5"};
        std::vector<long long> zero(static_cast<std::size_t>(g), 0);
        HandleLedger s2 = build_s2s3_ledger(g, zero);
        pass = pass && verify_ledger(s2).all_pass();
    }
    std::uniform_int_distribution<int> genus_pick(0, 10);
    std::uniform_int_distribution<long long> val(-10, 10);
    for (int trial = 0; trial < 100 && pass; ++trial) {
        int g = genus_pick(rng);
        std::vector<long long> o(static_cast<std::size_t>(g));
        for (auto& x : o) x = val(rng);
        HandleLedger led = build_s2s3_ledger(g, o);
        pass = pass && verify_ledger(led).all_pass();
        for (int j = 1; j <= g && pass; ++j) {
            const HandleRecord* r = led.find("D3_" + std::to_string(j));
            pass = pass && r && r->obstruction_k &&
                   *r->obstruction_k == -o[static_cast<std::size_t>(j - 1)];
        }
    }
    detail << "g <= 10 and 100 random obstruction vectors";
    return {"handle-ledgers", pass, detail.str()};
}

// criterion 10: the collar and binding verifiers
inline CriterionResult contact_verifier() {
    bool pass = true;
    std::ostringstream detail;
    GridSpec base{64, 64, 2};
    GridSpec fine{128, 128, 2};

    for (const char* name : {"constant", "circle", "synthetic"}) {
        CollarProfile p = profiles::by_name(name);
        CollarReport coarse = collar_min_k(p, base);
        CollarReport refined = collar_min_k(p, fine);

        double ht = 1.0 / 63.0, hs = 1.0 / 63.0;
        double scheme_tol = 25.0 * (ht * ht + hs * hs) *
                            std::max(1.0, std::exp(1.0) * (1.0 + std::fabs(coarse.min_dtB)));
        if (coarse.closed_vs_fd_disagreement > scheme_tol) {
            pass = false;
            detail << name << ": closed-vs-fd " << coarse.closed_vs_fd_disagreement
                   << " > tol " << scheme_tol << " ";
        }
        double rel = std::fabs(refined.k_star - coarse.k_star) /
                     std::max(refined.k_star, 1e-12);
        if (rel >= 0.01) {
            pass = false;
            detail << name << ": k_star moved " << rel * 100 << "% under refinement ";
        }
    }

    // synthetic profile: k_star must land on the designed minimum m + margin
    {
        double m = 0.5;
        CollarReport r = collar_min_k(profiles::synthetic_shear(m), base);
        if (std::fabs(r.k_star - (m + r.margin)) > 0.01 * m) {
            pass = false;
            detail << "synthetic k_star " << r.k_star << " vs designed " << m << " ";
        }
    }

    // binding model: the r^2 profile passes, the reversed roles fail
    {
        std::size_t n = 64;
        RadialProfile h1, h2, rev1, rev2;
        for (std::size_t i = 1; i <= n; ++i) {
            double r = static_cast<double>(i) / static_cast<double>(n);
            h1.r.push_back(r);
            h2.r.push_back(r);
            h1.h.push_back(2.0 - r * r);
            h2.h.push_back(r * r);
        }
        rev1.r = h1.r;
        rev2.r = h1.r;
        rev1.h = h2.h; // r^2 in the h1 slot
        rev2.h = std::vector<double>(n, 1.0);
        bool model_ok = binding_check(h1, h2).all_pass();
        RadialProfile ones{h1.r, std::vector<double>(n, 1.0)};
        bool flat_ok = binding_check(ones, h2).all_pass();
        bool reversed_fails = !binding_check(rev1, rev2).all_pass();
        if (!(model_ok && flat_ok && reversed_fails)) {
            pass = false;
            detail << "binding model checks failed ";
        }
    }
    detail << "closed-form agreement, 1% refinement stability, binding model";
    return {"contact-condition-verifier", pass, detail.str()};
}

} // namespace acceptance

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = acceptance::default_seed) {
    using namespace acceptance;
    return {
        calibration(),          s5_page(),
        spin_obstruction(),     spin_orbits(),
        fix_iff(),              symplectic_suite(seed),
        embedding_roundtrip(seed), chern_calculus(),
        ledgers(seed),          contact_verifier(),
    };
}

} // namespace spunembed
