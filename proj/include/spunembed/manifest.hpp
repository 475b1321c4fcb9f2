#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spunembed/contactcheck.hpp"
#include "spunembed/embedder.hpp"
#include "spunembed/handle5.hpp"
#include "spunembed/lefschetz.hpp"
#include "spunembed/obstruct.hpp"
#include "spunembed/openbook.hpp"
#include "spunembed/spin.hpp"

namespace spunembed {

/// JSON manifests, format_version "1". Objects use nlohmann's default
/// (sorted-key) representation, so serialization is canonical; unknown
/// fields are rejected on input.
namespace manifest {

using nlohmann::json;

inline constexpr const char* format_version = "1";

inline void require_keys(const json& j, const std::set<std::string>& required,
                         const std::set<std::string>& optional = {}) {
    if (!j.is_object()) throw ManifestError("manifest node must be an object");
    for (const auto& k : required)
        if (!j.contains(k)) throw ManifestError("manifest missing field: " + k);
    for (const auto& [k, v] : j.items())
        if (!required.count(k) && !optional.count(k))
            throw ManifestError("manifest has unknown field: " + k);
}

inline void check_envelope(const json& j, const std::string& kind) {
    if (!j.is_object() || !j.contains("format_version") || !j.contains("kind"))
        throw ManifestError("manifest must carry format_version and kind");
    if (j.at("format_version") != format_version)
        throw ManifestError("unsupported manifest format_version");
    if (j.at("kind") != kind)
        throw ManifestError("expected manifest kind " + kind + ", found " +
                            j.at("kind").dump());
}

inline json int128_to_json(Int128 x) {
    if (fits_int64(x)) return to_int64(x);
    return to_string(x);
}

inline Int128 int128_from_json(const json& j) {
    if (j.is_number_integer()) return Int128{j.get<long long>()};
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty()) throw ManifestError("empty integer literal");
        Int128 v = 0;
        std::size_t i = s[0] == '-' ? 1 : 0;
        if (i == s.size()) throw ManifestError("bad integer literal: " + s);
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw ManifestError("bad integer literal: " + s);
            v = v * Int128{10} + Int128{s[i] - '0'};
        }
        return s[0] == '-' ? -v : v;
    }
    throw ManifestError("expected an integer or decimal string");
}

inline json vector_to_json(const std::vector<Int128>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(int128_to_json(x));
    return a;
}

inline std::vector<Int128> vector_from_json(const json& j) {
    if (!j.is_array()) throw ManifestError("expected an integer array");
    std::vector<Int128> v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(int128_from_json(x));
    return v;
}

// --- curves and registries -------------------------------------------------

inline json curve_to_json(const CurveClass& c) {
    json j{{"name", c.name()}, {"vector", vector_to_json(c.vec())}};
    if (c.separating()) j["separating"] = true;
    return j;
}

inline CurveClass curve_from_json(const json& j) {
    require_keys(j, {"name", "vector"}, {"separating"});
    return CurveClass(j.at("name").get<std::string>(), vector_from_json(j.at("vector")),
                      j.value("separating", false));
}

inline json to_json(const CurveRegistry& reg) {
    json curves = json::array();
    for (const auto& c : reg.curves()) curves.push_back(curve_to_json(c));
    return json{{"format_version", format_version},
                {"kind", "curve_registry"},
                {"genus", reg.genus()},
                {"truncated", reg.truncated()},
                {"curves", curves}};
}

inline CurveRegistry registry_from_json(const json& j) {
    check_envelope(j, "curve_registry");
    require_keys(j, {"format_version", "kind", "genus", "curves"}, {"truncated"});
    CurveRegistry reg{SurfaceModel(j.at("genus").get<int>())};
    for (const auto& c : j.at("curves")) reg.add(curve_from_json(c));
    reg.set_truncated(j.value("truncated", false));
    return reg;
}

// --- twist words and open books ---------------------------------------------

namespace detail {

inline json word_fields(const TwistWord& w) {
    json letters = json::array();
    for (const auto& l : w.letters()) letters.push_back(json::array({l.curve, l.sign}));
    json extra = json::array();
    CurveRegistry standard = standard_registry(w.genus());
    for (const auto& c : w.registry().curves())
        if (!standard.contains(c.name()) || !(standard.get(c.name()) == c))
            extra.push_back(curve_to_json(c));
    json j{{"genus", w.genus()}, {"letters", letters}};
    if (!extra.empty()) j["extra_curves"] = extra;
    return j;
}

inline TwistWord word_from_fields(const json& j) {
    CurveRegistry reg = standard_registry(j.at("genus").get<int>());
    if (j.contains("extra_curves"))
        for (const auto& c : j.at("extra_curves")) reg.add(curve_from_json(c));
    std::vector<TwistLetter> letters;
    for (const auto& l : j.at("letters")) {
        if (!l.is_array() || l.size() != 2)
            throw ManifestError("letter must be a [curve, sign] pair");
        letters.push_back({l.at(0).get<std::string>(), l.at(1).get<int>()});
    }
    return TwistWord(std::move(reg), std::move(letters));
}

} // namespace detail

inline json to_json(const TwistWord& w) {
    json j = detail::word_fields(w);
    j["format_version"] = format_version;
    j["kind"] = "twist_word";
    return j;
}

inline TwistWord word_from_json(const json& j) {
    check_envelope(j, "twist_word");
    require_keys(j, {"format_version", "kind", "genus", "letters"}, {"extra_curves"});
    return detail::word_from_fields(j);
}

inline json to_json(const OpenBookDescriptor& ob) {
    json j = detail::word_fields(ob.word);
    j["format_version"] = format_version;
    j["kind"] = "open_book";
    j["label"] = ob.label;
    return j;
}

inline OpenBookDescriptor open_book_from_json(const json& j) {
    check_envelope(j, "open_book");
    require_keys(j, {"format_version", "kind", "genus", "letters"},
                 {"extra_curves", "label"});
    TwistWord w = detail::word_from_fields(j);
    int genus = j.at("genus").get<int>();
    return OpenBookDescriptor(genus, std::move(w), j.value("label", std::string{}));
}

// --- embedding certificates --------------------------------------------------

inline json to_json(const EmbeddingCertificate& cert) {
    json steps = json::array();
    for (const auto& s : cert.path.steps)
        steps.push_back(json::array(
            {s.cycle_index, s.kind == LoopKind::c ? std::string("c") : std::string("c'")}));
    json source = to_json(cert.source);
    source.erase("format_version");
    source.erase("kind");
    return json{{"format_version", format_version},
                {"kind", "embedding_certificate"},
                {"source", source},
                {"target_kind", target_name(cert.target_kind)},
                {"target_manifold", cert.target},
                {"preset", preset_name(target_preset(cert.target_kind))},
                {"steps", steps},
                {"contact", cert.contact},
                {"theorem_tag", cert.tag},
                {"collar_note", cert.collar_note}};
}

inline EmbeddingCertificate certificate_from_json(const json& j) {
    check_envelope(j, "embedding_certificate");
    require_keys(j, {"format_version", "kind", "source", "target_kind", "target_manifold",
                     "preset", "steps", "contact", "theorem_tag"},
                 {"collar_note"});
    json source = j.at("source");
    require_keys(source, {"genus", "letters"}, {"extra_curves", "label"});
    TwistWord w = detail::word_from_fields(source);
    OpenBookDescriptor ob(source.at("genus").get<int>(), std::move(w),
                          source.value("label", std::string{}));

    EmbedTarget kind = target_from_name(j.at("target_kind").get<std::string>());
    LefschetzDescriptor fib = preset(preset_from_name(j.at("preset").get<std::string>()),
                                     ob.genus);
    if (j.at("target_manifold").get<std::string>() != target_manifold(kind))
        throw ManifestError("certificate target_manifold disagrees with target_kind");

    PathSpec path;
    for (const auto& s : j.at("steps")) {
        if (!s.is_array() || s.size() != 2)
            throw ManifestError("step must be a [cycle_index, loop] pair");
        std::string loopkind = s.at(1).get<std::string>();
        if (loopkind != "c" && loopkind != "c'")
            throw ManifestError("loop kind must be \"c\" or \"c'\"");
        path.steps.push_back({s.at(0).get<std::size_t>(),
                              loopkind == "c" ? LoopKind::c : LoopKind::c_prime});
    }
    return EmbeddingCertificate{std::move(ob),
                                std::move(fib),
                                j.at("target_manifold").get<std::string>(),
                                kind,
                                std::move(path),
                                j.at("contact").get<bool>(),
                                j.at("theorem_tag").get<std::string>(),
                                j.value("collar_note", std::string{})};
}

// --- spin certificates --------------------------------------------------------

inline json to_json(const NonGenerationCertificate& cert) {
    json alphabet = json::array();
    for (const auto& c : cert.alphabet) alphabet.push_back(curve_to_json(c));
    json bits = json::array();
    for (auto b : cert.generator_fixes) bits.push_back(static_cast<int>(b));
    json form = json::array();
    for (auto b : cert.fixed_form.basis_values()) form.push_back(static_cast<int>(b));
    return json{{"format_version", format_version},
                {"kind", "non_generation_certificate"},
                {"genus", cert.fixed_form.genus()},
                {"fixed_form", form},
                {"alphabet", alphabet},
                {"generator_fixes", bits},
                {"statement",
                 "a spin structure fixed by every generating twist exists, so the twists "
                 "generate a subgroup of its stabilizer (theta group), not the full "
                 "mapping class group"},
                {"convention", "a twist about c fixes q exactly when q(c) = 1"}};
}

inline NonGenerationCertificate non_generation_from_json(const json& j) {
    check_envelope(j, "non_generation_certificate");
    require_keys(j, {"format_version", "kind", "genus", "fixed_form", "alphabet",
                     "generator_fixes"},
                 {"statement", "convention"});
    std::vector<std::uint8_t> form;
    for (const auto& b : j.at("fixed_form")) form.push_back(b.get<int>() ? 1 : 0);
    NonGenerationCertificate cert{QuadraticForm(j.at("genus").get<int>(), std::move(form)),
                                  {},
                                  {}};
    for (const auto& c : j.at("alphabet")) cert.alphabet.push_back(curve_from_json(c));
    for (const auto& b : j.at("generator_fixes"))
        cert.generator_fixes.push_back(b.get<int>() ? 1 : 0);
    return cert;
}

// --- ledgers -------------------------------------------------------------------

inline json to_json_request(const HandleLedger& ledger) {
    json j{{"format_version", format_version},
           {"kind", "ledger_request"},
           {"target", ledger.target},
           {"genus", ledger.heegaard_genus}};
    if (ledger.target == "S2xS3") j["obstructions"] = ledger.obstruction_inputs;
    return j;
}

inline HandleLedger ledger_from_request(const json& j) {
    check_envelope(j, "ledger_request");
    require_keys(j, {"format_version", "kind", "target", "genus"}, {"obstructions"});
    std::string target = j.at("target").get<std::string>();
    int g = j.at("genus").get<int>();
    if (target == "S5") return build_s5_ledger(g);
    if (target == "S2xS3") {
        std::vector<long long> o;
        if (j.contains("obstructions"))
            for (const auto& x : j.at("obstructions")) o.push_back(x.get<long long>());
        return build_s2s3_ledger(g, o);
    }
    throw ManifestError("ledger target must be S5 or S2xS3");
}

// --- obstruction instances -------------------------------------------------------

inline json group_to_json(const AbelianGroupPresentation& g) {
    return json{{"free_rank", g.free_rank}, {"torsion", vector_to_json(g.torsion)}};
}

inline AbelianGroupPresentation group_from_json(const json& j) {
    require_keys(j, {"free_rank", "torsion"});
    AbelianGroupPresentation g;
    g.free_rank = j.at("free_rank").get<std::size_t>();
    g.torsion = vector_from_json(j.at("torsion"));
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
        if (g.torsion[i] < Int128{2})
            throw ManifestError("torsion coefficients must be >= 2");
        if (i > 0 && g.torsion[i] % g.torsion[i - 1] != Int128{0})
            throw ManifestError("torsion coefficients must form a divisibility chain");
    }
    return g;
}

/// The three obstruction computations share one manifest kind, dispatched on
/// "mode": pullback | s2s3_constraint | difference.
struct ChernInstance {
    std::string mode;
    // pullback
    std::optional<CohomologyElement> ambient, embedded;
    std::optional<PullbackMap> map;
    // s2s3_constraint
    std::vector<long long> witnesses;
    // difference
    long long c1_eta{0}, c1_eta_prime{0};
};

inline ChernInstance chern_from_json(const json& j) {
    check_envelope(j, "chern_instance");
    ChernInstance inst;
    std::string mode = j.at("mode").get<std::string>();
    inst.mode = mode;
    if (mode == "pullback") {
        require_keys(j, {"format_version", "kind", "mode", "source_group", "target_group",
                         "matrix", "ambient_class", "embedded_class"});
        AbelianGroupPresentation src = group_from_json(j.at("source_group"));
        AbelianGroupPresentation dst = group_from_json(j.at("target_group"));
        const json& rows = j.at("matrix");
        IntMatrix m(dst.generator_count(), src.generator_count());
        if (!rows.is_array() || rows.size() != m.rows())
            throw ManifestError("matrix row count must match target generators");
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::vector<Int128> row = vector_from_json(rows.at(r));
            if (row.size() != m.cols())
                throw ManifestError("matrix column count must match source generators");
            for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = row[c];
        }
        inst.ambient = CohomologyElement(src, vector_from_json(j.at("ambient_class")));
        inst.embedded = CohomologyElement(dst, vector_from_json(j.at("embedded_class")));
        inst.map = PullbackMap(std::move(src), std::move(dst), std::move(m));
    } else if (mode == "s2s3_constraint") {
        require_keys(j, {"format_version", "kind", "mode", "witnesses"});
        for (const auto& w : j.at("witnesses")) inst.witnesses.push_back(w.get<long long>());
    } else if (mode == "difference") {
        require_keys(j, {"format_version", "kind", "mode", "c1"});
        const json& pair = j.at("c1");
        if (!pair.is_array() || pair.size() != 2)
            throw ManifestError("difference mode needs c1 = [eta, eta_prime]");
        inst.c1_eta = pair.at(0).get<long long>();
        inst.c1_eta_prime = pair.at(1).get<long long>();
    } else {
        throw ManifestError("unknown chern_instance mode: " + mode);
    }
    return inst;
}

// --- collar profiles ----------------------------------------------------------------

inline CollarProfile collar_profile_from_json(const json& j) {
    check_envelope(j, "collar_profile");
    std::string family = j.at("family").get<std::string>();
    if (family == "sampled") {
        require_keys(j, {"format_version", "kind", "family", "s_min", "s_max", "f", "g"});
        CollarProfile::Samples smp;
        smp.s_min = j.at("s_min").get<double>();
        smp.s_max = j.at("s_max").get<double>();
        const json& f = j.at("f");
        const json& g = j.at("g");
        if (!f.is_array() || f.empty() || !f.at(0).is_array())
            throw ManifestError("f must be a 2d array indexed [t][s]");
        smp.t_count = f.size();
        smp.s_count = f.at(0).size();
        if (!g.is_array() || g.size() != smp.t_count)
            throw ManifestError("g must have the same shape as f");
        smp.f.reserve(smp.t_count * smp.s_count);
        smp.g.reserve(smp.t_count * smp.s_count);
        for (std::size_t t = 0; t < smp.t_count; ++t) {
            if (f.at(t).size() != smp.s_count || g.at(t).size() != smp.s_count)
                throw ManifestError("profile rows must have equal length");
            for (std::size_t s = 0; s < smp.s_count; ++s) smp.f.push_back(f.at(t).at(s).get<double>());
        }
        for (std::size_t t = 0; t < smp.t_count; ++t)
            for (std::size_t s = 0; s < smp.s_count; ++s) smp.g.push_back(g.at(t).at(s).get<double>());
        return CollarProfile::from_samples(std::move(smp));
    }
    require_keys(j, {"format_version", "kind", "family"}, {"radius", "m", "s_len"});
    if (family == "constant") return profiles::constant_loop(j.value("s_len", 1.0));
    if (family == "circle")
        return profiles::circle_loop(j.value("radius", 0.35), j.value("s_len", 1.0));
    if (family == "synthetic") return profiles::synthetic_shear(j.value("m", 0.5));
    throw ManifestError("unknown collar profile family: " + family);
}

inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

} // namespace manifest

} // namespace spunembed
