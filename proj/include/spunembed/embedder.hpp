#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spunembed/contactcheck.hpp"
#include "spunembed/lefschetz.hpp"
#include "spunembed/openbook.hpp"
#include "spunembed/report.hpp"

namespace spunembed {

/// Loop kind around a critical value: c is the positively oriented boundary
/// loop of the critical disk, c_prime its reversed companion. For an
/// ordinary cycle the c-loop realizes the right-handed twist; an achiral
/// cycle swaps the roles.
enum class LoopKind { c, c_prime };

struct PathStep {
    std::size_t cycle_index;
    LoopKind kind;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// The path of loops in the fibration base realizing a monodromy word.
struct PathSpec {
    std::vector<PathStep> steps;

    friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

enum class EmbedTarget { S5Contact, S5Smooth, S2xS3, S2xTwistedS3 };

inline std::string target_name(EmbedTarget t) {
    switch (t) {
        case EmbedTarget::S5Contact: return "S5";
        case EmbedTarget::S5Smooth: return "S5-smooth";
        case EmbedTarget::S2xS3: return "S2xS3";
        case EmbedTarget::S2xTwistedS3: return "S2xtS3";
    }
    throw std::invalid_argument("unknown target");
}

inline EmbedTarget target_from_name(const std::string& name) {
    if (name == "S5") return EmbedTarget::S5Contact;
    if (name == "S5-smooth") return EmbedTarget::S5Smooth;
    if (name == "S2xS3") return EmbedTarget::S2xS3;
    if (name == "S2xtS3") return EmbedTarget::S2xTwistedS3;
    throw std::invalid_argument("unknown embedding target: " + name +
                                " (expected S5, S5-smooth, S2xS3, or S2xtS3)");
}

/// Manifold tag carried by certificates (both S5 routes land in S5).
inline std::string target_manifold(EmbedTarget t) {
    switch (t) {
        case EmbedTarget::S5Contact:
        case EmbedTarget::S5Smooth: return "S5";
        case EmbedTarget::S2xS3: return "S2xS3";
        case EmbedTarget::S2xTwistedS3: return "S2xtS3";
    }
    throw std::invalid_argument("unknown target");
}

inline LefschetzPreset target_preset(EmbedTarget t) {
    switch (t) {
        case EmbedTarget::S5Contact: return LefschetzPreset::Disk;
        case EmbedTarget::S5Smooth: return LefschetzPreset::S5Page;
        case EmbedTarget::S2xS3: return LefschetzPreset::EMinus4;
        case EmbedTarget::S2xTwistedS3: return LefschetzPreset::EMinus3;
    }
    throw std::invalid_argument("unknown target");
}

inline std::string theorem_tag(EmbedTarget t) {
    switch (t) {
        case EmbedTarget::S5Contact: return "hyperelliptic-embeds-in-standard-S5";
        case EmbedTarget::S5Smooth: return "smooth-spun-embedding-in-S5";
        case EmbedTarget::S2xS3: return "stein-fillable-S2xS3-embedding";
        case EmbedTarget::S2xTwistedS3: return "stein-fillable-twisted-bundle-embedding";
    }
    throw std::invalid_argument("unknown target");
}

/// Contact certificates exist exactly for the all-ordinary fibrations.
inline bool target_contact(EmbedTarget t) { return t != EmbedTarget::S5Smooth; }

/// Replayable record of one spun embedding at the level this library can
/// check: alphabet membership, the loop path, and the homology bookkeeping.
struct EmbeddingCertificate {
    OpenBookDescriptor source;
    LefschetzDescriptor target_fibration;
    std::string target;          // S5 | S2xS3 | S2xtS3
    EmbedTarget target_kind;
    PathSpec path;
    bool contact{false};
    std::string tag;             // which embedding theorem the record instantiates
    std::string collar_note;     // collar verifier summary when contact
};

/// Alphabet violation: the word twists about curves that are not vanishing
/// cycles of the requested fibration. Carries the offending curves and the
/// targets that would accept the word.
class AlphabetError : public std::invalid_argument {
public:
    AlphabetError(std::vector<std::string> offending, std::vector<std::string> applicable,
                  const std::string& message)
        : std::invalid_argument(message),
          offending_curves(std::move(offending)),
          applicable_targets(std::move(applicable)) {}

    std::vector<std::string> offending_curves;
    std::vector<std::string> applicable_targets;
};

namespace detail {

inline std::optional<std::size_t> find_cycle(const LefschetzDescriptor& fib,
                                             const std::vector<Int128>& cls) {
    for (std::size_t i = 0; i < fib.cycles.size(); ++i)
        if (fib.cycles[i].curve.vec() == cls) return i;
    return std::nullopt;
}

inline int chirality_sign(Chirality ch) { return ch == Chirality::ordinary ? +1 : -1; }

} // namespace detail

/// One loop per letter. A letter of sign sgn about a cycle of chirality eps
/// takes the c loop when sgn*eps = +1 and the reversed loop otherwise.
/// Cycle lookup is by homology class, lowest index first.
inline PathSpec path_spec(const LefschetzDescriptor& fib, const TwistWord& w) {
    PathSpec path;
    path.steps.reserve(w.size());
    for (const auto& letter : w.letters()) {
        const CurveClass& curve = w.registry().get(letter.curve);
        auto idx = detail::find_cycle(fib, curve.vec());
        if (!idx)
            throw AlphabetError({letter.curve}, {},
                                "twist curve " + letter.curve +
                                    " is not a vanishing cycle of " + fib.label);
        int eps = detail::chirality_sign(fib.cycles[*idx].chirality);
        path.steps.push_back(
            {*idx, letter.sign * eps == +1 ? LoopKind::c : LoopKind::c_prime});
    }
    return path;
}

/// Inverse translation: the letters a path produces when replayed through
/// the fibration's cycles.
inline std::vector<std::pair<std::vector<Int128>, int>>
replay_path(const LefschetzDescriptor& fib, const PathSpec& path) {
    std::vector<std::pair<std::vector<Int128>, int>> letters;
    letters.reserve(path.steps.size());
    for (const auto& step : path.steps) {
        if (step.cycle_index >= fib.cycles.size())
            throw std::out_of_range("path step references a missing cycle");
        const auto& cyc = fib.cycles[step.cycle_index];
        int eps = detail::chirality_sign(cyc.chirality);
        int sign = (step.kind == LoopKind::c) ? eps : -eps;
        letters.emplace_back(cyc.curve.vec(), sign);
    }
    return letters;
}

/// All targets whose vanishing-cycle alphabet contains the word's curves.
struct TargetOption {
    EmbedTarget target;
    std::string manifold;
    std::string tag;
    bool contact;
    std::string reason;
};

inline std::vector<TargetOption> applicable_targets(const OpenBookDescriptor& ob) {
    std::vector<TargetOption> options;
    for (EmbedTarget t : {EmbedTarget::S5Contact, EmbedTarget::S5Smooth, EmbedTarget::S2xS3,
                          EmbedTarget::S2xTwistedS3}) {
        std::optional<LefschetzDescriptor> fib;
        try {
            fib = preset(target_preset(t), ob.genus);
        } catch (const std::invalid_argument&) {
            continue; // preset unavailable at this genus
        }
        bool ok = true;
        for (const auto& letter : ob.word.letters()) {
            if (!detail::find_cycle(*fib, ob.word.registry().get(letter.curve).vec())) {
                ok = false;
                break;
            }
        }
        if (ok)
            options.push_back({t, target_manifold(t), theorem_tag(t), target_contact(t),
                               "word alphabet contained in cycles of " + fib->label});
    }
    return options;
}

namespace detail {

inline std::string default_collar_note() {
    CollarReport r = collar_min_k(profiles::circle_loop(), GridSpec{});
    std::ostringstream os;
    os << "collar model (circle family, " << r.t_samples << "x" << r.s_samples
       << " grid): k_star = " << r.k_star << ", margin = " << r.margin;
    return os.str();
}

} // namespace detail

/// Certify that the open book's manifold spun-embeds in the chosen target.
/// Throws AlphabetError (listing usable targets) when the word leaves the
/// target's vanishing-cycle alphabet.
inline EmbeddingCertificate certify(const OpenBookDescriptor& ob, EmbedTarget t) {
    LefschetzDescriptor fib = preset(target_preset(t), ob.genus);

    std::vector<std::string> offending;
    for (const auto& letter : ob.word.letters()) {
        if (!detail::find_cycle(fib, ob.word.registry().get(letter.curve).vec()) &&
            std::find(offending.begin(), offending.end(), letter.curve) == offending.end())
            offending.push_back(letter.curve);
    }
    if (!offending.empty()) {
        std::vector<std::string> usable;
        for (const auto& opt : applicable_targets(ob)) usable.push_back(target_name(opt.target));
        std::ostringstream msg;
        msg << "word is not supported by " << target_name(t) << ": curve(s)";
        for (const auto& c : offending) msg << " " << c;
        msg << " are not vanishing cycles of " << fib.label;
        if (!usable.empty()) {
            msg << "; applicable targets:";
            for (const auto& u : usable) msg << " " << u;
        }
        throw AlphabetError(std::move(offending), std::move(usable), msg.str());
    }

    EmbeddingCertificate cert{ob,
                              fib,
                              target_manifold(t),
                              t,
                              path_spec(fib, ob.word),
                              target_contact(t),
                              theorem_tag(t),
                              {}};
    if (cert.contact) cert.collar_note = detail::default_collar_note();
    return cert;
}

/// Independent re-check of a certificate. Entries: alphabet membership, the
/// path replay (letter-for-letter and by homology action), the contact flag
/// against the fibration's chirality, and the target's boundary calibration.
inline CheckReport verify(const EmbeddingCertificate& cert) {
    CheckReport rep;

    bool alphabet_ok = true;
    for (const auto& letter : cert.source.word.letters())
        if (!detail::find_cycle(cert.target_fibration,
                                cert.source.word.registry().get(letter.curve).vec())) {
            alphabet_ok = false;
            break;
        }
    rep.add("alphabet", alphabet_ok,
            alphabet_ok ? "every twist curve is a vanishing cycle"
                        : "word leaves the target alphabet");

    bool replay_ok = cert.path.steps.size() == cert.source.word.size();
    if (replay_ok) {
        try {
            auto replayed = replay_path(cert.target_fibration, cert.path);
            for (std::size_t i = 0; i < replayed.size(); ++i) {
                const auto& letter = cert.source.word.letters()[i];
                const auto& cls = cert.source.word.registry().get(letter.curve).vec();
                if (replayed[i].first != cls || replayed[i].second != letter.sign) {
                    replay_ok = false;
                    break;
                }
            }
        } catch (const std::out_of_range&) {
            replay_ok = false;
        }
    }
    rep.add("path-replay", replay_ok,
            replay_ok ? "path reproduces the source word letter for letter"
                      : "replayed word disagrees with the source");

    bool action_ok = false;
    if (replay_ok) {
        action_ok = true; // letters agree, so the actions must
    } else {
        try {
            auto replayed = replay_path(cert.target_fibration, cert.path);
            CurveRegistry reg(SurfaceModel(cert.source.genus));
            std::vector<TwistLetter> letters;
            for (std::size_t i = 0; i < replayed.size(); ++i) {
                std::string nm = "replay" + std::to_string(i);
                reg.add(CurveClass(nm, replayed[i].first));
                letters.push_back({nm, replayed[i].second});
            }
            TwistWord replayed_word(std::move(reg), std::move(letters));
            action_ok = word_action(replayed_word) == word_action(cert.source.word);
        } catch (const std::exception&) {
            action_ok = false;
        }
    }
    rep.add("homology-action", action_ok,
            action_ok ? "replayed word acts identically on H1" : "homology actions differ");

    bool contact_ok = !cert.contact || cert.target_fibration.achiral_count() == 0;
    rep.add("contact-flag", contact_ok,
            contact_ok ? "contact flag consistent with cycle chirality"
                       : "contact certificate over an achiral fibration");

    AbelianGroupPresentation h1 = first_homology(boundary_open_book(cert.target_fibration));
    auto order = h1.order();
    Int128 expected = 1;
    if (cert.target_kind == EmbedTarget::S2xTwistedS3) expected = 3;
    if (cert.target_kind == EmbedTarget::S2xS3) expected = 4;
    bool boundary_ok = order.has_value() && *order == expected;
    rep.add("target-boundary", boundary_ok,
            "|H1| of target boundary = " + (order ? to_string(*order) : std::string("inf")) +
                ", expected " + to_string(expected));
    return rep;
}

} // namespace spunembed
