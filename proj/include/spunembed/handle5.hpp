#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spunembed/errors.hpp"
#include "spunembed/report.hpp"

namespace spunembed {

/// One handle in a 5-dimensional handle decomposition. Geometric attaching
/// data is provenance text; the checkable content is the index, the pairing
/// structure and the obstruction integers.
struct HandleRecord {
    std::string id;
    int index{0};
    std::string step;           // which construction step added it
    std::string attaches_along; // geometric note
    std::optional<long long> framing;
    std::optional<long long> obstruction_k; // Step III correction count
};

/// Replayable handle ledger for building a closed 5-manifold around an
/// embedded 3-manifold with Heegaard genus g.
struct HandleLedger {
    std::string target; // "S5" or "S2xS3"
    int heegaard_genus{0};
    std::vector<HandleRecord> entries;
    std::vector<std::pair<std::string, std::string>> cancellations;
    std::vector<std::string> final_residue;
    std::vector<long long> obstruction_inputs; // the o_j for the S2xS3 route
    std::string obstruction_group;             // annotation for the k_j bookkeeping

    const HandleRecord* find(const std::string& id) const {
        for (const auto& e : entries)
            if (e.id == id) return &e;
        return nullptr;
    }
};

namespace detail {

inline void append_common_handles(HandleLedger& ledger, int g) {
    auto& e = ledger.entries;
    e.push_back({"H0", 0, "I", "h0 x D2 from the Heegaard decomposition", std::nullopt,
                 std::nullopt});
    for (int j = 1; j <= g; ++j)
        e.push_back({"H1_" + std::to_string(j), 1, "I", "h1_j x D2", std::nullopt,
                     std::nullopt});
    for (int j = 1; j <= g; ++j)
        e.push_back({"H2_" + std::to_string(j), 2, "I", "h2_j x D2 (framing 0)", 0,
                     std::nullopt});
    e.push_back({"H3_M", 3, "I", "h3 x D2", std::nullopt, std::nullopt});
    for (int j = 1; j <= g; ++j)
        e.push_back({"C2_" + std::to_string(j), 2, "II",
                     "curve through the co-core solid torus of H1_" + std::to_string(j) +
                         " x {theta}",
                     0, std::nullopt});
}

inline void append_step_iv(HandleLedger& ledger) {
    auto& e = ledger.entries;
    e.push_back({"H2_IV", 2, "IV", "belt sphere of H3_M, framing 0", 0, std::nullopt});
    e.push_back({"H3_IV", 3, "IV", "cancelling sphere for H2_IV", std::nullopt, std::nullopt});
    e.push_back(
        {"H4_IV", 4, "IV", "cancelling 4-handle for H3_M after the isotopy of its "
                           "attaching sphere to an unknotted one",
         std::nullopt, std::nullopt});
}

inline void common_cancellations(HandleLedger& ledger, int g) {
    for (int j = 1; j <= g; ++j)
        ledger.cancellations.push_back({"H1_" + std::to_string(j), "C2_" + std::to_string(j)});
    for (int j = 1; j <= g; ++j)
        ledger.cancellations.push_back({"H2_" + std::to_string(j), "D3_" + std::to_string(j)});
    ledger.cancellations.push_back({"H2_IV", "H3_IV"});
    ledger.cancellations.push_back({"H3_M", "H4_IV"});
}

} // namespace detail

/// Steps I-IV: thicken the Heegaard decomposition to M x D2, cancel the
/// 1-handles with new 2-handles, the 2-handles with 3-handles attached along
/// complementary spheres, then the 3-handle against a fresh 2/3 pair; a
/// 4-handle and the 5-handle close the sphere. Residue {H0, H5}.
inline HandleLedger build_s5_ledger(int g) {
    if (g < 0) throw std::invalid_argument("Heegaard genus must be >= 0");
    HandleLedger ledger;
    ledger.target = "S5";
    ledger.heegaard_genus = g;
    detail::append_common_handles(ledger, g);
    for (int j = 1; j <= g; ++j)
        ledger.entries.push_back({"D3_" + std::to_string(j), 3, "III",
                                  "complementary sphere S_j of the H2_" + std::to_string(j) +
                                      " belt sphere in #g S2xS2",
                                  std::nullopt, std::nullopt});
    detail::append_step_iv(ledger);
    ledger.entries.push_back({"H5", 5, "IV", "closing 5-handle", std::nullopt, std::nullopt});
    detail::common_cancellations(ledger, g);
    ledger.final_residue = {"H0", "H5"};
    return ledger;
}

/// Modified Steps III-IV: an extra 0-framed 2-handle survives, each
/// cancelling sphere S_j is corrected to meet its co-core k_j = -o_j times so
/// the total obstruction over each attaching sphere vanishes, and a final
/// 3-handle and 5-handle close the sphere product. Residue {H0, H2, H3, H5}.
inline HandleLedger build_s2s3_ledger(int g, const std::vector<long long>& obstructions) {
    if (g < 0) throw std::invalid_argument("Heegaard genus must be >= 0");
    if (obstructions.size() != static_cast<std::size_t>(g))
        throw DimensionError("need one obstruction integer per Heegaard handle");
    HandleLedger ledger;
    ledger.target = "S2xS3";
    ledger.heegaard_genus = g;
    ledger.obstruction_inputs = obstructions;
    ledger.obstruction_group = "pi_2(SO(5)/U(2)) = Z";
    detail::append_common_handles(ledger, g);
    std::string extra = "H2_" + std::to_string(g + 1);
    ledger.entries.push_back({extra, 2, "IIIm",
                              "0-framed circle in M x {theta'}, the surviving 2-handle of "
                              "the sphere product",
                              0, std::nullopt});
    for (int j = 1; j <= g; ++j)
        ledger.entries.push_back(
            {"D3_" + std::to_string(j), 3, "IIIm",
             "S_j tubed from |k_j| parallel spheres through the " + extra +
                 " co-core and one complementary sphere of H2_" + std::to_string(j),
             std::nullopt, -obstructions[static_cast<std::size_t>(j - 1)]});
    detail::append_step_iv(ledger);
    ledger.entries.push_back({"H3_f", 3, "IVm",
                              "boundary of the co-core of " + extra, std::nullopt,
                              std::nullopt});
    ledger.entries.push_back({"H5", 5, "IVm", "closing 5-handle", std::nullopt, std::nullopt});
    detail::common_cancellations(ledger, g);
    ledger.final_residue = {"H0", extra, "H3_f", "H5"};
    return ledger;
}

/// Re-check a ledger: cancellation pairs exist and have consecutive indices,
/// no id is cancelled twice, the residue is exactly the uncancelled set, the
/// signed handle count vanishes, the residue indices match the target, and
/// for the sphere-product route each o_j + k_j = 0.
inline CheckReport verify_ledger(const HandleLedger& ledger) {
    CheckReport rep;

    bool pairing_ok = true;
    std::set<std::string> cancelled;
    for (const auto& [a, b] : ledger.cancellations) {
        const HandleRecord* ra = ledger.find(a);
        const HandleRecord* rb = ledger.find(b);
        if (!ra || !rb || std::abs(ra->index - rb->index) != 1 || !cancelled.insert(a).second ||
            !cancelled.insert(b).second) {
            pairing_ok = false;
            break;
        }
    }
    rep.add("cancellation-pairing", pairing_ok,
            pairing_ok ? "pairs exist, are disjoint, and differ by one in index"
                       : "invalid cancellation pair");

    std::vector<std::string> expected_residue;
    for (const auto& e : ledger.entries)
        if (!cancelled.count(e.id)) expected_residue.push_back(e.id);
    std::vector<std::string> got = ledger.final_residue;
    std::sort(expected_residue.begin(), expected_residue.end());
    std::sort(got.begin(), got.end());
    bool residue_ok = pairing_ok && expected_residue == got;
    rep.add("residue", residue_ok,
            residue_ok ? "residue equals entries minus cancelled"
                       : "residue does not match the uncancelled entries");

    long long signed_count = 0;
    for (const auto& e : ledger.entries) signed_count += (e.index % 2 == 0) ? 1 : -1;
    rep.add("signed-count", signed_count == 0,
            "sum (-1)^index = " + std::to_string(signed_count) + ", expected 0");

    std::multiset<int> residue_indices;
    for (const auto& id : ledger.final_residue) {
        const HandleRecord* r = ledger.find(id);
        if (r) residue_indices.insert(r->index);
    }
    std::multiset<int> expected_indices =
        ledger.target == "S5" ? std::multiset<int>{0, 5} : std::multiset<int>{0, 2, 3, 5};
    rep.add("residue-indices", residue_indices == expected_indices,
            ledger.target == "S5" ? "expected {0,5}" : "expected {0,2,3,5}");

    if (ledger.target == "S2xS3") {
        bool k_ok = ledger.obstruction_inputs.size() ==
                    static_cast<std::size_t>(ledger.heegaard_genus);
        for (std::size_t j = 0; k_ok && j < ledger.obstruction_inputs.size(); ++j) {
            const HandleRecord* r = ledger.find("D3_" + std::to_string(j + 1));
            if (!r || !r->obstruction_k ||
                *r->obstruction_k + ledger.obstruction_inputs[j] != 0)
                k_ok = false;
        }
        rep.add("obstruction-totals", k_ok,
                k_ok ? "o_j + k_j = 0 over every attaching sphere"
                     : "some attaching sphere carries a nonzero total obstruction");
    }
    return rep;
}

/// Deterministic, diff-friendly rendering.
inline std::string render(const HandleLedger& ledger) {
    std::ostringstream os;
    os << "ledger target=" << ledger.target << " heegaard-genus=" << ledger.heegaard_genus
       << "\n";
    if (!ledger.obstruction_group.empty())
        os << "obstruction group: " << ledger.obstruction_group << "\n";
    os << "id        idx step  k      framing attaches-along\n";
    for (const auto& e : ledger.entries) {
        os << e.id;
        for (std::size_t pad = e.id.size(); pad < 10; ++pad) os << ' ';
        os << e.index << "   ";
        os << e.step;
        for (std::size_t pad = e.step.size(); pad < 6; ++pad) os << ' ';
        std::string k = e.obstruction_k ? std::to_string(*e.obstruction_k) : "-";
        os << k;
        for (std::size_t pad = k.size(); pad < 7; ++pad) os << ' ';
        std::string fr = e.framing ? std::to_string(*e.framing) : "-";
        os << fr;
        for (std::size_t pad = fr.size(); pad < 8; ++pad) os << ' ';
        os << e.attaches_along << "\n";
    }
    os << "cancellations:";
    for (const auto& [a, b] : ledger.cancellations) os << " (" << a << "," << b << ")";
    os << "\nresidue:";
    for (const auto& id : ledger.final_residue) os << " " << id;
    os << "\n";
    return os.str();
}

} // namespace spunembed
