#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spunembed/openbook.hpp"
#include "spunembed/surface.hpp"

namespace spunembed {

/// Chirality of a Lefschetz critical point. Ordinary points contribute
/// right-handed boundary twists, achiral ones left-handed.
enum class Chirality { ordinary, achiral };

struct VanishingCycle {
    CurveClass curve;
    Chirality chirality{Chirality::ordinary};
};

/// Lefschetz fibration over the disk with fiber the genus-g model surface.
/// The cycle order is the monodromy factorization order and is significant.
struct LefschetzDescriptor {
    int fiber_genus;
    std::vector<VanishingCycle> cycles;
    std::string label;
    std::string target_total_space; // descriptive metadata
    std::string target_boundary;    // descriptive metadata

    std::size_t achiral_count() const {
        std::size_t n = 0;
        for (const auto& c : cycles)
            if (c.chirality == Chirality::achiral) ++n;
        return n;
    }
};

enum class LefschetzPreset { EMinus3, EMinus4, Disk, S5Page };

inline std::string preset_name(LefschetzPreset p) {
    switch (p) {
        case LefschetzPreset::EMinus3: return "E_MINUS_3";
        case LefschetzPreset::EMinus4: return "E_MINUS_4";
        case LefschetzPreset::Disk: return "DISK";
        case LefschetzPreset::S5Page: return "S5_PAGE";
    }
    throw std::invalid_argument("unknown preset");
}

inline LefschetzPreset preset_from_name(const std::string& name) {
    if (name == "E_MINUS_3") return LefschetzPreset::EMinus3;
    if (name == "E_MINUS_4") return LefschetzPreset::EMinus4;
    if (name == "DISK") return LefschetzPreset::Disk;
    if (name == "S5_PAGE") return LefschetzPreset::S5Page;
    throw std::invalid_argument("unknown Lefschetz preset: " + name);
}

/// The bundled fibrations.
///
///   E_MINUS_3(g): cycles gamma_1..gamma_2g, gamma_{2g+1}, all ordinary.
///     Disk bundle over the sphere, Euler number -3; boundary |H1| = 3.
///   E_MINUS_4(g): gamma_1..gamma_2g, gamma_{2g+2}, all ordinary.
///     Disk bundle, Euler number -4; boundary |H1| = 4.
///   DISK(g): gamma_1..gamma_2g ordinary. The 4-ball; boundary S^3.
///   S5_PAGE(g): gamma_1..gamma_2g with gamma_3 achiral, then two achiral
///     copies of gamma_6 and two achiral copies of gamma_{2g+2}. Total space
///     is the double sphere-product connected sum with a disk removed;
///     boundary S^3. The tail order matters: the reversed tail changes the
///     total monodromy and gives boundary |H1| = 3 instead of 1.
inline LefschetzDescriptor preset(LefschetzPreset p, int genus) {
    int min_genus = (p == LefschetzPreset::Disk) ? 1 : 3;
    if (genus < min_genus)
        throw std::invalid_argument(preset_name(p) + " requires genus >= " +
                                    std::to_string(min_genus));
    CurveRegistry reg = standard_registry(genus);
    LefschetzDescriptor d{genus, {}, preset_name(p) + "(" + std::to_string(genus) + ")", "", ""};

    auto add = [&](std::size_t i, Chirality ch) {
        d.cycles.push_back({reg.get(gamma_name(i)), ch});
    };
    std::size_t two_g = static_cast<std::size_t>(2 * genus);

    switch (p) {
        case LefschetzPreset::EMinus3:
            for (std::size_t i = 1; i <= two_g; ++i) add(i, Chirality::ordinary);
            add(two_g + 1, Chirality::ordinary);
            d.target_total_space = "disk bundle over S2, Euler number -3";
            d.target_boundary = "lens space, |H1| = 3";
            break;
        case LefschetzPreset::EMinus4:
            for (std::size_t i = 1; i <= two_g; ++i) add(i, Chirality::ordinary);
            add(two_g + 2, Chirality::ordinary);
            d.target_total_space = "disk bundle over S2, Euler number -4";
            d.target_boundary = "lens space, |H1| = 4";
            break;
        case LefschetzPreset::Disk:
            for (std::size_t i = 1; i <= two_g; ++i) add(i, Chirality::ordinary);
            d.target_total_space = "D4";
            d.target_boundary = "S3";
            break;
        case LefschetzPreset::S5Page:
            for (std::size_t i = 1; i <= two_g; ++i)
                add(i, i == 3 ? Chirality::achiral : Chirality::ordinary);
            add(6, Chirality::achiral);
            add(6, Chirality::achiral);
            add(two_g + 2, Chirality::achiral);
            add(two_g + 2, Chirality::achiral);
            d.target_total_space = "(S2xS2 # S2xS2) minus an open disk";
            d.target_boundary = "S3";
            break;
    }
    return d;
}

/// chi = chi(fiber) + one 2-handle per critical point = (1 - 2g) + #cycles.
inline long long euler_characteristic(const LefschetzDescriptor& d) {
    return 1 - 2 * static_cast<long long>(d.fiber_genus) +
           static_cast<long long>(d.cycles.size());
}

/// Boundary open book: one letter per cycle in factorization order,
/// right-handed for ordinary cycles, left-handed for achiral ones.
inline OpenBookDescriptor boundary_open_book(const LefschetzDescriptor& d) {
    CurveRegistry reg = standard_registry(d.fiber_genus);
    // user-built descriptors may carry curves outside the standard set
    for (const auto& vc : d.cycles)
        if (!reg.contains(vc.curve.name()))
            reg.add(vc.curve);
        else if (!(reg.get(vc.curve.name()) == vc.curve))
            throw std::invalid_argument("cycle name collides with a standard curve: " +
                                        vc.curve.name());
    std::vector<TwistLetter> letters;
    letters.reserve(d.cycles.size());
    for (const auto& vc : d.cycles)
        letters.push_back({vc.curve.name(), vc.chirality == Chirality::ordinary ? +1 : -1});
    return OpenBookDescriptor(d.fiber_genus, TwistWord(std::move(reg), std::move(letters)),
                              "boundary of " + d.label);
}

} // namespace spunembed
