#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spunembed/algebra.hpp"
#include "spunembed/errors.hpp"
#include "spunembed/int128.hpp"

namespace spunembed {

/// The model surface: genus g with exactly one boundary component. Its first
/// homology is free of rank 2g with the symplectic basis (a1, b1, ..., ag, bg)
/// stored interleaved, so <a_i, b_i> = 1 and all other basis pairings vanish.
struct SurfaceModel {
    int genus{0};

    explicit SurfaceModel(int g) : genus(g) {
        if (g < 1) throw std::invalid_argument("surface genus must be >= 1");
    }
    std::size_t homology_rank() const { return static_cast<std::size_t>(2 * genus); }
    static constexpr int boundary_components = 1;

    friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

/// A named curve on the model surface, recorded by its integral homology
/// class. Null-homologous (separating) curves must be flagged explicitly;
/// otherwise a zero vector is rejected as a likely input error.
class CurveClass {
public:
    CurveClass(std::string name, std::vector<Int128> vec, bool separating = false)
        : name_(std::move(name)), vec_(std::move(vec)), separating_(separating) {
        if (vec_.empty() || vec_.size() % 2 != 0)
            throw DimensionError("curve class length must be 2g > 0");
        if (!separating_) {
            bool zero = true;
            for (const auto& x : vec_)
                if (x != Int128{0}) zero = false;
            if (zero)
                throw std::invalid_argument(
                    "zero homology class requires the separating flag: " + name_);
        }
    }

    const std::string& name() const { return name_; }
    const std::vector<Int128>& vec() const { return vec_; }
    bool separating() const { return separating_; }
    int genus() const { return static_cast<int>(vec_.size() / 2); }

    friend bool operator==(const CurveClass&, const CurveClass&) = default;

private:
    std::string name_;
    std::vector<Int128> vec_;
    bool separating_;
};

/// Symplectic intersection pairing in the interleaved basis.
inline Int128 pairing(const std::vector<Int128>& x, const std::vector<Int128>& y) {
    if (x.size() != y.size() || x.size() % 2 != 0)
        throw DimensionError("pairing requires equal even-length vectors");
    Int128 s = 0;
    for (std::size_t i = 0; i + 1 < x.size(); i += 2)
        s += x[i] * y[i + 1] - x[i + 1] * y[i];
    return s;
}

inline Int128 pairing(const CurveClass& x, const CurveClass& y) {
    if (x.genus() != y.genus())
        throw DimensionError("pairing of curves on different surfaces");
    return pairing(x.vec(), y.vec());
}

/// Coordinatewise mod-2 reduction, entries in {0,1}.
inline std::vector<std::uint8_t> mod2_class(const std::vector<Int128>& v) {
    std::vector<std::uint8_t> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int128 m = v[i] % Int128{2};
        r[i] = (m == Int128{0}) ? 0 : 1;
    }
    return r;
}

inline std::vector<std::uint8_t> mod2_class(const CurveClass& c) { return mod2_class(c.vec()); }

/// Ordered set of named curves on a common surface.
class CurveRegistry {
public:
    explicit CurveRegistry(SurfaceModel surface) : surface_(surface) {}

    const SurfaceModel& surface() const { return surface_; }
    int genus() const { return surface_.genus; }

    /// True when the registry holds fewer than the full 2g+2 marked curves
    /// (genus below the range where the last one or two are defined).
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }

    void add(CurveClass curve) {
        if (curve.genus() != surface_.genus)
            throw DimensionError("curve genus does not match registry surface: " + curve.name());
        if (index_.count(curve.name()))
            throw std::invalid_argument("duplicate curve name: " + curve.name());
        index_[curve.name()] = curves_.size();
        curves_.push_back(std::move(curve));
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    const CurveClass& get(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::invalid_argument("unknown curve name: " + name);
        return curves_[it->second];
    }

    const std::vector<CurveClass>& curves() const { return curves_; }

    friend bool operator==(const CurveRegistry&, const CurveRegistry&) = default;

private:
    SurfaceModel surface_;
    std::vector<CurveClass> curves_;
    std::map<std::string, std::size_t> index_;
    bool truncated_{false};
};

namespace detail {

inline std::vector<Int128> basis_vector(int g, std::size_t index) {
    std::vector<Int128> v(static_cast<std::size_t>(2 * g));
    v[index] = 1;
    return v;
}

inline std::vector<Int128> add_vectors(const std::vector<Int128>& x,
                                       const std::vector<Int128>& y) {
    std::vector<Int128> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

} // namespace detail

inline std::string gamma_name(std::size_t i) { return "gamma" + std::to_string(i); }

/// The marked curves gamma_1 .. gamma_{2g+2} on the genus-g model surface.
///
/// Chain classes: [gamma_1] = a1, [gamma_{2i}] = b_i, and
/// [gamma_{2i+1}] = a_i + a_{i+1}. The two off-chain curves carry the
/// calibrated classes [gamma_{2g+1}] = [gamma_1] + [gamma_3] and
/// [gamma_{2g+2}] = [gamma_1] + [gamma_3] + [gamma_5]; the calibration target
/// is |H1| = 3, 4, 1 for the boundary open books of the E_MINUS_3, E_MINUS_4
/// and DISK fibrations.
///
/// gamma_{2g+2} needs g >= 3 and gamma_{2g+1} needs g >= 2; below that a
/// truncated registry is returned with the warning flag set.
inline CurveRegistry standard_registry(int g) {
    SurfaceModel surface(g);
    CurveRegistry reg(surface);

    auto a = [g](int i) { return detail::basis_vector(g, static_cast<std::size_t>(2 * (i - 1))); };
    auto b = [g](int i) { return detail::basis_vector(g, static_cast<std::size_t>(2 * (i - 1) + 1)); };

    std::vector<std::vector<Int128>> chain(static_cast<std::size_t>(2 * g) + 1);
    chain[1] = a(1);
    for (int i = 1; i <= g; ++i) chain[static_cast<std::size_t>(2 * i)] = b(i);
    for (int i = 1; i <= g - 1; ++i)
        chain[static_cast<std::size_t>(2 * i + 1)] = detail::add_vectors(a(i), a(i + 1));
    for (std::size_t i = 1; i <= static_cast<std::size_t>(2 * g); ++i)
        reg.add(CurveClass(gamma_name(i), chain[i]));

    if (g >= 2)
        reg.add(CurveClass(gamma_name(static_cast<std::size_t>(2 * g + 1)),
                           detail::add_vectors(chain[1], chain[3])));
    if (g >= 3)
        reg.add(CurveClass(gamma_name(static_cast<std::size_t>(2 * g + 2)),
                           detail::add_vectors(detail::add_vectors(chain[1], chain[3]), chain[5])));
    reg.set_truncated(g < 3);
    return reg;
}

} // namespace spunembed
