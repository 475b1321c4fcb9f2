#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spunembed/errors.hpp"
#include "spunembed/report.hpp"

namespace spunembed {

/// Evaluation grid for the collar verifier. Counts below 8 per axis are
/// rejected; the finite-difference scheme is 2nd order central with 2nd
/// order one-sided stencils at the boundary.
struct GridSpec {
    std::size_t t_samples{64};
    std::size_t s_samples{64};
    int scheme_order{2};

    void validate() const {
        if (t_samples < 8 || s_samples < 8)
            throw GridError("grid needs at least 8 samples per axis");
        if (scheme_order != 2)
            throw GridError("only the 2nd-order scheme is implemented");
    }
};

namespace fd {

/// d/dx of a sampled function, 2nd order: central in the interior, one-sided
/// 3-point stencils at the ends. Deterministic evaluation order.
inline std::vector<double> derivative(const std::vector<double>& y, double h) {
    std::size_t n = y.size();
    std::vector<double> d(n);
    if (n < 3) throw GridError("derivative stencil needs at least 3 samples");
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    return d;
}

} // namespace fd

/// Collar model data: the s-range [b, c], and on a t x s grid the polar
/// radius f_t(s) and angle g_t(s) of the interpolating path from the base
/// loop point gamma(t) (at s = b) to the basepoint (near s = c). Profiles
/// built from a named family can be resampled at any resolution; profiles
/// ingested as raw samples cannot.
class CollarProfile {
public:
    struct Samples {
        double s_min, s_max;
        std::size_t t_count, s_count;
        std::vector<double> f; // row-major [t][s]
        std::vector<double> g;
        double& fa(std::size_t t, std::size_t s) { return f[t * s_count + s]; }
        double& ga(std::size_t t, std::size_t s) { return g[t * s_count + s]; }
        double fa(std::size_t t, std::size_t s) const { return f[t * s_count + s]; }
        double ga(std::size_t t, std::size_t s) const { return g[t * s_count + s]; }
    };

    using Generator = std::function<Samples(const GridSpec&)>;
    // d/dt of B(s,t) = e^s f^2 dg/ds, when the family knows it in closed form
    using DtB = std::function<double(double t, double s)>;

    static CollarProfile from_generator(std::string family, Generator gen,
                                        DtB analytic_dtB = nullptr) {
        CollarProfile p;
        p.family_ = std::move(family);
        p.generator_ = std::move(gen);
        p.analytic_dtB_ = std::move(analytic_dtB);
        return p;
    }

    static CollarProfile from_samples(Samples s) {
        validate_samples(s);
        CollarProfile p;
        p.family_ = "sampled";
        p.samples_ = std::move(s);
        return p;
    }

    bool resampleable() const { return static_cast<bool>(generator_); }
    const std::string& family() const { return family_; }
    const DtB& analytic_dtB() const { return analytic_dtB_; }

    Samples sample(const GridSpec& grid) const {
        grid.validate();
        if (generator_) {
            Samples s = generator_(grid);
            validate_samples(s);
            return s;
        }
        if (samples_->t_count != grid.t_samples || samples_->s_count != grid.s_samples)
            throw GridError("sampled profile cannot be resampled at a different resolution");
        return *samples_;
    }

    /// Native resolution of a raw-sample profile.
    GridSpec native_grid() const {
        if (generator_) return GridSpec{};
        return GridSpec{samples_->t_count, samples_->s_count, 2};
    }

private:
    static void validate_samples(const Samples& s) {
        if (s.t_count < 8 || s.s_count < 8)
            throw GridError("profile needs at least 8 samples per axis");
        if (s.f.size() != s.t_count * s.s_count || s.g.size() != s.f.size())
            throw DimensionError("profile grid size mismatch");
        if (!(s.s_max > s.s_min)) throw std::invalid_argument("empty s-range");
        for (double x : s.f) {
            if (!(x >= 0.0) || x >= 1.0)
                throw std::invalid_argument("radius samples must lie in [0,1)");
        }
        for (double x : s.g)
            if (!std::isfinite(x)) throw std::invalid_argument("angle samples must be finite");
        // angle constant in s near the far end of the collar
        for (std::size_t t = 0; t < s.t_count; ++t) {
            double tail = s.ga(t, s.s_count - 1);
            std::size_t guard = s.s_count - 1 - (s.s_count - 1) / 8;
            for (std::size_t k = guard; k < s.s_count; ++k)
                if (std::fabs(s.ga(t, k) - tail) > 1e-9)
                    throw std::invalid_argument("angle must be constant in s near the collar end");
        }
    }

    std::string family_;
    Generator generator_;
    DtB analytic_dtB_;
    std::optional<Samples> samples_;
};

/// Result of the collar positivity analysis for the 1-form
/// k dt + e^s (dphi + f_t(s)^2 dg_t/ds ds): the volume coefficient is
/// e^s (k + dB/dt) with B = e^s f^2 dg/ds, so contact holds exactly when
/// k > -min dB/dt.
struct CollarReport {
    double k_star{0.0};
    double margin{0.0};
    double fd_error_estimate{0.0};
    double min_dtB{0.0};
    double min_t{0.0}, min_s{0.0};
    std::size_t min_t_index{0}, min_s_index{0};
    double closed_vs_fd_disagreement{0.0};
    std::size_t t_samples{0}, s_samples{0};
};

namespace detail {

struct CollarGrids {
    std::vector<double> t, s;
    std::vector<double> B;    // row-major [t][s]
    std::vector<double> dtB;  // finite-difference d/dt of B
    double ht, hs;
};

inline CollarGrids collar_grids(const CollarProfile::Samples& smp) {
    std::size_t nt = smp.t_count, ns = smp.s_count;
    CollarGrids g;
    g.ht = 1.0 / static_cast<double>(nt - 1);
    g.hs = (smp.s_max - smp.s_min) / static_cast<double>(ns - 1);
    g.t.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) g.t[i] = static_cast<double>(i) * g.ht;
    g.s.resize(ns);
    for (std::size_t j = 0; j < ns; ++j) g.s[j] = smp.s_min + static_cast<double>(j) * g.hs;

    g.B.assign(nt * ns, 0.0);
    for (std::size_t i = 0; i < nt; ++i) {
        std::vector<double> grow(ns);
        for (std::size_t j = 0; j < ns; ++j) grow[j] = smp.ga(i, j);
        std::vector<double> dg = fd::derivative(grow, g.hs);
        for (std::size_t j = 0; j < ns; ++j) {
            double f = smp.fa(i, j);
            g.B[i * ns + j] = std::exp(g.s[j]) * f * f * dg[j];
        }
    }

    g.dtB.assign(nt * ns, 0.0);
    for (std::size_t j = 0; j < ns; ++j) {
        std::vector<double> col(nt);
        for (std::size_t i = 0; i < nt; ++i) col[i] = g.B[i * ns + j];
        std::vector<double> d = fd::derivative(col, g.ht);
        for (std::size_t i = 0; i < nt; ++i) g.dtB[i * ns + j] = d[i];
    }
    return g;
}

/// Richardson estimate of the t-derivative error: compare the step-h stencil
/// with the step-2h stencil; for a 2nd-order scheme the defect is ~3x the
/// fine-grid error.
inline double dt_error_estimate(const CollarGrids& g, std::size_t nt, std::size_t ns) {
    double worst = 0.0;
    for (std::size_t j = 0; j < ns; ++j)
        for (std::size_t i = 2; i + 2 < nt; ++i) {
            double coarse = (g.B[(i + 2) * ns + j] - g.B[(i - 2) * ns + j]) / (4.0 * g.ht);
            double diff = std::fabs(coarse - g.dtB[i * ns + j]) / 3.0;
            if (diff > worst) worst = diff;
        }
    return worst;
}

/// Compare the closed-form volume coefficient e^s (k + dtB) against the
/// all-finite-difference evaluation of the wedge alpha ^ dalpha at a
/// reference k. Large disagreement means the grid is too coarse to certify.
inline double closed_vs_fd(const CollarProfile& p, const CollarGrids& g,
                           std::size_t nt, std::size_t ns) {
    const double k_ref = 1.0;
    std::vector<double> es(ns), des(ns);
    for (std::size_t j = 0; j < ns; ++j) es[j] = std::exp(g.s[j]);
    des = fd::derivative(es, g.hs);

    double worst = 0.0;
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            double dtB_fd = g.dtB[i * ns + j];
            double dtB_best = p.analytic_dtB() ? p.analytic_dtB()(g.t[i], g.s[j]) : dtB_fd;
            double closed = es[j] * (k_ref + dtB_best);
            double numeric = k_ref * des[j] + es[j] * dtB_fd;
            double diff = std::fabs(closed - numeric);
            if (diff > worst) worst = diff;
        }
    return worst;
}

inline double coefficient_scale(const CollarGrids& g, std::size_t nt, std::size_t ns) {
    double scale = 1.0;
    for (std::size_t j = 0; j < ns; ++j) scale = std::max(scale, std::exp(g.s[j]));
    for (std::size_t i = 0; i < nt * ns; ++i) scale = std::max(scale, std::fabs(g.dtB[i]));
    return scale;
}

} // namespace detail

/// Smallest certified k for the collar form, with margin policy
/// margin = max(1e-6, 3 * fd error estimate). Throws GridError when the
/// closed-form and finite-difference evaluations of the volume coefficient
/// disagree beyond 5% of the coefficient scale.
inline CollarReport collar_min_k(const CollarProfile& p, const GridSpec& grid) {
    grid.validate();
    CollarProfile::Samples smp = p.sample(grid);
    std::size_t nt = smp.t_count, ns = smp.s_count;
    detail::CollarGrids g = detail::collar_grids(smp);

    CollarReport r;
    r.t_samples = nt;
    r.s_samples = ns;
    r.min_dtB = g.dtB[0];
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ns; ++j)
            if (g.dtB[i * ns + j] < r.min_dtB) {
                r.min_dtB = g.dtB[i * ns + j];
                r.min_t_index = i;
                r.min_s_index = j;
            }
    r.min_t = g.t[r.min_t_index];
    r.min_s = g.s[r.min_s_index];

    r.fd_error_estimate = detail::dt_error_estimate(g, nt, ns);
    r.margin = std::max(1e-6, 3.0 * r.fd_error_estimate);
    r.k_star = std::max(0.0, -r.min_dtB) + r.margin;

    r.closed_vs_fd_disagreement = detail::closed_vs_fd(p, g, nt, ns);
    double scale = detail::coefficient_scale(g, nt, ns);
    if (r.closed_vs_fd_disagreement > 0.05 * scale)
        throw GridError("grid too coarse: closed-form and finite-difference volume "
                        "coefficients disagree by " +
                        std::to_string(r.closed_vs_fd_disagreement));
    return r;
}

/// Positivity check of e^s (k + dtB) for a caller-chosen k: passes when the
/// grid minimum of k + dtB is strictly positive.
inline CheckReport verify_form_positive(double k, const CollarProfile& p, const GridSpec& grid) {
    grid.validate();
    CollarProfile::Samples smp = p.sample(grid);
    detail::CollarGrids g = detail::collar_grids(smp);
    double min_total = k + g.dtB[0];
    std::size_t where_t = 0, where_s = 0;
    for (std::size_t i = 0; i < smp.t_count; ++i)
        for (std::size_t j = 0; j < smp.s_count; ++j) {
            double v = k + g.dtB[i * smp.s_count + j];
            if (v < min_total) {
                min_total = v;
                where_t = i;
                where_s = j;
            }
        }
    CheckReport rep;
    rep.add("contact-volume-positive", min_total > 0.0,
            "min(k + dtB) = " + std::to_string(min_total) + " at t = " +
                std::to_string(g.t[where_t]) + ", s = " + std::to_string(g.s[where_s]));
    return rep;
}

/// Radial profile sampled on a shared positive grid r_1 < ... < r_n.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> h;
};

/// Binding-neighborhood model h1(r) dphi + h2(r) dtheta: contact iff
/// h1 h2' - h2 h1' > 0, with h1 positive and non-increasing, h2
/// non-decreasing and equal to r^2 near 0.
inline CheckReport binding_check(const RadialProfile& h1, const RadialProfile& h2) {
    CheckReport rep;
    if (h1.r.size() != h1.h.size() || h2.r.size() != h2.h.size() || h1.r != h2.r) {
        rep.add("grid", false, "profiles must share one radial grid");
        return rep;
    }
    std::size_t n = h1.r.size();
    if (n < 8) {
        rep.add("grid", false, "need at least 8 radial samples");
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(h1.r[i] > 0.0) || (i > 0 && !(h1.r[i] > h1.r[i - 1]))) {
            rep.add("grid", false, "radii must be strictly increasing and positive");
            return rep;
        }
    rep.add("grid", true);

    double hr = h1.r[1] - h1.r[0];
    bool uniform = true;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::fabs((h1.r[i + 1] - h1.r[i]) - hr) > 1e-9 * hr) uniform = false;
    if (!uniform) {
        rep.add("uniform-grid", false, "derivative stencils need a uniform grid");
        return rep;
    }

    std::vector<double> d1 = fd::derivative(h1.h, hr);
    std::vector<double> d2 = fd::derivative(h2.h, hr);

    bool positive = true;
    double worst = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double coeff = h1.h[i] * d2[i] - h2.h[i] * d1[i];
        if (i == 0 || coeff < worst) {
            worst = coeff;
            worst_i = i;
        }
        if (!(coeff > 0.0)) positive = false;
    }
    rep.add("contact-coefficient-positive", positive,
            "min h1*h2' - h2*h1' = " + std::to_string(worst) + " at r = " +
                std::to_string(h1.r[worst_i]));

    bool h1_positive = true, h1_noninc = true, h2_nondec = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(h1.h[i] > 0.0)) h1_positive = false;
        if (i > 0 && h1.h[i] > h1.h[i - 1] + 1e-12) h1_noninc = false;
        if (i > 0 && h2.h[i] < h2.h[i - 1] - 1e-12) h2_nondec = false;
    }
    rep.add("h1-positive", h1_positive);
    rep.add("h1-non-increasing", h1_noninc);
    rep.add("h2-non-decreasing", h2_nondec);

    bool square_near_zero = true;
    for (std::size_t i = 0; i < n && h1.r[i] <= 0.15 * h1.r[n - 1]; ++i) {
        double rr = h1.r[i] * h1.r[i];
        if (std::fabs(h2.h[i] - rr) > 1e-6 + 1e-3 * rr) square_near_zero = false;
    }
    rep.add("h2-equals-r-squared-near-zero", square_near_zero);
    return rep;
}

// ---------------------------------------------------------------------------
// bundled profile families

namespace profiles {

/// Angle unwrap helper: atan2 lifted continuously along increasing s.
inline void unwrap_angles(std::vector<double>& g) {
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 1; j < g.size(); ++j) {
        double d = g[j] - g[j - 1];
        while (d > pi) {
            g[j] -= 2 * pi;
            d = g[j] - g[j - 1];
        }
        while (d < -pi) {
            g[j] += 2 * pi;
            d = g[j] - g[j - 1];
        }
    }
}

/// Interpolation ramp: 0 at u=0, 1 from u = 1 - plateau on, C^2 smooth
/// (quintic smootherstep below the plateau).
inline double ramp(double u, double plateau) {
    double x = u / (1.0 - plateau);
    if (x >= 1.0) return 1.0;
    if (x <= 0.0) return 0.0;
    return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

/// Straight-line interpolation from a loop gamma(t) to the basepoint, with a
/// plateau near the collar end so the angle freezes there. Loop and
/// basepoint must keep the segments away from the disk's center and inside
/// the unit disk.
inline CollarProfile straight_line(std::function<std::pair<double, double>(double)> loop,
                                   double base_x, double base_y, double s_min, double s_max,
                                   std::string family_name) {
    auto gen = [=](const GridSpec& grid) {
        CollarProfile::Samples smp;
        smp.s_min = s_min;
        smp.s_max = s_max;
        smp.t_count = grid.t_samples;
        smp.s_count = grid.s_samples;
        smp.f.resize(smp.t_count * smp.s_count);
        smp.g.resize(smp.t_count * smp.s_count);
        for (std::size_t i = 0; i < smp.t_count; ++i) {
            double t = static_cast<double>(i) / static_cast<double>(smp.t_count - 1);
            auto [px, py] = loop(t);
            std::vector<double> ang(smp.s_count);
            for (std::size_t j = 0; j < smp.s_count; ++j) {
                double u = static_cast<double>(j) / static_cast<double>(smp.s_count - 1);
                double w = ramp(u, 0.25);
                double x = px + w * (base_x - px);
                double y = py + w * (base_y - py);
                double radius = std::hypot(x, y);
                if (radius <= 0.0 || radius >= 1.0)
                    throw std::invalid_argument("path leaves the punctured unit disk");
                smp.fa(i, j) = radius;
                ang[j] = std::atan2(y, x);
            }
            unwrap_angles(ang);
            for (std::size_t j = 0; j < smp.s_count; ++j) smp.ga(i, j) = ang[j];
        }
        return smp;
    };
    return CollarProfile::from_generator(std::move(family_name), std::move(gen));
}

/// gamma(t) constant: the homotopy is t-independent and dtB vanishes
/// identically, so k_star is the bare margin.
inline CollarProfile constant_loop(double s_len = 1.0) {
    return straight_line([](double) { return std::pair<double, double>{0.25, 0.0}; }, 0.55,
                         0.0, 0.0, s_len, "constant");
}

/// gamma(t) a circle of the given radius about the basepoint.
inline CollarProfile circle_loop(double radius = 0.35, double s_len = 1.0) {
    const double pi = 3.14159265358979323846;
    double cx = 0.5, cy = 0.0;
    return straight_line(
        [=](double t) {
            return std::pair<double, double>{cx + radius * std::cos(2 * pi * t),
                                             cy + radius * std::sin(2 * pi * t)};
        },
        cx, cy, 0.0, s_len, "circle");
}

/// Synthetic shear with min dtB = -m known in closed form:
///   f = f0,  g_t(s) = A sin(2 pi t) psi(s),  psi'(s) a bump vanishing near
/// the collar end, so dtB = 2 pi A cos(2 pi t) e^s f0^2 psi'(s).
inline CollarProfile synthetic_shear(double m) {
    const double pi = 3.14159265358979323846;
    const double f0 = 0.5;
    const double s_min = 0.0, s_max = 1.0, plateau = 0.25;
    // psi(s) = ramp(u, plateau) with u = (s - s_min)/(s_max - s_min);
    // psi'(s) peaks where d/dx smootherstep peaks (x = 1/2, slope 15/8).
    auto psi_prime = [=](double s) {
        double u = (s - s_min) / (s_max - s_min);
        double x = u / (1.0 - plateau);
        if (x <= 0.0 || x >= 1.0) return 0.0;
        double dx = 30.0 * x * x * (1.0 - x) * (1.0 - x);
        return dx / ((1.0 - plateau) * (s_max - s_min));
    };
    // max over s of e^s psi'(s): scan densely once, fix the amplitude so the
    // true extremum of dtB is exactly -m
    double peak = 0.0;
    for (int i = 0; i <= 4096; ++i) {
        double s = s_min + (s_max - s_min) * static_cast<double>(i) / 4096.0;
        peak = std::max(peak, std::exp(s) * psi_prime(s));
    }
    double amplitude = m / (2 * pi * f0 * f0 * peak);

    auto gen = [=](const GridSpec& grid) {
        CollarProfile::Samples smp;
        smp.s_min = s_min;
        smp.s_max = s_max;
        smp.t_count = grid.t_samples;
        smp.s_count = grid.s_samples;
        smp.f.assign(smp.t_count * smp.s_count, f0);
        smp.g.resize(smp.t_count * smp.s_count);
        for (std::size_t i = 0; i < smp.t_count; ++i) {
            double t = static_cast<double>(i) / static_cast<double>(smp.t_count - 1);
            for (std::size_t j = 0; j < smp.s_count; ++j) {
                double s = s_min + (s_max - s_min) * static_cast<double>(j) /
                                       static_cast<double>(smp.s_count - 1);
                double u = (s - s_min) / (s_max - s_min);
                smp.ga(i, j) = amplitude * std::sin(2 * pi * t) * ramp(u, plateau);
            }
        }
        return smp;
    };
    auto dtB = [=](double t, double s) {
        return 2 * pi * amplitude * std::cos(2 * pi * t) * std::exp(s) * f0 * f0 *
               psi_prime(s);
    };
    return CollarProfile::from_generator("synthetic", std::move(gen), std::move(dtB));
}

/// Lookup used by the CLI.
inline CollarProfile by_name(const std::string& name) {
    if (name == "constant") return constant_loop();
    if (name == "circle") return circle_loop();
    if (name == "synthetic") return synthetic_shear(0.5);
    throw std::invalid_argument("unknown profile family: " + name +
                                " (expected constant, circle, or synthetic)");
}

} // namespace profiles

} // namespace spunembed
