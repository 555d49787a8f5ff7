// SPDX-License-Identifier: MIT
//
// Numerical holonomy of the symbol connection around the central puncture.
// The loop is split into one arc per sector; each arc contributes the
// exponential of the integrated connection form in that sector's chart, and
// each chart switch contributes an exact power of g determined by the jump of
// the local logarithm of f.  The product reproduces the classical tame symbol
// at the center, which is also computed exactly for comparison.

#ifndef CECHSYM_HOLONOMY_HPP
#define CECHSYM_HOLONOMY_HPP

#include "cechsym/symbols.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace cechsym {

struct out_of_chart_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// arc integration
// ---------------------------------------------------------------------------

// circular arc z(t) = center + radius e^{it}, t from lo to hi
struct arc {
    std::complex<double> center{0.0, 0.0};
    double radius = 1.0;
    double lo = 0.0;
    double hi = 0.0;
};

namespace detail {

struct gl_node {
    double x;
    double w;
};

// Gauss-Legendre order 8 on [-1, 1]
inline const std::array<gl_node, 8>& gl8() {
    static const std::array<gl_node, 8> n = {{{-0.9602898564975363, 0.1012285362903763},
                                              {-0.7966664774136267, 0.2223810344533745},
                                              {-0.5255324099163290, 0.3137066458778873},
                                              {-0.1834346424956498, 0.3626837833783620},
                                              {0.1834346424956498, 0.3626837833783620},
                                              {0.5255324099163290, 0.3137066458778873},
                                              {0.7966664774136267, 0.2223810344533745},
                                              {0.9602898564975363, 0.1012285362903763}}};
    return n;
}

}  // namespace detail

// composite Gauss-Legendre integral of the degree-1 part of F along the arc
inline std::complex<double> integrate_form(const form& F, const arc& a, int panels = 64) {
    if (panels < 1) throw input_error("integrate_form: need at least one panel");
    if (a.radius <= 0.0) throw input_error("integrate_form: nonpositive radius");
    std::complex<double> acc{0.0, 0.0};
    const double width = (a.hi - a.lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a.lo + (p + 0.5) * width;
        const double half = width / 2.0;
        for (const auto& n : detail::gl8()) {
            const double t = mid + half * n.x;
            const std::complex<double> e = std::polar(a.radius, t);
            const std::complex<double> z = a.center + e;
            const std::complex<double> dz(-e.imag(), e.real());  // i r e^{it}
            std::complex<double> v{0.0, 0.0};
            if (!F.c10.is_zero()) v += F.c10.eval(z) * dz;
            if (!F.c01.is_zero()) v += F.c01.eval(z) * std::conj(dz);
            acc += n.w * half * v;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// holonomy of the symbol connection
// ---------------------------------------------------------------------------

struct holonomy_result {
    std::complex<double> value{0.0, 0.0};
    std::vector<std::complex<double>> arc_exponents;    // integrated connection per arc
    std::vector<long> switch_windings;                  // branch integers; sum = valuation
    std::vector<std::complex<double>> switch_factors;   // g(switch point)^{-winding}
    gaussian_rational target;                           // exact tame symbol at the center
    double relative_error = 0.0;
    double radius_check_delta = 0.0;  // disagreement between the two test radii
    int panels = 0;                   // panels per arc actually used
    double loop_radius = 0.0;
};

namespace detail {

// chained values of log f along the arc grid, anchored at the sector branch
// value at the arc midpoint
class arc_log_chain {
  public:
    arc_log_chain(const rational_function& f, const function_branches& fb, int sector,
                  const arc& a, int panels)
        : f_(f), center_(a.center), radius_(a.radius), lo_(a.lo),
          step_((a.hi - a.lo) / panels) {
        boundary_.resize(static_cast<std::size_t>(panels) + 1);
        const int anchor = panels / 2;
        const std::complex<double> zm = at_angle(lo_ + anchor * step_);
        boundary_[static_cast<std::size_t>(anchor)] = fb.log_at(sector, zm);
        for (int j = anchor + 1; j <= panels; ++j)
            boundary_[static_cast<std::size_t>(j)] =
                continue_from(boundary_[static_cast<std::size_t>(j - 1)],
                              at_angle(lo_ + (j - 1) * step_), at_angle(lo_ + j * step_));
        for (int j = anchor - 1; j >= 0; --j)
            boundary_[static_cast<std::size_t>(j)] =
                continue_from(boundary_[static_cast<std::size_t>(j + 1)],
                              at_angle(lo_ + (j + 1) * step_), at_angle(lo_ + j * step_));
    }

    std::complex<double> at_angle(double t) const {
        return center_ + std::polar(radius_, t);
    }

    // log f at an interior point of panel p, continued from the panel boundary
    std::complex<double> value(int p, std::complex<double> z) const {
        return continue_from(boundary_[static_cast<std::size_t>(p)],
                             at_angle(lo_ + p * step_), z);
    }

  private:
    std::complex<double> continue_from(std::complex<double> base_log,
                                       std::complex<double> from,
                                       std::complex<double> to) const {
        const std::complex<double> ratio = f_.eval(to) / f_.eval(from);
        const std::complex<double> hop = std::log(ratio);
        if (std::abs(hop.imag()) > 1.0)
            throw branch_guard_error("arc_log_chain: logarithm hop too large");
        return base_log + hop;
    }

    const rational_function& f_;
    std::complex<double> center_;
    double radius_;
    double lo_;
    double step_;
    std::vector<std::complex<double>> boundary_;
};

inline std::complex<double> int_pow(std::complex<double> base, long e) {
    const bool neg = e < 0;
    if (neg) e = -e;
    std::complex<double> r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return neg ? 1.0 / r : r;
}

inline std::complex<double> holonomy_value(const tame_symbol_data& T, double radius,
                                           int panels, const rational_function& gauge,
                                           holonomy_result* detail_out) {
    const sector_cover& cover = T.cover();
    const int n = cover.sector_count();
    const std::complex<double> center = cover.center_point();
    const std::complex<double> two_pi_i(0.0, 2.0 * M_PI);
    const rational_function dg = T.g().dlog();
    const rational_function dh = gauge.dlog();
    std::complex<double> value{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        const arc a{center, radius, M_PI * (2.0 * k - 1.0) / n, M_PI * (2.0 * k + 1.0) / n};
        const arc_log_chain chain(T.f(), T.branches_f(), k, a, panels);
        // exponent = (1/2pi i) \int log_k f  dg/g  +  \int dh/h
        std::complex<double> acc{0.0, 0.0};
        const double width = (a.hi - a.lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = a.lo + (p + 0.5) * width;
            const double half = width / 2.0;
            for (const auto& node : gl8()) {
                const double t = mid + half * node.x;
                const std::complex<double> e = std::polar(a.radius, t);
                const std::complex<double> z = a.center + e;
                const std::complex<double> dz(-e.imag(), e.real());
                std::complex<double> v = chain.value(p, z) * dg.eval(z) / two_pi_i;
                if (!dh.is_zero()) v += dh.eval(z);
                acc += node.w * half * v * dz;
            }
        }
        value *= std::exp(acc);
        if (detail_out) detail_out->arc_exponents.push_back(acc);

        // chart switch at the end of arc k, from sector k to sector k+1; the
        // branch winding integer m makes the applied transition factor g^{-m},
        // and the windings sum to the valuation of f at the center
        const int next = (k + 1) % n;
        const std::complex<double> zs = a.center + std::polar(radius, a.hi);
        const std::complex<double> jump =
            (T.branches_f().log_at(k, zs) - T.branches_f().log_at(next, zs)) / two_pi_i;
        const double rounded = std::nearbyint(jump.real());
        if (std::abs(jump - std::complex<double>(rounded, 0.0)) > 0.25)
            throw branch_guard_error("holonomy: switch jump is not close to an integer");
        const long m = static_cast<long>(rounded);
        const std::complex<double> factor = int_pow(T.g().eval(zs), -m);
        value *= factor;
        if (detail_out) {
            detail_out->switch_windings.push_back(m);
            detail_out->switch_factors.push_back(factor);
        }
    }
    return value;
}

}  // namespace detail

// holonomy around a counterclockwise loop of the given radius (0 selects the
// middle radius).  The panel count doubles automatically, up to three times,
// until the value agrees between two distinct radii to 1e-8.  An optional
// gauge function rescales every local section by a global single-valued
// factor; the holonomy is invariant under this.
inline holonomy_result holonomy(const tame_symbol_data& T, double radius = 0.0,
                                int panels = 64,
                                const rational_function& gauge = rational_function(
                                    gaussian_rational(1))) {
    const sector_cover& cover = T.cover();
    const double inner = cover.inner();
    const double outer = cover.outer();
    if (radius == 0.0) radius = cover.mid_radius();
    if (!(radius > inner && radius < outer))
        throw out_of_chart_error("holonomy: loop radius outside the annulus");
    double check_radius = (inner + radius) / 2.0;
    if (!(check_radius > inner)) check_radius = (radius + outer) / 2.0;

    holonomy_result res;
    res.target = tame_symbol_value(T.f(), T.g(), cover.center());
    res.loop_radius = radius;
    for (int attempt = 0;; ++attempt) {
        res.arc_exponents.clear();
        res.switch_windings.clear();
        res.switch_factors.clear();
        res.panels = panels;
        res.value = detail::holonomy_value(T, radius, panels, gauge, &res);
        const std::complex<double> other =
            detail::holonomy_value(T, check_radius, panels, gauge, nullptr);
        res.radius_check_delta = std::abs(res.value - other);
        if (res.radius_check_delta < 1e-8 || attempt >= 3) break;
        panels *= 2;
    }
    const std::complex<double> target = res.target.to_complex();
    const double scale = std::abs(target);
    res.relative_error = scale > 0.0 ? std::abs(res.value - target) / scale
                                     : std::abs(res.value - target);
    return res;
}

}  // namespace cechsym

#endif  // CECHSYM_HOLONOMY_HPP
