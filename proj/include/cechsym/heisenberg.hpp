// SPDX-License-Identifier: MIT
//
// Complex Heisenberg group model of the hermitian pairing.  Points are lower
// unipotent matrices [[1,0,0],[x,1,0],[z,y,1]]; the integral lattice acts by
// right multiplication, leaving invariant a connection 1-form and a metric.
// Pulling these back along sections built from sector logarithms reproduces
// the connection and section-length formulas of the symbol cochains.

#ifndef CECHSYM_HEISENBERG_HPP
#define CECHSYM_HEISENBERG_HPP

#include "cechsym/form.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

namespace cechsym {

// lattice element (2 pi i a, 2 pi i b, (2 pi i)^2 c)
struct heis_lattice_elem {
    long a = 0;
    long b = 0;
    long c = 0;
};

// composition law: acting by lhs and then rhs equals acting by the product,
// matching multiplication of the corresponding unipotent matrices
inline heis_lattice_elem lattice_mul(const heis_lattice_elem& lhs,
                                     const heis_lattice_elem& rhs) {
    return {lhs.a + rhs.a, lhs.b + rhs.b, lhs.c + rhs.c + lhs.b * rhs.a};
}

inline heis_lattice_elem lattice_inverse(const heis_lattice_elem& e) {
    return {-e.a, -e.b, e.a * e.b - e.c};
}

// ---------------------------------------------------------------------------
// numeric mode
// ---------------------------------------------------------------------------

struct heis_point {
    std::complex<double> x{0.0, 0.0};
    std::complex<double> y{0.0, 0.0};
    std::complex<double> z{0.0, 0.0};
};

namespace detail {

inline std::complex<double> heis_m1(const heis_lattice_elem& e) {
    return {0.0, 2.0 * M_PI * static_cast<double>(e.a)};
}
inline std::complex<double> heis_n1(const heis_lattice_elem& e) {
    return {0.0, 2.0 * M_PI * static_cast<double>(e.b)};
}
inline std::complex<double> heis_m2(const heis_lattice_elem& e) {
    return {-4.0 * M_PI * M_PI * static_cast<double>(e.c), 0.0};
}

inline std::complex<double> pi0_num(std::complex<double> v) {
    return (v + std::conj(v)) / 2.0;
}
inline std::complex<double> pi1_num(std::complex<double> v) {
    return (v - std::conj(v)) / 2.0;
}

}  // namespace detail

inline heis_point lattice_act(const heis_point& p, const heis_lattice_elem& e) {
    const auto m1 = detail::heis_m1(e);
    return {p.x + m1, p.y + detail::heis_n1(e), p.z + m1 * p.y + detail::heis_m2(e)};
}

// log of the invariant metric: (1/(2 pi i)) (pi_1(z) - pi_1(x) pi_0(y)); the
// value is real for every point
inline std::complex<double> rho_log(const heis_point& p) {
    const std::complex<double> u(0.0, 2.0 * M_PI);
    return (detail::pi1_num(p.z) - detail::pi1_num(p.x) * detail::pi0_num(p.y)) / u;
}

inline double rho_metric(const heis_point& p) { return std::exp(rho_log(p).real()); }

// ---------------------------------------------------------------------------
// symbolic mode: a family of group elements over the annulus
// ---------------------------------------------------------------------------

struct heis_section {
    expr x;
    expr y;
    expr z;
};

inline heis_section lattice_act(const heis_section& p, const heis_lattice_elem& e) {
    const expr m1 = make_const(twisted_scalar{gaussian_rational(e.a), 1});
    const expr n1 = make_const(twisted_scalar{gaussian_rational(e.b), 1});
    const expr m2 = make_const(twisted_scalar{gaussian_rational(e.c), 2});
    return {make_sum({p.x, m1}), make_sum({p.y, n1}),
            make_sum({p.z, make_prod({m1, p.y}), m2})};
}

// invariant connection form (1/(2 pi i)) (dz - x dy) along the family
inline form omega_form(const heis_section& p) {
    const expr inv = make_const(twisted_scalar{gaussian_rational(1), -1});
    return scale(inv, d(form::function(p.z)) + (-scale(p.x, d(form::function(p.y)))));
}

// log of the invariant metric along the family
inline expr rho_log(const heis_section& p) {
    return make_prod(
        {make_const(twisted_scalar{gaussian_rational(1), -1}),
         make_sum({pi_p(p.z, 1),
                   make_prod({make_int(-1), pi_p(p.x, 1), pi_p(p.y, 0)})})});
}

// section over sector i built from the local logarithms of f and g with
// additive fiber coordinate h
inline heis_section symbol_section(const function_branches& fb, const function_branches& gb,
                                   int i, expr h) {
    return {sector_log_expr(fb, i), sector_log_expr(gb, i), std::move(h)};
}

// ---------------------------------------------------------------------------
// randomized invariance reports
// ---------------------------------------------------------------------------

enum class heis_kind { omega, rho };

struct heis_report {
    heis_kind kind = heis_kind::rho;
    int trials = 0;
    int points_per_trial = 0;
    double max_residual = 0.0;

    bool pass(double tol) const { return max_residual < tol; }
};

inline const char* to_string(heis_kind k) {
    return k == heis_kind::omega ? "omega" : "rho";
}

// residual of the chosen invariant quantity under random lattice elements; the
// omega check runs over a fixed symbolic family on the unit annulus, the rho
// check over random numeric group elements
inline heis_report heis_invariance_check(heis_kind kind, int trials, std::uint64_t seed,
                                         int points = 20) {
    if (trials < 0) throw input_error("heis_invariance_check: negative trial count");
    heis_report rep;
    rep.kind = kind;
    rep.trials = trials;
    rep.points_per_trial = points;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> ldist(-5, 5);
    std::uniform_real_distribution<double> box(-3.0, 3.0);
    std::uniform_real_distribution<double> rad(0.6, 1.4);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);

    heis_section family;
    if (kind == heis_kind::omega) {
        family.x = make_sum({make_rat(rational_function::parse("(z + 4)/(z - 6)")),
                             make_log_abs(rational_function::parse("z"))});
        family.y = make_sum({make_rat(rational_function::parse("z^2 + 2")),
                             make_log_abs(rational_function::parse("z - 3"))});
        family.z = make_prod({make_rat(rational_function::parse("z")),
                              make_log_abs(rational_function::parse("z - 3"))});
    }

    for (int t = 0; t < trials; ++t) {
        const heis_lattice_elem lam{ldist(rng), ldist(rng), ldist(rng)};
        if (kind == heis_kind::rho) {
            for (int k = 0; k < points; ++k) {
                const heis_point p{{box(rng), box(rng)}, {box(rng), box(rng)},
                                   {box(rng), box(rng)}};
                const auto diff = rho_log(lattice_act(p, lam)) - rho_log(p);
                rep.max_residual = std::max(rep.max_residual, std::abs(diff));
            }
        } else {
            const form diff = omega_form(lattice_act(family, lam)) + (-omega_form(family));
            for (int k = 0; k < points; ++k) {
                const auto z = std::polar(rad(rng), ang(rng));
                for (const auto& v : diff.eval(z))
                    rep.max_residual = std::max(rep.max_residual, std::abs(v));
            }
        }
    }
    return rep;
}

}  // namespace cechsym

#endif  // CECHSYM_HEISENBERG_HPP
