// SPDX-License-Identifier: MIT
//
// Smooth differential forms on the annulus with symbolic coefficients.  A
// form carries its four pure-bidegree coefficients ((0,0), (1,0), (0,1),
// (1,1)) as expressions; exterior derivative, the (1,0)/(0,1) split, the
// twisted real projections, conjugation, and wedge products are implemented
// on top of the expression calculus.

#ifndef CECHSYM_FORM_HPP
#define CECHSYM_FORM_HPP

#include "cechsym/expr.hpp"

#include <array>
#include <complex>

namespace cechsym {

struct form {
    expr c00;  // function part
    expr c10;  // coefficient of dz
    expr c01;  // coefficient of dzbar
    expr c11;  // coefficient of dz ^ dzbar

    form() = default;

    static form function(expr f) {
        form w;
        w.c00 = std::move(f);
        return w;
    }
    static form dz(expr f) {
        form w;
        w.c10 = std::move(f);
        return w;
    }
    static form dzbar(expr f) {
        form w;
        w.c01 = std::move(f);
        return w;
    }
    static form volume(expr f) {
        form w;
        w.c11 = std::move(f);
        return w;
    }

    bool is_structurally_zero() const {
        return c00.is_zero() && c10.is_zero() && c01.is_zero() && c11.is_zero();
    }

    // coefficient values at a point, indexed (0,0), (1,0), (0,1), (1,1)
    std::array<std::complex<double>, 4> eval(std::complex<double> z) const {
        return {c00.eval(z), c10.eval(z), c01.eval(z), c11.eval(z)};
    }
};

inline form operator+(const form& a, const form& b) {
    form r;
    r.c00 = a.c00 + b.c00;
    r.c10 = a.c10 + b.c10;
    r.c01 = a.c01 + b.c01;
    r.c11 = a.c11 + b.c11;
    return r;
}

inline form operator-(const form& a) {
    form r;
    r.c00 = -a.c00;
    r.c10 = -a.c10;
    r.c01 = -a.c01;
    r.c11 = -a.c11;
    return r;
}

inline form operator-(const form& a, const form& b) { return a + (-b); }

inline form scale(const expr& s, const form& a) {
    form r;
    r.c00 = s * a.c00;
    r.c10 = s * a.c10;
    r.c01 = s * a.c01;
    r.c11 = s * a.c11;
    return r;
}

// holomorphic part of the exterior derivative
inline form d_holo(const form& a) {
    form r;
    r.c10 = d_z(a.c00);
    r.c11 = d_z(a.c01);
    return r;
}

// antiholomorphic part of the exterior derivative
inline form d_anti(const form& a) {
    form r;
    r.c01 = d_zbar(a.c00);
    r.c11 = -d_zbar(a.c10);
    return r;
}

inline form d(const form& a) { return d_holo(a) + d_anti(a); }

// the twisted real operator  d_z - d_zbar
inline form dc(const form& a) { return d_holo(a) - d_anti(a); }

inline form conj(const form& a) {
    form r;
    r.c00 = make_conj(a.c00);
    r.c10 = make_conj(a.c01);
    r.c01 = make_conj(a.c10);
    r.c11 = -make_conj(a.c11);
    return r;
}

// projection onto (2*pi*i)^p-real forms
inline form pi_p(const form& a, int p) {
    const expr half = make_gauss(gaussian_rational{bigrat(1, 2)});
    const expr sign = make_int(p % 2 == 0 ? 1 : -1);
    const form cf = conj(a);
    return scale(half, a) + scale(half, scale(sign, cf));
}

inline form wedge(const form& a, const form& b) {
    form r;
    r.c00 = a.c00 * b.c00;
    r.c10 = a.c00 * b.c10 + a.c10 * b.c00;
    r.c01 = a.c00 * b.c01 + a.c01 * b.c00;
    // dz^dzbar terms: dz ^ dzbar = -(dzbar ^ dz)
    r.c11 = make_sum({a.c00 * b.c11, a.c11 * b.c00, a.c10 * b.c01,
                      make_prod({make_int(-1), a.c01, b.c10})});
    return r;
}

}  // namespace cechsym

#endif  // CECHSYM_FORM_HPP
