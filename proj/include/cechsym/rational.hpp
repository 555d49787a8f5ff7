// SPDX-License-Identifier: MIT
//
// Exact scalar arithmetic: arbitrary-precision rationals, Gaussian rationals
// Q(i), and scalars twisted by an integer power of 2*pi*i.  These are the
// coefficient types every exact slot of the library (lattice entries, branch
// integers, transition-function coefficients) is built from.

#ifndef CECHSYM_RATIONAL_HPP
#define CECHSYM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cechsym {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// error hierarchy
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed or out-of-contract input (bad expression text, degree cap, ...)
struct input_error : error {
    using error::error;
};

// text that does not match the expression grammar
struct parse_error : input_error {
    using input_error::input_error;
};

// evaluation of a rational function too close to one of its poles
struct pole_error : error {
    using error::error;
};

// branch continuation produced a jump too far from an integer multiple of 2*pi
struct branch_guard_error : error {
    using error::error;
};

// tensor fed to the Kahler projection is not in the kernel of multiplication
struct not_in_kernel_error : error {
    using error::error;
};

// no admissible scalar solves the lift equation
struct lift_mismatch_error : error {
    using error::error;
};

// a cone pairing needs a product-compatibility homotopy that was not supplied
struct homotopy_undefined_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

inline double to_double(const bigrat& q) { return q.convert_to<double>(); }

inline std::string to_string(const bigrat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// Parse "3", "-4.5", or "9/2" into an exact rational.
inline bigrat parse_rational(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](bigint* out) {
        bool any = false;
        bigint v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + (text[pos] - '0');
            ++pos;
            any = true;
        }
        *out = v;
        return any;
    };
    bigint whole;
    if (!digits(&whole)) throw parse_error("parse_rational: expected digits in '" + text + "'");
    bigrat value(whole);
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        bigint frac;
        if (!digits(&frac)) throw parse_error("parse_rational: expected fraction digits");
        bigint scale = 1;
        for (std::size_t k = start; k < pos; ++k) scale *= 10;
        value += bigrat(frac, scale);
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        bigint den;
        if (!digits(&den) || den == 0)
            throw parse_error("parse_rational: expected nonzero denominator");
        value = bigrat(whole, den);
    }
    if (pos != text.size()) throw parse_error("parse_rational: trailing input in '" + text + "'");
    return neg ? bigrat(-value) : value;
}

// ---------------------------------------------------------------------------
// Gaussian rationals Q(i)
// ---------------------------------------------------------------------------

struct gaussian_rational {
    bigrat re;
    bigrat im;

    gaussian_rational() = default;
    gaussian_rational(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
    gaussian_rational(bigrat r) : re(std::move(r)) {}  // NOLINT
    gaussian_rational(bigrat r, bigrat i) : re(std::move(r)), im(std::move(i)) {}

    static gaussian_rational i() { return {bigrat(0), bigrat(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    gaussian_rational conj() const { return {re, -im}; }

    // |a|^2 as an exact rational
    bigrat norm() const { return re * re + im * im; }

    std::complex<double> to_complex() const {
        return {to_double(re), to_double(im)};
    }

    friend gaussian_rational operator+(const gaussian_rational& a, const gaussian_rational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend gaussian_rational operator-(const gaussian_rational& a, const gaussian_rational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend gaussian_rational operator-(const gaussian_rational& a) { return {-a.re, -a.im}; }
    friend gaussian_rational operator*(const gaussian_rational& a, const gaussian_rational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend gaussian_rational operator/(const gaussian_rational& a, const gaussian_rational& b) {
        if (b.is_zero()) throw input_error("gaussian_rational: division by zero");
        const bigrat n = b.norm();
        const gaussian_rational t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    gaussian_rational& operator+=(const gaussian_rational& b) { return *this = *this + b; }
    gaussian_rational& operator-=(const gaussian_rational& b) { return *this = *this - b; }
    gaussian_rational& operator*=(const gaussian_rational& b) { return *this = *this * b; }
    gaussian_rational& operator/=(const gaussian_rational& b) { return *this = *this / b; }

    friend bool operator==(const gaussian_rational& a, const gaussian_rational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const gaussian_rational& a, const gaussian_rational& b) {
        return !(a == b);
    }
    // lexicographic order; used only for canonical sorting, not for magnitude
    friend bool operator<(const gaussian_rational& a, const gaussian_rational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    gaussian_rational pow(long e) const {
        if (e < 0) return gaussian_rational(1) / pow(-e);
        gaussian_rational r{1};
        gaussian_rational base = *this;
        for (long k = e; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            if (k > 1) base *= base;
        }
        return r;
    }
};

// ---------------------------------------------------------------------------
// twisted scalars a * (2*pi*i)^t
//
// Values of the constant sheaves in the weight-j complexes are integer (more
// generally Gaussian-rational) multiples of (2*pi*i)^j.  Multiplication adds
// twists; addition is only defined between scalars of equal twist (zero is
// twist-agnostic).
// ---------------------------------------------------------------------------

struct twisted_scalar {
    gaussian_rational a;
    int t = 0;

    twisted_scalar() = default;
    twisted_scalar(gaussian_rational v, int twist = 0) : a(std::move(v)), t(twist) {}
    twisted_scalar(long v) : a(v) {}  // NOLINT(google-explicit-constructor)

    bool is_zero() const { return a.is_zero(); }

    static twisted_scalar two_pi_i(int power = 1) { return {gaussian_rational(1), power}; }

    std::complex<double> to_complex() const {
        const std::complex<double> u(0.0, 2.0 * std::numbers::pi);
        std::complex<double> v = a.to_complex();
        for (int k = 0; k < t; ++k) v *= u;
        for (int k = 0; k > t; --k) v /= u;
        return v;
    }

    friend twisted_scalar operator*(const twisted_scalar& x, const twisted_scalar& y) {
        return {x.a * y.a, x.t + y.t};
    }
    friend twisted_scalar operator-(const twisted_scalar& x) { return {-x.a, x.t}; }
    friend twisted_scalar operator+(const twisted_scalar& x, const twisted_scalar& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.t != y.t)
            throw input_error("twisted_scalar: addition across different twists");
        return {x.a + y.a, x.t};
    }
    friend twisted_scalar operator-(const twisted_scalar& x, const twisted_scalar& y) {
        return x + (-y);
    }
    twisted_scalar& operator+=(const twisted_scalar& y) { return *this = *this + y; }
    twisted_scalar& operator*=(const twisted_scalar& y) { return *this = *this * y; }

    // complex conjugate: conj((2*pi*i)^t) = (-1)^t (2*pi*i)^t
    twisted_scalar conj() const {
        gaussian_rational c = a.conj();
        if (t % 2 != 0) c = -c;
        return {c, t};
    }

    friend bool operator==(const twisted_scalar& x, const twisted_scalar& y) {
        if (x.is_zero() && y.is_zero()) return true;
        return x.t == y.t && x.a == y.a;
    }
    friend bool operator!=(const twisted_scalar& x, const twisted_scalar& y) { return !(x == y); }
};

}  // namespace cechsym

#endif  // CECHSYM_RATIONAL_HPP
