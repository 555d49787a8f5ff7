// SPDX-License-Identifier: MIT
//
// Dense univariate polynomials over the Gaussian rationals.  Provides the
// exact arithmetic (division with remainder, monic gcd, derivative, Horner
// evaluation) that rational functions are normalized with.

#ifndef CECHSYM_POLYNOMIAL_HPP
#define CECHSYM_POLYNOMIAL_HPP

#include "cechsym/rational.hpp"

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

namespace cechsym {

struct polynomial {
    // coefficient of z^k at index k; invariant: empty or nonzero leading coeff
    std::vector<gaussian_rational> c;

    polynomial() = default;
    explicit polynomial(std::vector<gaussian_rational> coeffs) : c(std::move(coeffs)) {
        trim();
    }
    polynomial(long v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) c.push_back(gaussian_rational(v));
    }
    polynomial(gaussian_rational v) {  // NOLINT(google-explicit-constructor)
        if (!v.is_zero()) c.push_back(std::move(v));
    }

    static polynomial z() { return polynomial({gaussian_rational(0), gaussian_rational(1)}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c.size()) - 1; }

    const gaussian_rational& leading() const {
        static const gaussian_rational zero{};
        return c.empty() ? zero : c.back();
    }

    gaussian_rational coeff(long k) const {
        if (k < 0 || k >= static_cast<long>(c.size())) return {};
        return c[static_cast<std::size_t>(k)];
    }

    friend polynomial operator+(const polynomial& p, const polynomial& q) {
        std::vector<gaussian_rational> r(std::max(p.c.size(), q.c.size()));
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k < p.c.size()) r[k] += p.c[k];
            if (k < q.c.size()) r[k] += q.c[k];
        }
        return polynomial(std::move(r));
    }
    friend polynomial operator-(const polynomial& p) {
        std::vector<gaussian_rational> r(p.c.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = -p.c[k];
        return polynomial(std::move(r));
    }
    friend polynomial operator-(const polynomial& p, const polynomial& q) { return p + (-q); }
    friend polynomial operator*(const polynomial& p, const polynomial& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<gaussian_rational> r(p.c.size() + q.c.size() - 1);
        for (std::size_t a = 0; a < p.c.size(); ++a)
            for (std::size_t b = 0; b < q.c.size(); ++b) r[a + b] += p.c[a] * q.c[b];
        return polynomial(std::move(r));
    }
    polynomial& operator+=(const polynomial& q) { return *this = *this + q; }
    polynomial& operator-=(const polynomial& q) { return *this = *this - q; }
    polynomial& operator*=(const polynomial& q) { return *this = *this * q; }

    friend bool operator==(const polynomial& p, const polynomial& q) { return p.c == q.c; }
    friend bool operator!=(const polynomial& p, const polynomial& q) { return !(p == q); }

    polynomial scaled(const gaussian_rational& s) const {
        if (s.is_zero()) return {};
        std::vector<gaussian_rational> r(c.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = c[k] * s;
        return polynomial(std::move(r));
    }

    polynomial derivative() const {
        if (c.size() <= 1) return {};
        std::vector<gaussian_rational> r(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k)
            r[k - 1] = c[k] * gaussian_rational(bigrat(static_cast<long>(k)));
        return polynomial(std::move(r));
    }

    polynomial pow(long e) const {
        if (e < 0) throw input_error("polynomial: negative power");
        polynomial r{1};
        polynomial base = *this;
        for (long k = e; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            if (k > 1) base *= base;
        }
        return r;
    }

    // exact division with remainder: p = q * quot + rem, deg rem < deg q
    static std::pair<polynomial, polynomial> divmod(const polynomial& p, const polynomial& q) {
        if (q.is_zero()) throw input_error("polynomial: division by zero polynomial");
        polynomial rem = p;
        polynomial quot;
        const long dq = q.degree();
        if (rem.degree() >= dq)
            quot.c.assign(static_cast<std::size_t>(rem.degree() - dq + 1), gaussian_rational{});
        while (!rem.is_zero() && rem.degree() >= dq) {
            const long shift = rem.degree() - dq;
            const gaussian_rational f = rem.leading() / q.leading();
            quot.c[static_cast<std::size_t>(shift)] = f;
            for (std::size_t k = 0; k < q.c.size(); ++k)
                rem.c[static_cast<std::size_t>(shift) + k] -= f * q.c[k];
            rem.trim();
        }
        quot.trim();
        return {std::move(quot), std::move(rem)};
    }

    // monic greatest common divisor
    static polynomial gcd(polynomial a, polynomial b) {
        while (!b.is_zero()) {
            polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a.scaled(gaussian_rational(1) / a.leading());
        return a;
    }

    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k].to_complex();
        return acc;
    }

    gaussian_rational eval_exact(const gaussian_rational& z) const {
        gaussian_rational acc{};
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
        return acc;
    }

    // multiplicity of the root z = at (0 if not a root)
    long root_multiplicity(const gaussian_rational& at) const {
        if (is_zero()) throw input_error("polynomial: valuation of zero polynomial");
        const polynomial lin({-at, gaussian_rational(1)});
        polynomial p = *this;
        long m = 0;
        while (true) {
            auto [q, r] = divmod(p, lin);
            if (!r.is_zero()) break;
            ++m;
            p = std::move(q);
        }
        return m;
    }
};

}  // namespace cechsym

#endif  // CECHSYM_POLYNOMIAL_HPP
