// SPDX-License-Identifier: MIT
//
// Exact rational functions in one variable over Q(i), kept in a canonical
// reduced form (coprime numerator/denominator, monic denominator).  Includes
// a text grammar (parser + printer with bit-exact round-trip), numeric
// evaluation with pole detection, exact derivative and point valuations, and
// the exact local tame symbol of a pair of functions.

#ifndef CECHSYM_RATIONAL_FUNCTION_HPP
#define CECHSYM_RATIONAL_FUNCTION_HPP

#include "cechsym/polynomial.hpp"
#include "cechsym/rational.hpp"

#include <cctype>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

namespace cechsym {

// degree cap for numerator and denominator of any normalized rational function
inline constexpr long k_max_rf_degree = 32;

class rational_function {
  public:
    rational_function() : num_(), den_(1) {}
    rational_function(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    rational_function(gaussian_rational v)  // NOLINT(google-explicit-constructor)
        : num_(std::move(v)), den_(1) {}
    rational_function(polynomial n, polynomial d) : num_(std::move(n)), den_(std::move(d)) {
        normalize();
    }
    explicit rational_function(polynomial n) : num_(std::move(n)), den_(1) { check_cap(); }

    static rational_function z() { return rational_function(polynomial::z()); }
    static rational_function i() { return rational_function(gaussian_rational::i()); }

    const polynomial& num() const { return num_; }
    const polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    // for constants: the value as an exact scalar
    gaussian_rational constant_value() const {
        if (!is_constant()) throw input_error("rational_function: not a constant");
        return num_.coeff(0) / den_.coeff(0);
    }

    friend rational_function operator+(const rational_function& f, const rational_function& g) {
        return rational_function(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
    }
    friend rational_function operator-(const rational_function& f) {
        rational_function r = f;
        r.num_ = -r.num_;
        return r;
    }
    friend rational_function operator-(const rational_function& f, const rational_function& g) {
        return f + (-g);
    }
    friend rational_function operator*(const rational_function& f, const rational_function& g) {
        return rational_function(f.num_ * g.num_, f.den_ * g.den_);
    }
    friend rational_function operator/(const rational_function& f, const rational_function& g) {
        if (g.is_zero()) throw input_error("rational_function: division by zero");
        return rational_function(f.num_ * g.den_, f.den_ * g.num_);
    }
    rational_function& operator+=(const rational_function& g) { return *this = *this + g; }
    rational_function& operator-=(const rational_function& g) { return *this = *this - g; }
    rational_function& operator*=(const rational_function& g) { return *this = *this * g; }
    rational_function& operator/=(const rational_function& g) { return *this = *this / g; }

    friend bool operator==(const rational_function& f, const rational_function& g) {
        return f.num_ == g.num_ && f.den_ == g.den_;
    }
    friend bool operator!=(const rational_function& f, const rational_function& g) {
        return !(f == g);
    }

    rational_function pow(long e) const {
        if (e < 0) return rational_function(1) / pow(-e);
        return rational_function(num_.pow(e), den_.pow(e));
    }

    // quotient-rule derivative, renormalized
    rational_function derivative() const {
        return rational_function(num_.derivative() * den_ - num_ * den_.derivative(),
                                 den_ * den_);
    }

    // dlog f = f'/f
    rational_function dlog() const {
        if (is_zero()) throw input_error("rational_function: dlog of zero");
        return derivative() / *this;
    }

    // numeric evaluation; rejects points within pole_tol of a denominator root
    std::complex<double> eval(std::complex<double> at, double pole_tol = 1e-12) const {
        const std::complex<double> d = den_.eval(at);
        if (std::abs(d) < pole_tol) throw pole_error("rational_function: evaluation at pole");
        return num_.eval(at) / d;
    }

    gaussian_rational eval_exact(const gaussian_rational& at) const {
        const gaussian_rational d = den_.eval_exact(at);
        if (d.is_zero()) throw pole_error("rational_function: exact evaluation at pole");
        return num_.eval_exact(at) / d;
    }

    // order of vanishing at z = at (negative at a pole)
    long valuation(const gaussian_rational& at) const {
        if (is_zero()) throw input_error("rational_function: valuation of zero");
        return num_.root_multiplicity(at) - den_.root_multiplicity(at);
    }

    // write f = (z - at)^v * u with u regular and nonvanishing at `at`;
    // returns {v, u(at)} with u(at) exact
    std::pair<long, gaussian_rational> split_at(const gaussian_rational& at) const {
        if (is_zero()) throw input_error("rational_function: split of zero");
        const polynomial lin({-at, gaussian_rational(1)});
        polynomial n = num_, d = den_;
        long v = 0;
        for (;;) {
            auto [q, r] = polynomial::divmod(n, lin);
            if (!r.is_zero()) break;
            ++v;
            n = std::move(q);
        }
        for (;;) {
            auto [q, r] = polynomial::divmod(d, lin);
            if (!r.is_zero()) break;
            --v;
            d = std::move(q);
        }
        return {v, n.eval_exact(at) / d.eval_exact(at)};
    }

    std::string to_text() const;
    static rational_function parse(const std::string& text);

  private:
    polynomial num_;
    polynomial den_;

    void check_cap() const {
        if (num_.degree() > k_max_rf_degree || den_.degree() > k_max_rf_degree)
            throw input_error("rational_function: degree exceeds cap of 32");
    }

    void normalize() {
        if (den_.is_zero()) throw input_error("rational_function: zero denominator");
        if (num_.is_zero()) {
            den_ = polynomial(1);
            return;
        }
        const polynomial g = polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = polynomial::divmod(num_, g).first;
            den_ = polynomial::divmod(den_, g).first;
        }
        const gaussian_rational lead = den_.leading();
        num_ = num_.scaled(gaussian_rational(1) / lead);
        den_ = den_.scaled(gaussian_rational(1) / lead);
        check_cap();
    }
};

// exact local tame symbol at z = at:
//   (f, g)_at = (-1)^(v(f) v(g)) * (f^v(g) / g^v(f))(at)
inline gaussian_rational tame_symbol_value(const rational_function& f,
                                           const rational_function& g,
                                           const gaussian_rational& at) {
    if (f.is_zero() || g.is_zero())
        throw input_error("tame_symbol_value: arguments must be nonzero");
    const auto [vf, uf] = f.split_at(at);
    const auto [vg, ug] = g.split_at(at);
    gaussian_rational r = uf.pow(vg) / ug.pow(vf);
    if ((vf * vg) % 2 != 0) r = -r;
    return r;
}

// ---------------------------------------------------------------------------
// text grammar
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ('-')? digits)?
//   atom   := 'z' | 'i' | digits | '(' expr ')'
//
// Integer literals are nonnegative; rationals like 3/4 arise from division.
// ---------------------------------------------------------------------------

namespace detail {

class rf_parser {
  public:
    explicit rf_parser(const std::string& text) : s_(text) {}

    rational_function run() {
        rational_function r = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error("rational_function parse error at offset " +
                          std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    rational_function parse_expr() {
        rational_function acc = parse_term();
        for (;;) {
            if (accept('+'))
                acc += parse_term();
            else if (accept('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    rational_function parse_term() {
        rational_function acc = parse_unary();
        for (;;) {
            if (accept('*'))
                acc *= parse_unary();
            else if (accept('/'))
                acc /= parse_unary();
            else
                return acc;
        }
    }

    rational_function parse_unary() {
        if (accept('-')) return -parse_unary();
        return parse_power();
    }

    rational_function parse_power() {
        rational_function base = parse_atom();
        if (accept('^')) {
            const bool neg = accept('-');
            const long e = parse_integer("exponent");
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    long parse_integer(const char* what) {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail(std::string("expected ") + what);
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) fail("integer literal too large");
            ++pos_;
        }
        return v;
    }

    rational_function parse_atom() {
        const char c = peek();
        if (c == 'z') {
            ++pos_;
            return rational_function::z();
        }
        if (c == 'i') {
            ++pos_;
            return rational_function::i();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            bigint v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_] - '0');
                ++pos_;
            }
            return rational_function(gaussian_rational(bigrat(v)));
        }
        if (accept('(')) {
            rational_function inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail("expected 'z', 'i', an integer, or '('");
    }
};

// prints a positive rational p/q (or p when q == 1)
inline std::string positive_rat_text(const bigrat& q) {
    std::string s = to_string(q);
    return s;
}

// prints a coefficient factor; `lead` says whether this term opens the sum.
// Produces e.g. "3", "-3/2", "i", "-i", "2*i", "(1+2*i)", "-(1/2+i)".
inline void append_coeff_term(std::string& out, const gaussian_rational& c, bool lead,
                              long power) {
    const bool real_only = c.im == 0;
    const bool imag_only = c.re == 0 && c.im != 0;
    auto sign_prefix = [&](bool negative) {
        if (lead)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
    };
    auto append_var = [&](bool have_coeff_text) {
        if (power == 0) {
            if (!have_coeff_text) out += "1";
            return;
        }
        if (have_coeff_text) out += "*";
        out += "z";
        if (power > 1) out += "^" + std::to_string(power);
    };
    if (real_only) {
        const bool neg = c.re < 0;
        sign_prefix(neg);
        const bigrat mag = neg ? bigrat(-c.re) : c.re;
        if (mag == 1 && power != 0) {
            append_var(false);
        } else {
            out += positive_rat_text(mag);
            append_var(true);
        }
        return;
    }
    if (imag_only) {
        const bool neg = c.im < 0;
        sign_prefix(neg);
        const bigrat mag = neg ? bigrat(-c.im) : c.im;
        if (mag == 1)
            out += "i";
        else
            out += positive_rat_text(mag) + "*i";
        append_var(true);
        return;
    }
    // mixed real + imaginary coefficient: keep it grouped
    sign_prefix(false);
    out += "(";
    std::string inner;
    append_coeff_term(inner, gaussian_rational(c.re), true, 0);
    append_coeff_term(inner, gaussian_rational(bigrat(0), c.im), false, 0);
    out += inner;
    out += ")";
    append_var(true);
}

inline std::string polynomial_text(const polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool lead = true;
    for (long k = p.degree(); k >= 0; --k) {
        const gaussian_rational c = p.coeff(k);
        if (c.is_zero()) continue;
        append_coeff_term(out, c, lead, k);
        lead = false;
    }
    return out;
}

}  // namespace detail

inline std::string rational_function::to_text() const {
    if (den_.degree() == 0) {
        // monic constant denominator is exactly 1
        return detail::polynomial_text(num_);
    }
    return "(" + detail::polynomial_text(num_) + ")/(" + detail::polynomial_text(den_) + ")";
}

inline rational_function rational_function::parse(const std::string& text) {
    return detail::rf_parser(text).run();
}

inline std::string to_string(const rational_function& f) { return f.to_text(); }

}  // namespace cechsym

#endif  // CECHSYM_RATIONAL_FUNCTION_HPP
