// SPDX-License-Identifier: MIT
//
// Symbolic scalar expressions over the annulus: exact twisted constants,
// rational functions of z, branches of logarithms, log-moduli, complex
// conjugation, integer powers, products, and sums.  Expressions are immutable
// DAGs kept in a canonical form (constants folded, conjugation pushed to
// leaves, products flattened and sorted, sums collected with exact
// coefficients), so identical values built along different routes compare
// structurally equal and exact cancellations really produce zero.
//
// The two Wirtinger derivatives and the real/imaginary projections are
// implemented as expression transformers.

#ifndef CECHSYM_EXPR_HPP
#define CECHSYM_EXPR_HPP

#include "cechsym/branch.hpp"
#include "cechsym/rational.hpp"
#include "cechsym/rational_function.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace cechsym {

class expr;

namespace detail {

// crat is the antiholomorphic counterpart of rat: a crat node with payload R
// stands for the function z -> conj(R(z)); keeping it as a leaf lets sums of
// conjugated rational functions pool their payloads exactly
enum class expr_kind { cnst, rat, crat, log, log_abs, conj, pow, prod, sum };

struct expr_node {
    expr_kind kind;
    twisted_scalar cval;                      // cnst value, or prod coefficient
    rational_function rval;                   // rat / crat / log_abs payload
    std::shared_ptr<const log_branch> lval;   // log payload
    std::vector<expr> children;               // conj/pow: 1, prod: factors, sum: terms
    long exponent = 0;                        // pow
};

int compare_rf(const rational_function& a, const rational_function& b);

}  // namespace detail

class expr {
  public:
    expr() : n_(zero_node()) {}

    detail::expr_kind kind() const { return n_->kind; }
    const twisted_scalar& const_value() const { return n_->cval; }
    const rational_function& rat_value() const { return n_->rval; }
    const log_branch& log_value() const { return *n_->lval; }
    const std::vector<expr>& children() const { return n_->children; }
    long exponent() const { return n_->exponent; }

    bool is_zero() const {
        return n_->kind == detail::expr_kind::cnst && n_->cval.is_zero();
    }
    bool is_const() const { return n_->kind == detail::expr_kind::cnst; }

    std::complex<double> eval(std::complex<double> z) const;

    static int compare(const expr& a, const expr& b);
    friend bool operator==(const expr& a, const expr& b) { return compare(a, b) == 0; }
    friend bool operator!=(const expr& a, const expr& b) { return compare(a, b) != 0; }

    static expr from_node(std::shared_ptr<const detail::expr_node> n) {
        expr e;
        e.n_ = std::move(n);
        return e;
    }
    const detail::expr_node& node() const { return *n_; }

  private:
    std::shared_ptr<const detail::expr_node> n_;

    static const std::shared_ptr<const detail::expr_node>& zero_node() {
        static const auto z = [] {
            auto n = std::make_shared<detail::expr_node>();
            n->kind = detail::expr_kind::cnst;
            n->cval = twisted_scalar{gaussian_rational(0), 0};
            return std::shared_ptr<const detail::expr_node>(n);
        }();
        return z;
    }
};

// ---------------------------------------------------------------------------
// factories (canonicalizing constructors)
// ---------------------------------------------------------------------------

inline expr make_const(twisted_scalar v) {
    auto n = std::make_shared<detail::expr_node>();
    n->kind = detail::expr_kind::cnst;
    n->cval = std::move(v);
    return expr::from_node(n);
}

inline expr make_int(long v) { return make_const(twisted_scalar{gaussian_rational(v), 0}); }
inline expr make_gauss(gaussian_rational v) {
    return make_const(twisted_scalar{std::move(v), 0});
}
// (2*pi*i)^p as an exact constant
inline expr make_two_pi_i(int p = 1) {
    return make_const(twisted_scalar{gaussian_rational(1), p});
}

inline expr make_rat(rational_function f) {
    if (f.is_constant()) return make_gauss(f.constant_value());
    auto n = std::make_shared<detail::expr_node>();
    n->kind = detail::expr_kind::rat;
    n->rval = std::move(f);
    return expr::from_node(n);
}

// the function z -> conj(f(z))
inline expr make_crat(rational_function f) {
    if (f.is_constant()) return make_gauss(f.constant_value().conj());
    auto n = std::make_shared<detail::expr_node>();
    n->kind = detail::expr_kind::crat;
    n->rval = std::move(f);
    return expr::from_node(n);
}

inline expr make_log(log_branch b) {
    // a branch of log over a constant function is the constant base value
    if (b.fn().is_constant() && b.base_value() == std::complex<double>(0.0, 0.0))
        return make_int(0);
    auto n = std::make_shared<detail::expr_node>();
    n->kind = detail::expr_kind::log;
    n->lval = std::make_shared<const log_branch>(std::move(b));
    return expr::from_node(n);
}

inline expr make_log_abs(rational_function f) {
    if (f.is_zero()) throw input_error("make_log_abs: zero function");
    auto n = std::make_shared<detail::expr_node>();
    n->kind = detail::expr_kind::log_abs;
    n->rval = std::move(f);
    return expr::from_node(n);
}

expr make_conj(const expr& u);
expr make_pow(const expr& u, long e);
expr make_prod(std::vector<expr> factors);
expr make_sum(std::vector<expr> terms);

inline expr operator+(const expr& a, const expr& b) { return make_sum({a, b}); }
inline expr operator*(const expr& a, const expr& b) { return make_prod({a, b}); }
inline expr operator-(const expr& a) { return make_prod({make_int(-1), a}); }
inline expr operator-(const expr& a, const expr& b) { return make_sum({a, -b}); }

// ---------------------------------------------------------------------------
// comparison
// ---------------------------------------------------------------------------

namespace detail {

inline int compare_gaussian(const gaussian_rational& a, const gaussian_rational& b) {
    if (a.re != b.re) return a.re < b.re ? -1 : 1;
    if (a.im != b.im) return a.im < b.im ? -1 : 1;
    return 0;
}

inline int compare_rf(const rational_function& a, const rational_function& b) {
    auto cmp_poly = [](const polynomial& p, const polynomial& q) {
        if (p.degree() != q.degree()) return p.degree() < q.degree() ? -1 : 1;
        for (long k = 0; k <= p.degree(); ++k) {
            const int c = compare_gaussian(p.coeff(k), q.coeff(k));
            if (c != 0) return c;
        }
        return 0;
    };
    const int cn = cmp_poly(a.num(), b.num());
    if (cn != 0) return cn;
    return cmp_poly(a.den(), b.den());
}

inline int compare_twisted(const twisted_scalar& a, const twisted_scalar& b) {
    if (a.is_zero() && b.is_zero()) return 0;
    if (a.is_zero() != b.is_zero()) return a.is_zero() ? -1 : 1;
    if (a.t != b.t) return a.t < b.t ? -1 : 1;
    return compare_gaussian(a.a, b.a);
}

}  // namespace detail

inline int expr::compare(const expr& a, const expr& b) {
    if (a.n_ == b.n_) return 0;
    using detail::expr_kind;
    const auto ka = a.kind(), kb = b.kind();
    if (ka != kb) return static_cast<int>(ka) < static_cast<int>(kb) ? -1 : 1;
    switch (ka) {
        case expr_kind::cnst:
            return detail::compare_twisted(a.n_->cval, b.n_->cval);
        case expr_kind::rat:
        case expr_kind::crat:
        case expr_kind::log_abs:
            return detail::compare_rf(a.n_->rval, b.n_->rval);
        case expr_kind::log:
            return log_branch::compare(*a.n_->lval, *b.n_->lval);
        case expr_kind::conj:
            return compare(a.n_->children[0], b.n_->children[0]);
        case expr_kind::pow: {
            const int c = compare(a.n_->children[0], b.n_->children[0]);
            if (c != 0) return c;
            if (a.n_->exponent != b.n_->exponent)
                return a.n_->exponent < b.n_->exponent ? -1 : 1;
            return 0;
        }
        case expr_kind::prod:
        case expr_kind::sum: {
            const auto& ca = a.n_->children;
            const auto& cb = b.n_->children;
            if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
            for (std::size_t k = 0; k < ca.size(); ++k) {
                const int c = compare(ca[k], cb[k]);
                if (c != 0) return c;
            }
            if (ka == expr_kind::prod)
                return detail::compare_twisted(a.n_->cval, b.n_->cval);
            return 0;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// canonicalizing constructors (continued)
// ---------------------------------------------------------------------------

inline expr make_conj(const expr& u) {
    using detail::expr_kind;
    switch (u.kind()) {
        case expr_kind::cnst:
            return make_const(u.const_value().conj());
        case expr_kind::log_abs:
            return u;  // real-valued
        case expr_kind::rat:
            return make_crat(u.rat_value());
        case expr_kind::crat:
            return make_rat(u.rat_value());
        case expr_kind::conj:
            return u.children()[0];
        case expr_kind::pow:
            return make_pow(make_conj(u.children()[0]), u.exponent());
        case expr_kind::prod: {
            std::vector<expr> f;
            f.reserve(u.children().size() + 1);
            f.push_back(make_const(u.const_value().conj()));
            for (const auto& c : u.children()) f.push_back(make_conj(c));
            return make_prod(std::move(f));
        }
        case expr_kind::sum: {
            std::vector<expr> t;
            t.reserve(u.children().size());
            for (const auto& c : u.children()) t.push_back(make_conj(c));
            return make_sum(std::move(t));
        }
        case expr_kind::log: {
            auto n = std::make_shared<detail::expr_node>();
            n->kind = expr_kind::conj;
            n->children = {u};
            return expr::from_node(n);
        }
    }
    throw error("make_conj: unreachable");
}

inline expr make_pow(const expr& u, long e) {
    using detail::expr_kind;
    if (e == 0) return make_int(1);
    if (e == 1) return u;
    switch (u.kind()) {
        case expr_kind::cnst: {
            const twisted_scalar& c = u.const_value();
            if (c.is_zero()) {
                if (e < 0) throw input_error("make_pow: zero to negative power");
                return make_const(c);
            }
            const long ip = c.t * e;
            if (ip > 1000 || ip < -1000) throw input_error("make_pow: twist overflow");
            return make_const(twisted_scalar{c.a.pow(e), static_cast<int>(ip)});
        }
        case expr_kind::rat:
            return make_rat(u.rat_value().pow(e));
        case expr_kind::crat:
            return make_crat(u.rat_value().pow(e));
        case expr_kind::conj:
            return make_conj(make_pow(u.children()[0], e));
        case expr_kind::pow:
            return make_pow(u.children()[0], u.exponent() * e);
        case expr_kind::prod: {
            std::vector<expr> f;
            f.push_back(make_pow(make_const(u.const_value()), e));
            for (const auto& c : u.children()) f.push_back(make_pow(c, e));
            return make_prod(std::move(f));
        }
        default: {
            auto n = std::make_shared<detail::expr_node>();
            n->kind = expr_kind::pow;
            n->children = {u};
            n->exponent = e;
            return expr::from_node(n);
        }
    }
}

inline expr make_prod(std::vector<expr> factors) {
    using detail::expr_kind;
    twisted_scalar coeff{gaussian_rational(1), 0};
    rational_function rat_acc(1);
    rational_function crat_acc(1);
    bool have_rat = false;
    bool have_crat = false;
    std::vector<expr> rest;
    auto absorb = [&](auto&& self, const expr& f) -> void {
        switch (f.kind()) {
            case expr_kind::cnst:
                coeff = coeff * f.const_value();
                break;
            case expr_kind::rat:
                rat_acc *= f.rat_value();
                have_rat = true;
                break;
            case expr_kind::crat:
                crat_acc *= f.rat_value();
                have_crat = true;
                break;
            case expr_kind::prod:
                coeff = coeff * f.const_value();
                for (const auto& c : f.children()) self(self, c);
                break;
            default:
                rest.push_back(f);
                break;
        }
    };
    for (const auto& f : factors) absorb(absorb, f);
    if (coeff.is_zero()) return make_const(twisted_scalar{gaussian_rational(0), 0});
    if (have_crat && crat_acc.is_constant()) {
        coeff = coeff * twisted_scalar{crat_acc.constant_value().conj(), 0};
        if (coeff.is_zero()) return make_const(twisted_scalar{gaussian_rational(0), 0});
        have_crat = false;
    }
    if (have_rat) {
        if (rat_acc.is_constant()) {
            coeff = coeff * twisted_scalar{rat_acc.constant_value(), 0};
            if (coeff.is_zero()) return make_const(twisted_scalar{gaussian_rational(0), 0});
            have_rat = false;
        } else {
            // keep the scalar part of the coefficient inside the rational
            // factor so that a canonical product with a rational factor
            // always has a unit scalar in front of it
            rat_acc *= rational_function(coeff.a);
            coeff = twisted_scalar{gaussian_rational(1), coeff.t};
            rest.push_back(make_rat(rat_acc));
        }
    }
    if (have_crat) {
        if (!have_rat) {
            // no holomorphic rational factor took the scalar, so fold it into
            // the antiholomorphic one: a * conj(S(z)) = conj(conj(a) * S(z))
            crat_acc *= rational_function(coeff.a.conj());
            coeff = twisted_scalar{gaussian_rational(1), coeff.t};
        }
        rest.push_back(make_crat(crat_acc));
    }
    // distribute over sum factors so that sums of products can cancel term
    // by term; canonical products therefore never contain a sum
    for (std::size_t si = 0; si < rest.size(); ++si) {
        if (rest[si].kind() == expr_kind::sum) {
            std::vector<expr> expanded;
            for (const auto& t : rest[si].children()) {
                std::vector<expr> fs;
                fs.reserve(rest.size() + 1);
                fs.push_back(make_const(coeff));
                for (std::size_t k = 0; k < rest.size(); ++k)
                    if (k != si) fs.push_back(rest[k]);
                fs.push_back(t);
                expanded.push_back(make_prod(std::move(fs)));
            }
            return make_sum(std::move(expanded));
        }
    }
    std::sort(rest.begin(), rest.end(),
              [](const expr& x, const expr& y) { return expr::compare(x, y) < 0; });
    if (rest.empty()) return make_const(coeff);
    if (rest.size() == 1 && coeff.t == 0 && coeff.a == gaussian_rational(1)) return rest[0];
    auto n = std::make_shared<detail::expr_node>();
    n->kind = expr_kind::prod;
    n->cval = coeff;
    n->children = std::move(rest);
    return expr::from_node(n);
}

inline expr make_sum(std::vector<expr> terms) {
    using detail::expr_kind;
    // every term is R(z) * (2*pi*i)^t * (transcendental factors); terms with
    // the same factor list and twist pool their rational coefficients exactly.
    // terms whose only rational content is antiholomorphic pool in a second
    // channel, so conj(R1) + conj(R2) collapses to conj(R1 + R2)
    struct key {
        std::vector<expr> core;  // sorted factors other than the rational part
        int twist;
    };
    struct key_less {
        bool operator()(const key& a, const key& b) const {
            if (a.core.size() != b.core.size()) return a.core.size() < b.core.size();
            for (std::size_t k = 0; k < a.core.size(); ++k) {
                const int c = expr::compare(a.core[k], b.core[k]);
                if (c != 0) return c < 0;
            }
            return a.twist < b.twist;
        }
    };
    std::map<key, rational_function, key_less> acc;
    std::map<key, rational_function, key_less> acc_anti;
    auto add_term = [&](auto&& self, const expr& t) -> void {
        switch (t.kind()) {
            case expr_kind::sum:
                for (const auto& c : t.children()) self(self, c);
                break;
            case expr_kind::cnst:
                if (!t.const_value().is_zero())
                    acc[key{{}, t.const_value().t}] += rational_function(t.const_value().a);
                break;
            case expr_kind::rat:
                acc[key{{}, 0}] += t.rat_value();
                break;
            case expr_kind::crat:
                acc_anti[key{{}, 0}] += t.rat_value();
                break;
            case expr_kind::prod: {
                rational_function r(t.const_value().a);
                bool prod_has_rat = false;
                rational_function anti(1);
                bool prod_has_crat = false;
                std::vector<expr> core;
                for (const auto& c : t.children()) {
                    if (c.kind() == expr_kind::rat) {
                        r *= c.rat_value();
                        prod_has_rat = true;
                    } else if (c.kind() == expr_kind::crat) {
                        anti *= c.rat_value();
                        prod_has_crat = true;
                    } else {
                        core.push_back(c);
                    }
                }
                if (prod_has_crat && !prod_has_rat) {
                    // unit scalar by the product invariant; pool the
                    // antiholomorphic payload
                    acc_anti[key{std::move(core), t.const_value().t}] += anti;
                } else {
                    if (prod_has_crat) core.push_back(make_crat(anti));
                    acc[key{std::move(core), t.const_value().t}] += r;
                }
                break;
            }
            default:
                acc[key{{t}, 0}] += rational_function(gaussian_rational(1));
                break;
        }
    };
    for (const auto& t : terms) add_term(add_term, t);
    std::vector<expr> out;
    for (const auto& [k, r] : acc) {
        if (r.is_zero()) continue;
        std::vector<expr> factors;
        factors.reserve(k.core.size() + 2);
        if (k.twist != 0) factors.push_back(make_const(twisted_scalar{gaussian_rational(1), k.twist}));
        factors.push_back(make_rat(r));
        factors.insert(factors.end(), k.core.begin(), k.core.end());
        out.push_back(make_prod(std::move(factors)));
    }
    for (const auto& [k, s] : acc_anti) {
        if (s.is_zero()) continue;
        std::vector<expr> factors;
        factors.reserve(k.core.size() + 2);
        if (k.twist != 0) factors.push_back(make_const(twisted_scalar{gaussian_rational(1), k.twist}));
        factors.push_back(make_crat(s));
        factors.insert(factors.end(), k.core.begin(), k.core.end());
        out.push_back(make_prod(std::move(factors)));
    }
    if (out.empty()) return make_const(twisted_scalar{gaussian_rational(0), 0});
    if (out.size() == 1) return out[0];
    std::sort(out.begin(), out.end(),
              [](const expr& x, const expr& y) { return expr::compare(x, y) < 0; });
    auto n = std::make_shared<detail::expr_node>();
    n->kind = expr_kind::sum;
    n->children = std::move(out);
    return expr::from_node(n);
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

inline std::complex<double> expr::eval(std::complex<double> z) const {
    using detail::expr_kind;
    switch (kind()) {
        case expr_kind::cnst:
            return n_->cval.to_complex();
        case expr_kind::rat:
            return n_->rval.eval(z);
        case expr_kind::crat:
            return std::conj(n_->rval.eval(z));
        case expr_kind::log:
            return n_->lval->log_at(z);
        case expr_kind::log_abs:
            return {std::log(std::abs(n_->rval.eval(z))), 0.0};
        case expr_kind::conj:
            return std::conj(n_->children[0].eval(z));
        case expr_kind::pow: {
            const std::complex<double> base = n_->children[0].eval(z);
            long e = n_->exponent;
            const bool inv = e < 0;
            if (inv) e = -e;
            std::complex<double> r{1.0, 0.0}, b = base;
            for (long k = e; k > 0; k >>= 1) {
                if (k & 1) r *= b;
                if (k > 1) b *= b;
            }
            return inv ? 1.0 / r : r;
        }
        case expr_kind::prod: {
            std::complex<double> r = n_->cval.to_complex();
            for (const auto& c : n_->children) r *= c.eval(z);
            return r;
        }
        case expr_kind::sum: {
            std::complex<double> r{0.0, 0.0};
            for (const auto& c : n_->children) r += c.eval(z);
            return r;
        }
    }
    throw error("expr::eval: unreachable");
}

// ---------------------------------------------------------------------------
// Wirtinger derivatives and projections
// ---------------------------------------------------------------------------

expr d_zbar(const expr& u);

inline expr d_z(const expr& u) {
    using detail::expr_kind;
    switch (u.kind()) {
        case expr_kind::cnst:
        case expr_kind::crat:
            return make_int(0);
        case expr_kind::rat:
            return make_rat(u.rat_value().derivative());
        case expr_kind::log:
            return make_rat(u.log_value().fn().dlog());
        case expr_kind::log_abs:
            return make_prod({make_gauss(gaussian_rational{bigrat(1, 2)}),
                              make_rat(u.rat_value().dlog())});
        case expr_kind::conj:
            return make_conj(d_zbar(u.children()[0]));
        case expr_kind::pow:
            return make_prod({make_int(u.exponent()),
                              make_pow(u.children()[0], u.exponent() - 1),
                              d_z(u.children()[0])});
        case expr_kind::prod: {
            std::vector<expr> terms;
            for (std::size_t k = 0; k < u.children().size(); ++k) {
                std::vector<expr> fs;
                fs.push_back(make_const(u.const_value()));
                for (std::size_t j = 0; j < u.children().size(); ++j)
                    fs.push_back(j == k ? d_z(u.children()[j]) : u.children()[j]);
                terms.push_back(make_prod(std::move(fs)));
            }
            return make_sum(std::move(terms));
        }
        case expr_kind::sum: {
            std::vector<expr> terms;
            for (const auto& c : u.children()) terms.push_back(d_z(c));
            return make_sum(std::move(terms));
        }
    }
    throw error("d_z: unreachable");
}

inline expr d_zbar(const expr& u) {
    using detail::expr_kind;
    switch (u.kind()) {
        case expr_kind::cnst:
        case expr_kind::rat:
        case expr_kind::log:
            return make_int(0);
        case expr_kind::crat:
            return make_crat(u.rat_value().derivative());
        case expr_kind::log_abs:
            return make_conj(make_prod({make_gauss(gaussian_rational{bigrat(1, 2)}),
                                        make_rat(u.rat_value().dlog())}));
        case expr_kind::conj:
            return make_conj(d_z(u.children()[0]));
        case expr_kind::pow:
            return make_prod({make_int(u.exponent()),
                              make_pow(u.children()[0], u.exponent() - 1),
                              d_zbar(u.children()[0])});
        case expr_kind::prod: {
            std::vector<expr> terms;
            for (std::size_t k = 0; k < u.children().size(); ++k) {
                std::vector<expr> fs;
                fs.push_back(make_const(u.const_value()));
                for (std::size_t j = 0; j < u.children().size(); ++j)
                    fs.push_back(j == k ? d_zbar(u.children()[j]) : u.children()[j]);
                terms.push_back(make_prod(std::move(fs)));
            }
            return make_sum(std::move(terms));
        }
        case expr_kind::sum: {
            std::vector<expr> terms;
            for (const auto& c : u.children()) terms.push_back(d_zbar(c));
            return make_sum(std::move(terms));
        }
    }
    throw error("d_zbar: unreachable");
}

// projection onto (2*pi*i)^p-real values: pi_p(u) = (u + (-1)^p conj u)/2
inline expr pi_p(const expr& u, int p) {
    const expr half = make_gauss(gaussian_rational{bigrat(1, 2)});
    const expr sign = make_int(p % 2 == 0 ? 1 : -1);
    return make_sum({make_prod({half, u}), make_prod({half, sign, make_conj(u)})});
}

// the branch of log f on sector k as an expression: the factored parts keep
// their own continued branches (so the integer jumps stay additive) and the
// leading coefficient contributes a constant log leaf
inline expr sector_log_expr(const function_branches& fb, int k) {
    std::vector<expr> terms;
    for (const auto& p : fb.parts())
        terms.push_back(make_prod(
            {make_int(p.mult), make_log(p.by_sector[static_cast<std::size_t>(k)])}));
    if (fb.lead_log() != std::complex<double>(0.0, 0.0))
        terms.push_back(make_log(log_branch(rational_function(gaussian_rational(1)),
                                            {0.0, 0.0}, 0.0, 1.0, fb.lead_log(), 1)));
    return make_sum(std::move(terms));
}

}  // namespace cechsym

#endif  // CECHSYM_EXPR_HPP
