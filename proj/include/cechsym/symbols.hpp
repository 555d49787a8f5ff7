// SPDX-License-Identifier: MIT
//
// Symbols of invertible functions and line bundles as explicit cochains:
// the pairing of two functions (additive and torsor presentations, with its
// analytic connection), the hermitian refinement carrying a metric slot, the
// pairings of a function with a bundle and of two bundles (plain and
// hermitian), the bilinear obstruction 1-form, and the compatibility report
// tying the analytic and metric structures together.

#ifndef CECHSYM_SYMBOLS_HPP
#define CECHSYM_SYMBOLS_HPP

#include "cechsym/bundle.hpp"
#include "cechsym/cech.hpp"

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace cechsym {

// ---------------------------------------------------------------------------
// degree-1 and degree-2 class representatives in the twist-1 complex
// ---------------------------------------------------------------------------

// (2 pi i m_ij on edges, log_i f on vertices)
inline cech_cochain function_class(const function_branches& fb,
                                   std::shared_ptr<const nerve> nv) {
    cech_cochain c(complex_z1d(), std::move(nv), 1);
    for (const simplex& e : c.nv_ptr()->simplices(1)) {
        const long m = fb.m(e.idx[0], e.idx[1]);
        if (m == 0) continue;
        c.set(0, e,
              std::vector<form>{form::function(
                  make_const(twisted_scalar{gaussian_rational(m), 1}))});
    }
    for (const simplex& v : c.nv_ptr()->simplices(0)) {
        const expr lg = sector_log_expr(fb, v.idx[0]);
        if (lg.is_zero()) continue;
        c.set(1, v, std::vector<form>{form::function(lg)});
    }
    return c;
}

// (2 pi i c_ijk on triples, log g_ij on edges)
inline cech_cochain bundle_class(const line_bundle_data& L) {
    cech_cochain c(complex_z1d(), L.nerve_ptr(), 2);
    for (const simplex& t : L.nerve_ptr()->simplices(2)) {
        const long v = L.chern(t.idx[0], t.idx[1], t.idx[2]);
        if (v == 0) continue;
        c.set(0, t,
              std::vector<form>{form::function(
                  make_const(twisted_scalar{gaussian_rational(v), 1}))});
    }
    for (const simplex& e : L.nerve_ptr()->simplices(1)) {
        const form lg = form::function(L.log_transition(e.idx[0], e.idx[1]));
        if (lg.is_structurally_zero()) continue;
        c.set(1, e, std::vector<form>{lg});
    }
    return c;
}

namespace detail {

// -(1/(2 pi i)) as an exact constant
inline expr minus_inv_2pii() {
    return make_const(twisted_scalar{gaussian_rational(-1), -1});
}

inline rational_function checked_invertible(rational_function f, const sector_cover& cover,
                                            const char* what) {
    require_invertible_on_annulus(f, cover, what);
    return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// the pairing of two invertible functions
// ---------------------------------------------------------------------------

class tame_symbol_data {
  public:
    tame_symbol_data(rational_function f, rational_function g, sector_cover cover,
                     std::shared_ptr<const nerve> nv, int steps = 256)
        : cover_(std::move(cover)),
          nv_(std::move(nv)),
          f_(detail::checked_invertible(std::move(f), cover_, "symbol argument f")),
          g_(detail::checked_invertible(std::move(g), cover_, "symbol argument g")),
          fb_(f_, cover_, steps),
          gb_(g_, cover_, steps),
          cup_(deligne_cup(function_class(fb_, nv_), function_class(gb_, nv_),
                           complex_z2d())),
          torsor_(complex_mult_conn(), nv_, 1) {
        for (const simplex& e : nv_->simplices(1)) {
            const long mij = fb_.m(e.idx[0], e.idx[1]);
            if (mij != 0) torsor_.set(0, e, cvalue(g_.pow(-mij)));
        }
        for (const simplex& v : nv_->simplices(0)) {
            const form w = scale(detail::minus_inv_2pii(), omega(v.idx[0]));
            if (w.is_structurally_zero()) continue;
            torsor_.set(1, v, std::vector<form>{w});
        }
    }

    const sector_cover& cover() const { return cover_; }
    const std::shared_ptr<const nerve>& nerve_ptr() const { return nv_; }
    const rational_function& f() const { return f_; }
    const rational_function& g() const { return g_; }
    const function_branches& branches_f() const { return fb_; }
    const function_branches& branches_g() const { return gb_; }
    long m(int i, int j) const { return fb_.m(i, j); }
    long n(int i, int j) const { return gb_.m(i, j); }

    // degree-2 cochain ((2 pi i)^2 m_ij n_jk, -2 pi i m_ij log_j g,
    // log_i f dg/g) obtained as the cup product of the two classes
    const cech_cochain& cup_cocycle() const { return cup_; }

    // degree-1 torsor presentation (g^{-m_ij}, -(1/(2 pi i)) log_i f dg/g)
    const cech_cochain& torsor_cochain() const { return torsor_; }

    expr sector_log_f(int i) const { return sector_log_expr(fb_, i); }
    expr sector_log_g(int i) const { return sector_log_expr(gb_, i); }

    // connection form omega_i = log_i f dg/g
    form omega(int i) const {
        return form::dz(make_prod({sector_log_f(i), make_rat(g_.dlog())}));
    }

    // action on a section with coefficient h in sector i:
    // dh - h (1/(2 pi i)) log_i f dg/g
    form connection_action(int i, const expr& h) const {
        return d(form::function(h)) +
               scale(make_prod({h, detail::minus_inv_2pii()}), omega(i));
    }

    // homotopy chain T with (a cup b) + (b cup a) = D(T) for the hermitian
    // product of the two degree-1 classes:
    // T = (-(2 pi i)^2 m_ij n_ij on edges, log_i f log_i g on vertices)
    cech_cochain hermitian_homotopy_witness() const {
        cech_cochain T(complex_herm_z2(), nv_, 1);
        for (const simplex& e : nv_->simplices(1)) {
            const long v = -m(e.idx[0], e.idx[1]) * n(e.idx[0], e.idx[1]);
            if (v == 0) continue;
            T.set(0, e,
                  std::vector<form>{form::function(
                      make_const(twisted_scalar{gaussian_rational(v), 2}))});
        }
        for (const simplex& s : nv_->simplices(0)) {
            const expr u = make_prod({sector_log_f(s.idx[0]), sector_log_g(s.idx[0])});
            if (u.is_zero()) continue;
            T.set(1, s, std::vector<form>{form::function(u)});
        }
        return T;
    }

  private:
    sector_cover cover_;
    std::shared_ptr<const nerve> nv_;
    rational_function f_;
    rational_function g_;
    function_branches fb_;
    function_branches gb_;
    cech_cochain cup_;
    cech_cochain torsor_;
};

// ---------------------------------------------------------------------------
// the hermitian refinement
// ---------------------------------------------------------------------------

class hermitian_tame_symbol_data {
  public:
    hermitian_tame_symbol_data(rational_function f, rational_function g,
                               sector_cover cover, std::shared_ptr<const nerve> nv,
                               int steps = 256)
        : cover_(std::move(cover)),
          nv_(std::move(nv)),
          f_(detail::checked_invertible(std::move(f), cover_, "symbol argument f")),
          g_(detail::checked_invertible(std::move(g), cover_, "symbol argument g")),
          fb_(f_, cover_, steps),
          gb_(g_, cover_, steps),
          cup_(hermitian_cup(function_class(fb_, nv_), function_class(gb_, nv_),
                             complex_herm_z2())),
          normalized_(complex_met_z1(), nv_, 2) {
        for (const simplex& t : nv_->simplices(2)) {
            const long v = fb_.m(t.idx[0], t.idx[1]) * gb_.m(t.idx[1], t.idx[2]);
            if (v == 0) continue;
            normalized_.set(0, t,
                            std::vector<form>{form::function(
                                make_const(twisted_scalar{gaussian_rational(v), 1}))});
        }
        for (const simplex& e : nv_->simplices(1)) {
            const long mij = fb_.m(e.idx[0], e.idx[1]);
            if (mij == 0) continue;
            normalized_.set(
                1, e,
                std::vector<form>{form::function(make_prod(
                    {make_int(-mij), sector_log_expr(gb_, e.idx[1])}))});
        }
        for (const simplex& s : nv_->simplices(0)) {
            const expr sigma = metric_slot(s.idx[0]);
            if (sigma.is_zero()) continue;
            normalized_.set(2, s, std::vector<form>{form::function(sigma)});
        }
    }

    const sector_cover& cover() const { return cover_; }
    const std::shared_ptr<const nerve>& nerve_ptr() const { return nv_; }
    const rational_function& f() const { return f_; }
    const rational_function& g() const { return g_; }
    const function_branches& branches_f() const { return fb_; }
    const function_branches& branches_g() const { return gb_; }

    // degree-2 product of the two classes in the twist-2 hermitian complex
    const cech_cochain& cup_cocycle() const { return cup_; }

    // the same class after division by 2 pi i:
    // (2 pi i m_ij n_jk, -m_ij log_j g, -(1/(2 pi i)) pi_1(log_i f) log|g|)
    const cech_cochain& normalized_cocycle() const { return normalized_; }

    // metric slot = half the logarithm of the local metric representative
    expr metric_slot(int i) const {
        return make_prod({detail::minus_inv_2pii(),
                          pi_p(sector_log_expr(fb_, i), 1), make_log_abs(g_)});
    }

    expr metric_log(int i) const { return make_prod({make_int(2), metric_slot(i)}); }

    // length of a section with additive coordinate h in sector i:
    // (1/(2 pi i)) (pi_1(h) - pi_1(log_i f) log|g|)
    expr section_length_log(int i, const expr& h) const {
        return make_prod(
            {make_const(twisted_scalar{gaussian_rational(1), -1}),
             make_sum({pi_p(h, 1),
                       make_prod({make_int(-1), pi_p(sector_log_expr(fb_, i), 1),
                                  make_log_abs(g_)})})});
    }

  private:
    sector_cover cover_;
    std::shared_ptr<const nerve> nv_;
    rational_function f_;
    rational_function g_;
    function_branches fb_;
    function_branches gb_;
    cech_cochain cup_;
    cech_cochain normalized_;
};

// ---------------------------------------------------------------------------
// pairings with line bundles (torsor presentations)
// ---------------------------------------------------------------------------

// degree-2: (g_jk^{-m_ij} on triples, -(1/(2 pi i)) log_i f dlog g_ij on edges)
inline cech_cochain symbol_fL(const function_branches& fb, const line_bundle_data& L) {
    cech_cochain c(complex_mult_conn(), L.nerve_ptr(), 2);
    for (const simplex& t : L.nerve_ptr()->simplices(2)) {
        const long mij = fb.m(t.idx[0], t.idx[1]);
        if (mij == 0) continue;
        c.set(0, t, cvalue(L.transition(t.idx[1], t.idx[2]).pow(-mij)));
    }
    for (const simplex& e : L.nerve_ptr()->simplices(1)) {
        const form w = form::dz(
            make_prod({detail::minus_inv_2pii(), sector_log_expr(fb, e.idx[0]),
                       make_rat(L.transition(e.idx[0], e.idx[1]).dlog())}));
        if (w.is_structurally_zero()) continue;
        c.set(1, e, std::vector<form>{w});
    }
    return c;
}

// hermitian degree-2: the same triple slot with metric entries
// -(1/(2 pi i)) pi_1(log_i f) pi_0(log g_ij) on edges
inline cech_cochain hermitian_symbol_fL(const function_branches& fb,
                                        const line_bundle_data& L) {
    cech_cochain c(complex_mult_met(), L.nerve_ptr(), 2);
    for (const simplex& t : L.nerve_ptr()->simplices(2)) {
        const long mij = fb.m(t.idx[0], t.idx[1]);
        if (mij == 0) continue;
        c.set(0, t, cvalue(L.transition(t.idx[1], t.idx[2]).pow(-mij)));
    }
    for (const simplex& e : L.nerve_ptr()->simplices(1)) {
        const expr sigma =
            make_prod({detail::minus_inv_2pii(), pi_p(sector_log_expr(fb, e.idx[0]), 1),
                       pi_p(L.log_transition(e.idx[0], e.idx[1]), 0)});
        if (sigma.is_zero()) continue;
        c.set(1, e, std::vector<form>{form::function(sigma)});
    }
    return c;
}

// degree-3: (g2_kl^{-c_ijk} on quadruples,
//            -(1/(2 pi i)) log g_ij dlog g2_jk on triples)
inline cech_cochain symbol_LL(const line_bundle_data& L, const line_bundle_data& L2) {
    cech_cochain c(complex_mult_conn(), L.nerve_ptr(), 3);
    for (const simplex& q : L.nerve_ptr()->simplices(3)) {
        const long cijk = L.chern(q.idx[0], q.idx[1], q.idx[2]);
        if (cijk == 0) continue;
        c.set(0, q, cvalue(L2.transition(q.idx[2], q.idx[3]).pow(-cijk)));
    }
    for (const simplex& t : L.nerve_ptr()->simplices(2)) {
        const form w = form::dz(
            make_prod({detail::minus_inv_2pii(), L.log_transition(t.idx[0], t.idx[1]),
                       make_rat(L2.transition(t.idx[1], t.idx[2]).dlog())}));
        if (w.is_structurally_zero()) continue;
        c.set(1, t, std::vector<form>{w});
    }
    return c;
}

// hermitian degree-3 variant with metric entries
// -(1/(2 pi i)) pi_1(log g_ij) pi_0(log g2_jk) on triples
inline cech_cochain hermitian_symbol_LL(const line_bundle_data& L,
                                        const line_bundle_data& L2) {
    cech_cochain c(complex_mult_met(), L.nerve_ptr(), 3);
    for (const simplex& q : L.nerve_ptr()->simplices(3)) {
        const long cijk = L.chern(q.idx[0], q.idx[1], q.idx[2]);
        if (cijk == 0) continue;
        c.set(0, q, cvalue(L2.transition(q.idx[2], q.idx[3]).pow(-cijk)));
    }
    for (const simplex& t : L.nerve_ptr()->simplices(2)) {
        const expr sigma = make_prod({detail::minus_inv_2pii(),
                                      pi_p(L.log_transition(t.idx[0], t.idx[1]), 1),
                                      pi_p(L2.log_transition(t.idx[1], t.idx[2]), 0)});
        if (sigma.is_zero()) continue;
        c.set(1, t, std::vector<form>{form::function(sigma)});
    }
    return c;
}

// additive counterparts obtained directly as cup products of the classes
inline cech_cochain symbol_fL_additive(const function_branches& fb,
                                       const line_bundle_data& L) {
    return deligne_cup(function_class(fb, L.nerve_ptr()), bundle_class(L), complex_z2d());
}

inline cech_cochain hermitian_symbol_fL_additive(const function_branches& fb,
                                                 const line_bundle_data& L) {
    return hermitian_cup(function_class(fb, L.nerve_ptr()), bundle_class(L),
                         complex_herm_z2());
}

inline cech_cochain symbol_LL_additive(const line_bundle_data& L,
                                       const line_bundle_data& L2) {
    return deligne_cup(bundle_class(L), bundle_class(L2), complex_z2d());
}

inline cech_cochain hermitian_symbol_LL_additive(const line_bundle_data& L,
                                                 const line_bundle_data& L2) {
    return hermitian_cup(bundle_class(L), bundle_class(L2), complex_herm_z2());
}

// ---------------------------------------------------------------------------
// the bilinear obstruction 1-form and the compatibility report
// ---------------------------------------------------------------------------

// r2(f, g) = pi_1(dlog f) log|g| - log|f| pi_1(dlog g); a global 1-form with
// no branch choices
inline form r2_form(const rational_function& f, const rational_function& g) {
    if (f.is_zero() || g.is_zero()) throw input_error("r2_form: zero argument");
    const form df = pi_p(form::dz(make_rat(f.dlog())), 1);
    const form dg = pi_p(form::dz(make_rat(g.dlog())), 1);
    return scale(make_log_abs(g), df) - scale(make_log_abs(f), dg);
}

struct obstruction_report {
    double identity_residual = 0.0;  // sup |pi_1(omega_i) + d sigma_i + r2(f, g)|
    double r2_sup = 0.0;             // sup |r2(f, g)| over all sectors
    bool r2_structurally_zero = false;

    bool compatible(double tol) const { return r2_sup < tol; }
};

// evaluates pi_1(omega_i) + d sigma_i + r2(f, g) with omega_i = log_i f dg/g
// and sigma_i = -pi_1(log_i f) log|g|; the sum vanishes identically, so the
// analytic and metric data glue precisely when r2(f, g) = 0
inline obstruction_report compatibility_obstruction(const rational_function& f,
                                                    const rational_function& g,
                                                    const sector_cover& cover,
                                                    std::shared_ptr<const nerve> nv,
                                                    int samples = 20,
                                                    std::uint64_t seed = 9,
                                                    int steps = 256) {
    const function_branches fb(f, cover, steps);
    const form r2 = r2_form(f, g);
    obstruction_report rep;
    rep.r2_structurally_zero = r2.is_structurally_zero();
    for (const simplex& s : nv->simplices(0)) {
        const int i = s.idx[0];
        const expr logf = sector_log_expr(fb, i);
        const form omega = form::dz(make_prod({logf, make_rat(g.dlog())}));
        const form sigma =
            form::function(make_prod({make_int(-1), pi_p(logf, 1), make_log_abs(g)}));
        const form total = pi_p(omega, 1) + d(sigma) + r2;
        for (const auto& z : sample_points(cover, s, samples, seed)) {
            for (const auto& v : total.eval(z))
                rep.identity_residual = std::max(rep.identity_residual, std::abs(v));
            for (const auto& v : r2.eval(z)) rep.r2_sup = std::max(rep.r2_sup, std::abs(v));
        }
    }
    return rep;
}

}  // namespace cechsym

#endif  // CECHSYM_SYMBOLS_HPP
