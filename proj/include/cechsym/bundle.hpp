// SPDX-License-Identifier: MIT
//
// Line bundles as transition data on a sector cover: exact multiplicative
// transition cocycles with chosen logarithm branches and their integer
// defects, hermitian metrics of the shape prod |h|^{2k}, the canonical
// connection, and closure checks for the resulting mixed cochain.  Synthetic
// higher-degree data built from integer coboundaries support the edge-metric
// and triple-metric identities on covers with deep overlaps.

#ifndef CECHSYM_BUNDLE_HPP
#define CECHSYM_BUNDLE_HPP

#include "cechsym/cech.hpp"
#include "cechsym/factor.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cechsym {

// hermitian metric data and transition data that do not satisfy the
// compatibility relation rho_j = rho_i |g_ij|^2
struct metric_incompatible_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// annulus-invertibility guard
// ---------------------------------------------------------------------------

// requires every zero and pole of f to avoid the closed annulus of the cover
inline void require_invertible_on_annulus(const rational_function& f,
                                          const sector_cover& cover,
                                          const std::string& what) {
    if (f.is_zero()) throw input_error(what + ": zero function");
    const std::complex<double> c = cover.center_point();
    for (const polynomial* part : {&f.num(), &f.den()}) {
        if (part->degree() < 1) continue;
        for (const auto& root : detail::polynomial_roots(*part)) {
            const double r = std::abs(root - c);
            if (r > cover.inner() - 1e-9 && r < cover.outer() + 1e-9)
                throw input_error(what + ": zero or pole on the annulus");
        }
    }
}

// ---------------------------------------------------------------------------
// hermitian metrics rho = prod |h|^{2k}
// ---------------------------------------------------------------------------

struct metric_factor {
    rational_function h;
    long k = 1;  // contributes |h|^{2k}
};

class hermitian_metric_data {
  public:
    explicit hermitian_metric_data(std::vector<std::vector<metric_factor>> per_sector)
        : per_sector_(std::move(per_sector)) {
        for (const auto& fs : per_sector_)
            for (const auto& f : fs)
                if (f.h.is_zero())
                    throw input_error("hermitian_metric_data: zero metric factor");
    }

    int sectors() const { return static_cast<int>(per_sector_.size()); }

    const std::vector<metric_factor>& factors(int i) const {
        if (i < 0 || i >= sectors())
            throw input_error("hermitian_metric_data: sector out of range");
        return per_sector_[static_cast<std::size_t>(i)];
    }

    // log rho_i = sum 2 k log|h|
    expr log_rho(int i) const {
        std::vector<expr> terms;
        for (const auto& f : factors(i))
            terms.push_back(make_prod({make_int(2 * f.k), make_log_abs(f.h)}));
        return make_sum(std::move(terms));
    }

    double rho(int i, std::complex<double> z) const {
        return std::exp(log_rho(i).eval(z).real());
    }

    // no zero or pole of any factor may meet the annulus
    void require_positive_on(const sector_cover& cover) const {
        for (const auto& fs : per_sector_)
            for (const auto& f : fs)
                require_invertible_on_annulus(f.h, cover, "metric factor");
    }

  private:
    std::vector<std::vector<metric_factor>> per_sector_;
};

// ---------------------------------------------------------------------------
// transition data
// ---------------------------------------------------------------------------

class line_bundle_data {
  public:
    // transitions are given on the sorted nerve edges (i < j); every edge of
    // the nerve must be covered and g_ij g_jk = g_ik must hold exactly
    line_bundle_data(sector_cover cover, std::shared_ptr<const nerve> nv,
                     std::map<std::pair<int, int>, rational_function> transitions,
                     int steps = 256)
        : cover_(std::move(cover)), nv_(std::move(nv)), g_(std::move(transitions)) {
        for (const simplex& e : nv_->simplices(1)) {
            const auto it = g_.find({e.idx[0], e.idx[1]});
            if (it == g_.end())
                throw input_error("line_bundle_data: missing transition on edge " +
                                  to_string(e));
            require_invertible_on_annulus(it->second, cover_, "transition " + to_string(e));
            logg_.emplace(std::make_pair(e.idx[0], e.idx[1]),
                          overlap_log_branch(it->second, cover_, e, steps));
        }
        for (const auto& [key, g] : g_) {
            (void)g;
            if (key.first >= key.second)
                throw input_error("line_bundle_data: transitions must be keyed i < j");
        }
        for (const simplex& t : nv_->simplices(2)) {
            const int i = t.idx[0], j = t.idx[1], k = t.idx[2];
            if (transition(i, j) * transition(j, k) != transition(i, k))
                throw input_error("line_bundle_data: transition cocycle fails on " +
                                  to_string(t));
            c_[{i, j, k}] = round_chern(t);
        }
        // the integer 2-cochain is automatically a cocycle on quadruple overlaps
        for (const simplex& q : nv_->simplices(3)) {
            const int i = q.idx[0], j = q.idx[1], k = q.idx[2], l = q.idx[3];
            if (chern(j, k, l) - chern(i, k, l) + chern(i, j, l) - chern(i, j, k) != 0)
                throw error("line_bundle_data: integer cochain is not closed on " +
                            to_string(q));
        }
    }

    const sector_cover& cover() const { return cover_; }
    const std::shared_ptr<const nerve>& nerve_ptr() const { return nv_; }

    // g_ij for any ordered adjacent pair; g_ji = 1/g_ij
    rational_function transition(int i, int j) const {
        if (i == j) return rational_function(gaussian_rational(1));
        const bool flip = i > j;
        if (flip) std::swap(i, j);
        const auto it = g_.find({i, j});
        if (it == g_.end()) throw input_error("line_bundle_data: no such overlap");
        return flip ? rational_function(gaussian_rational(1)) / it->second : it->second;
    }

    // the chosen branch of log g_ij as an expression; antisymmetric in (i, j)
    expr log_transition(int i, int j) const {
        if (i == j) return make_int(0);
        const bool flip = i > j;
        if (flip) std::swap(i, j);
        const auto it = logg_.find({i, j});
        if (it == logg_.end()) throw input_error("line_bundle_data: no such overlap");
        const expr leaf = make_log(it->second);
        return flip ? -leaf : leaf;
    }

    // integer defect: 2 pi i chern(i,j,k) = log g_jk - log g_ik + log g_ij
    long chern(int i, int j, int k) const {
        int v[3] = {i, j, k};
        int sign = 1;
        for (int a = 0; a < 2; ++a)  // 3-element sort, tracking parity
            for (int b = 0; b < 2 - a; ++b)
                if (v[b] > v[b + 1]) {
                    std::swap(v[b], v[b + 1]);
                    sign = -sign;
                }
        if (v[0] == v[1] || v[1] == v[2]) return 0;
        const auto it = c_.find({v[0], v[1], v[2]});
        if (it == c_.end()) throw input_error("line_bundle_data: no such triple overlap");
        return sign * it->second;
    }

  private:
    long round_chern(const simplex& t) const {
        angular_region region;
        if (!cover_.designated_region(t.idx, &region))
            throw empty_region_error("line_bundle_data: empty triple overlap");
        const double mid = 0.5 * (region.lo.to_double() + region.hi.to_double());
        const std::complex<double> at =
            cover_.center_point() + std::polar(cover_.mid_radius(), mid);
        const int i = t.idx[0], j = t.idx[1], k = t.idx[2];
        const std::complex<double> v = (log_transition(j, k).eval(at) -
                                        log_transition(i, k).eval(at) +
                                        log_transition(i, j).eval(at)) /
                                       std::complex<double>(0.0, 2.0 * std::numbers::pi);
        const long c = std::lround(v.real());
        if (std::abs(v - static_cast<double>(c)) > 0.25)
            throw branch_guard_error("line_bundle_data: log branches do not close on " +
                                     to_string(t));
        return c;
    }

    sector_cover cover_;
    std::shared_ptr<const nerve> nv_;
    std::map<std::pair<int, int>, rational_function> g_;
    std::map<std::pair<int, int>, log_branch> logg_;
    std::map<std::tuple<int, int, int>, long> c_;
};

// ---------------------------------------------------------------------------
// metric compatibility and the canonical connection
// ---------------------------------------------------------------------------

// sup over edges and samples of |rho_j / (rho_i |g_ij|^2) - 1|
inline double metric_residual(const line_bundle_data& L, const hermitian_metric_data& m,
                              int samples = 8, std::uint64_t seed = 1) {
    double worst = 0.0;
    for (const simplex& e : L.nerve_ptr()->simplices(1)) {
        const int i = e.idx[0], j = e.idx[1];
        const rational_function g = L.transition(i, j);
        for (const auto& z : sample_points(L.cover(), e, samples, seed)) {
            const double ratio =
                m.rho(j, z) / (m.rho(i, z) * std::norm(g.eval(z)));
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
    }
    return worst;
}

struct connection_data {
    std::vector<form> xi;  // one (1,0)-form per sector

    const form& at(int i) const {
        if (i < 0 || i >= static_cast<int>(xi.size()))
            throw input_error("connection_data: sector out of range");
        return xi[static_cast<std::size_t>(i)];
    }
};

// xi_i = (holomorphic half of d) log rho_i; requires the compatibility
// relation rho_j = rho_i |g_ij|^2 to hold on every overlap
inline connection_data canonical_connection(const line_bundle_data& L,
                                            const hermitian_metric_data& m,
                                            double tol = 1e-8) {
    const double bad = metric_residual(L, m);
    if (!(bad < tol))
        throw metric_incompatible_error(
            "canonical_connection: metric incompatible with transitions, residual " +
            std::to_string(bad));
    connection_data out;
    for (int i = 0; i < m.sectors(); ++i) out.xi.push_back(form::dz(d_z(m.log_rho(i))));
    return out;
}

// sup over edges of |xi_j - xi_i - dlog g_ij|
inline double connection_delta_residual(const line_bundle_data& L,
                                        const connection_data& conn, int samples = 8,
                                        std::uint64_t seed = 2) {
    double worst = 0.0;
    for (const simplex& e : L.nerve_ptr()->simplices(1)) {
        const int i = e.idx[0], j = e.idx[1];
        const form diff =
            conn.at(j) - conn.at(i) - form::dz(make_rat(L.transition(i, j).dlog()));
        for (const auto& z : sample_points(L.cover(), e, samples, seed))
            for (const auto& v : diff.eval(z)) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

// sup over sectors of |pi_0(xi_i) - (1/2) d log rho_i|
inline double connection_real_residual(const line_bundle_data& L,
                                       const hermitian_metric_data& m,
                                       const connection_data& conn, int samples = 8,
                                       std::uint64_t seed = 3) {
    double worst = 0.0;
    for (const simplex& s : L.nerve_ptr()->simplices(0)) {
        const int i = s.idx[0];
        const form diff = pi_p(conn.at(i), 0) -
                          scale(make_gauss(gaussian_rational{bigrat(1, 2)}),
                                d(form::function(m.log_rho(i))));
        for (const auto& z : sample_points(L.cover(), s, samples, seed))
            for (const auto& v : diff.eval(z)) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

// curvature per sector: the (1,1) part of d applied to xi_i; the values must
// agree on overlaps
inline form curvature(const connection_data& conn, int i) { return d_anti(conn.at(i)); }

inline double curvature_match_residual(const line_bundle_data& L,
                                       const connection_data& conn, int samples = 8,
                                       std::uint64_t seed = 4) {
    double worst = 0.0;
    for (const simplex& e : L.nerve_ptr()->simplices(1)) {
        const form diff = curvature(conn, e.idx[1]) - curvature(conn, e.idx[0]);
        for (const auto& z : sample_points(L.cover(), e, samples, seed))
            for (const auto& v : diff.eval(z)) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// the mixed degree-2 cochain of a metrized bundle
// ---------------------------------------------------------------------------

// (2 pi i c_ijk, log g_ij, (1/2) log rho_i) in the integers-functions-reals
// coefficient complex; closed whenever the data are compatible
inline cech_cochain metrized_bundle_cocycle(const line_bundle_data& L,
                                            const hermitian_metric_data& m) {
    cech_cochain c(complex_met_z1(), L.nerve_ptr(), 2);
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
    const expr half = make_gauss(gaussian_rational{bigrat(1, 2)});
    for (const simplex& s : L.nerve_ptr()->simplices(0)) {
        const expr lr = m.log_rho(s.idx[0]);
        if (lr.is_zero()) continue;
        c.set(2, s, std::vector<form>{form::function(make_prod({half, lr}))});
    }
    return c;
}

// every compatibility identity of a metrized bundle in one report
struct hh_report {
    bool transition_cocycle_exact = false;
    bool integer_cocycle_exact = false;
    double metric = 0.0;            // rho_j = rho_i |g_ij|^2
    double connection_delta = 0.0;  // xi_j - xi_i = dlog g_ij
    double connection_real = 0.0;   // pi_0(xi_i) = (1/2) d log rho_i
    double curvature_match = 0.0;   // curvature agrees on overlaps
    double closure = 0.0;           // mixed cochain closes

    bool pass(double tol) const {
        return transition_cocycle_exact && integer_cocycle_exact && metric < tol &&
               connection_delta < tol && connection_real < tol && curvature_match < tol &&
               closure < tol;
    }
};

inline hh_report hh_cocycle_check(const line_bundle_data& L, const hermitian_metric_data& m,
                                  int samples = 20, std::uint64_t seed = 5) {
    hh_report r;
    r.transition_cocycle_exact = true;
    for (const simplex& t : L.nerve_ptr()->simplices(2))
        if (L.transition(t.idx[0], t.idx[1]) * L.transition(t.idx[1], t.idx[2]) !=
            L.transition(t.idx[0], t.idx[2]))
            r.transition_cocycle_exact = false;
    r.integer_cocycle_exact = true;
    for (const simplex& q : L.nerve_ptr()->simplices(3))
        if (L.chern(q.idx[1], q.idx[2], q.idx[3]) - L.chern(q.idx[0], q.idx[2], q.idx[3]) +
                L.chern(q.idx[0], q.idx[1], q.idx[3]) -
                L.chern(q.idx[0], q.idx[1], q.idx[2]) !=
            0)
            r.integer_cocycle_exact = false;
    r.metric = metric_residual(L, m, samples, seed);
    const connection_data conn = canonical_connection(L, m);
    r.connection_delta = connection_delta_residual(L, conn, samples, seed + 1);
    r.connection_real = connection_real_residual(L, m, conn, samples, seed + 2);
    r.curvature_match = curvature_match_residual(L, conn, samples, seed + 3);
    r.closure =
        is_cocycle(metrized_bundle_cocycle(L, m), L.cover(), samples, seed + 4).max_residual;
    return r;
}

// ---------------------------------------------------------------------------
// the power family: g_ij = base^{b_j - b_i}, rho_i = |base|^{2 b_i}
// ---------------------------------------------------------------------------

struct bundle_with_metric {
    line_bundle_data bundle;
    hermitian_metric_data metric;
};

// base defaults to (z - center); exponent vector b has one entry per sector
inline bundle_with_metric power_family_bundle(const sector_cover& cover,
                                              std::shared_ptr<const nerve> nv,
                                              const std::vector<long>& b,
                                              int steps = 256) {
    if (static_cast<int>(b.size()) != cover.sector_count())
        throw input_error("power_family_bundle: need one exponent per sector");
    const rational_function base =
        rational_function::z() - rational_function(cover.center());
    std::map<std::pair<int, int>, rational_function> g;
    for (const simplex& e : nv->simplices(1)) {
        const long step = b[static_cast<std::size_t>(e.idx[1])] -
                          b[static_cast<std::size_t>(e.idx[0])];
        g.emplace(std::make_pair(e.idx[0], e.idx[1]), base.pow(step));
    }
    std::vector<std::vector<metric_factor>> rho;
    for (long bi : b) {
        std::vector<metric_factor> fs;
        if (bi != 0) fs.push_back(metric_factor{base, bi});
        rho.push_back(std::move(fs));
    }
    return bundle_with_metric{line_bundle_data(cover, nv, std::move(g), steps),
                              hermitian_metric_data(std::move(rho))};
}

// ---------------------------------------------------------------------------
// synthetic edge-metric data (one degree higher than a metrized bundle)
// ---------------------------------------------------------------------------

// built from an integer 1-cochain a: edge metrics rho_ij = |base|^{2 a_ij}
// and triple transitions g_ijk = base^{a_jk - a_ik + a_ij}, so every identity
// below is forced by construction
class synthetic_gerbe {
  public:
    synthetic_gerbe(sector_cover cover, std::shared_ptr<const nerve> nv,
                    std::map<std::pair<int, int>, long> a)
        : cover_(std::move(cover)),
          nv_(std::move(nv)),
          base_(rational_function::z() - rational_function(cover_.center())),
          a_(std::move(a)) {
        for (const simplex& e : nv_->simplices(1))
            if (a_.find({e.idx[0], e.idx[1]}) == a_.end())
                throw input_error("synthetic_gerbe: missing exponent on edge " +
                                  to_string(e));
    }

    const sector_cover& cover() const { return cover_; }
    const std::shared_ptr<const nerve>& nerve_ptr() const { return nv_; }

    long exponent(int i, int j) const {
        if (i == j) return 0;
        const bool flip = i > j;
        if (flip) std::swap(i, j);
        const auto it = a_.find({i, j});
        if (it == a_.end()) throw input_error("synthetic_gerbe: no such edge");
        return flip ? -it->second : it->second;
    }

    long coboundary(int i, int j, int k) const {
        return exponent(j, k) - exponent(i, k) + exponent(i, j);
    }

    expr log_rho(int i, int j) const {
        return make_prod({make_int(2 * exponent(i, j)), make_log_abs(base_)});
    }

    // edge connection form: holomorphic half of d log rho_ij
    form xi(int i, int j) const { return form::dz(d_z(log_rho(i, j))); }

    rational_function g(int i, int j, int k) const { return base_.pow(coboundary(i, j, k)); }

  private:
    sector_cover cover_;
    std::shared_ptr<const nerve> nv_;
    rational_function base_;
    std::map<std::pair<int, int>, long> a_;
};

inline synthetic_gerbe random_gerbe(const sector_cover& cover,
                                    std::shared_ptr<const nerve> nv, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-3, 3);
    std::map<std::pair<int, int>, long> a;
    for (const simplex& e : nv->simplices(1)) a[{e.idx[0], e.idx[1]}] = dist(rng);
    return synthetic_gerbe(cover, std::move(nv), std::move(a));
}

// sup over triples of |rho_ij rho_jk / (|g_ijk|^2 rho_ik) - 1|
inline double gerbe_metric_identity_residual(const synthetic_gerbe& G, int samples = 20,
                                             std::uint64_t seed = 6) {
    double worst = 0.0;
    for (const simplex& t : G.nerve_ptr()->simplices(2)) {
        const int i = t.idx[0], j = t.idx[1], k = t.idx[2];
        for (const auto& z : sample_points(G.cover(), t, samples, seed)) {
            const double lhs = std::exp(G.log_rho(i, j).eval(z).real() +
                                        G.log_rho(j, k).eval(z).real());
            const double rhs =
                std::norm(G.g(i, j, k).eval(z)) * std::exp(G.log_rho(i, k).eval(z).real());
            worst = std::max(worst, std::abs(lhs / rhs - 1.0));
        }
    }
    return worst;
}

// sup over triples of |xi_jk - xi_ik + xi_ij - dlog g_ijk|
inline double gerbe_connection_identity_residual(const synthetic_gerbe& G, int samples = 20,
                                                 std::uint64_t seed = 7) {
    double worst = 0.0;
    for (const simplex& t : G.nerve_ptr()->simplices(2)) {
        const int i = t.idx[0], j = t.idx[1], k = t.idx[2];
        const form diff = G.xi(j, k) - G.xi(i, k) + G.xi(i, j) -
                          form::dz(make_rat(G.g(i, j, k).dlog()));
        for (const auto& z : sample_points(G.cover(), t, samples, seed))
            for (const auto& v : diff.eval(z)) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// synthetic triple-metric data (two degrees higher)
// ---------------------------------------------------------------------------

// integer 2-cochain r: triple metrics rho_ijk = |base|^{2 r_ijk} and
// quadruple transitions h_ijkl = base^{(delta r)_ijkl}
class synthetic_two_gerbe {
  public:
    synthetic_two_gerbe(sector_cover cover, std::shared_ptr<const nerve> nv,
                        std::map<std::tuple<int, int, int>, long> r)
        : cover_(std::move(cover)),
          nv_(std::move(nv)),
          base_(rational_function::z() - rational_function(cover_.center())),
          r_(std::move(r)) {
        if (nv_->simplices(3).empty())
            throw input_error("synthetic_two_gerbe: cover has no quadruple overlaps");
        for (const simplex& t : nv_->simplices(2))
            if (r_.find({t.idx[0], t.idx[1], t.idx[2]}) == r_.end())
                throw input_error("synthetic_two_gerbe: missing exponent on triple " +
                                  to_string(t));
    }

    const sector_cover& cover() const { return cover_; }
    const std::shared_ptr<const nerve>& nerve_ptr() const { return nv_; }

    long exponent(int i, int j, int k) const {
        const auto it = r_.find({i, j, k});
        if (it == r_.end()) throw input_error("synthetic_two_gerbe: no such triple");
        return it->second;
    }

    long coboundary(int i, int j, int k, int l) const {
        return exponent(j, k, l) - exponent(i, k, l) + exponent(i, j, l) -
               exponent(i, j, k);
    }

    expr log_rho(int i, int j, int k) const {
        return make_prod({make_int(2 * exponent(i, j, k)), make_log_abs(base_)});
    }

    rational_function h(int i, int j, int k, int l) const {
        return base_.pow(coboundary(i, j, k, l));
    }

  private:
    sector_cover cover_;
    std::shared_ptr<const nerve> nv_;
    rational_function base_;
    std::map<std::tuple<int, int, int>, long> r_;
};

inline synthetic_two_gerbe random_two_gerbe(const sector_cover& cover,
                                            std::shared_ptr<const nerve> nv,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-3, 3);
    std::map<std::tuple<int, int, int>, long> r;
    for (const simplex& t : nv->simplices(2)) r[{t.idx[0], t.idx[1], t.idx[2]}] = dist(rng);
    return synthetic_two_gerbe(cover, std::move(nv), std::move(r));
}

// sup over quadruples of |rho_jkl rho_ijl / (rho_ikl rho_ijk |h_ijkl|^2) - 1|
inline double two_gerbe_metric_identity_residual(const synthetic_two_gerbe& G,
                                                 int samples = 20, std::uint64_t seed = 8) {
    double worst = 0.0;
    for (const simplex& q : G.nerve_ptr()->simplices(3)) {
        const int i = q.idx[0], j = q.idx[1], k = q.idx[2], l = q.idx[3];
        for (const auto& z : sample_points(G.cover(), q, samples, seed)) {
            const double lhs = std::exp(G.log_rho(j, k, l).eval(z).real() +
                                        G.log_rho(i, j, l).eval(z).real());
            const double rhs = std::exp(G.log_rho(i, k, l).eval(z).real() +
                                        G.log_rho(i, j, k).eval(z).real()) *
                               std::norm(G.h(i, j, k, l).eval(z));
            worst = std::max(worst, std::abs(lhs / rhs - 1.0));
        }
    }
    return worst;
}

}  // namespace cechsym

#endif  // CECHSYM_BUNDLE_HPP
