// SPDX-License-Identifier: MIT
//
// Heisenberg model: lattice action against the matrix oracle, invariance of
// the connection form and metric, and pullback consistency with the symbol
// cochains.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cechsym/heisenberg.hpp"
#include "cechsym/symbols.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <random>

using namespace cechsym;

namespace {

using cplx = std::complex<double>;
using mat3 = std::array<std::array<cplx, 3>, 3>;

mat3 lower_unipotent(cplx x, cplx y, cplx z) {
    return {{{cplx(1.0), cplx(0.0), cplx(0.0)},
             {x, cplx(1.0), cplx(0.0)},
             {z, y, cplx(1.0)}}};
}

mat3 mul(const mat3& a, const mat3& b) {
    mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx s(0.0);
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            r[i][j] = s;
        }
    return r;
}

mat3 matrix_of(const heis_point& p) { return lower_unipotent(p.x, p.y, p.z); }

mat3 matrix_of(const heis_lattice_elem& e) {
    const cplx m1(0.0, 2.0 * M_PI * e.a);
    const cplx n1(0.0, 2.0 * M_PI * e.b);
    const cplx m2(-4.0 * M_PI * M_PI * e.c, 0.0);
    return lower_unipotent(m1, n1, m2);
}

heis_point random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> box(-3.0, 3.0);
    return {{box(rng), box(rng)}, {box(rng), box(rng)}, {box(rng), box(rng)}};
}

heis_lattice_elem random_elem(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-5, 5);
    return {d(rng), d(rng), d(rng)};
}

struct fixture {
    sector_cover cover;
    std::shared_ptr<const nerve> nv;

    explicit fixture(int n, const char* width)
        : cover(gaussian_rational(0), 0.5, 1.5, n, parse_rational(width)),
          nv(std::make_shared<nerve>(build_nerve(cover, n - 1))) {}
};

rational_function rf(const char* s) { return rational_function::parse(s); }

double form_sup(const form& w, const sector_cover& cover, const simplex& s, int nsamp,
                std::uint64_t seed) {
    double worst = 0.0;
    for (const auto& z : sample_points(cover, s, nsamp, seed))
        for (const auto& v : w.eval(z)) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace

TEST_CASE("lattice action is right multiplication of unipotent matrices") {
    std::mt19937_64 rng(1001);
    for (int t = 0; t < 50; ++t) {
        const heis_point p = random_point(rng);
        const heis_lattice_elem e = random_elem(rng);
        const heis_point q = lattice_act(p, e);
        const mat3 prod = mul(matrix_of(p), matrix_of(e));
        CHECK(std::abs(q.x - prod[1][0]) < 1e-12);
        CHECK(std::abs(q.y - prod[2][1]) < 1e-12);
        CHECK(std::abs(q.z - prod[2][0]) < 1e-12);
    }
    // identity element fixes every point
    const heis_point p = random_point(rng);
    const heis_point q = lattice_act(p, {0, 0, 0});
    CHECK(q.x == p.x);
    CHECK(q.y == p.y);
    CHECK(q.z == p.z);
    // translating the origin by the first lattice generator
    const heis_point o = lattice_act(heis_point{}, {1, 0, 0});
    CHECK(std::abs(o.x - cplx(0.0, 2.0 * M_PI)) < 1e-15);
    CHECK(std::abs(o.y) < 1e-15);
    CHECK(std::abs(o.z) < 1e-15);
}

TEST_CASE("acting twice composes through the group law") {
    std::mt19937_64 rng(2002);
    for (int t = 0; t < 50; ++t) {
        const heis_point p = random_point(rng);
        const heis_lattice_elem lam = random_elem(rng);
        const heis_lattice_elem mu = random_elem(rng);
        const heis_point lhs = lattice_act(lattice_act(p, lam), mu);
        const heis_point rhs = lattice_act(p, lattice_mul(lam, mu));
        CHECK(std::abs(lhs.x - rhs.x) < 1e-12);
        CHECK(std::abs(lhs.y - rhs.y) < 1e-12);
        CHECK(std::abs(lhs.z - rhs.z) < 1e-12);
    }
    // exact group identities
    const heis_lattice_elem lam{3, -2, 5};
    const heis_lattice_elem inv = lattice_inverse(lam);
    const heis_lattice_elem unit = lattice_mul(lam, inv);
    CHECK(unit.a == 0);
    CHECK(unit.b == 0);
    CHECK(unit.c == 0);
    const heis_lattice_elem mu{-1, 4, 2}, nu{2, 2, -3};
    const heis_lattice_elem ab_c = lattice_mul(lattice_mul(lam, mu), nu);
    const heis_lattice_elem a_bc = lattice_mul(lam, lattice_mul(mu, nu));
    CHECK(ab_c.a == a_bc.a);
    CHECK(ab_c.b == a_bc.b);
    CHECK(ab_c.c == a_bc.c);
}

TEST_CASE("metric is lattice invariant") {
    const auto rep = heis_invariance_check(heis_kind::rho, 100, 4242, 20);
    CHECK(rep.trials == 100);
    CHECK(rep.points_per_trial == 20);
    CHECK(rep.pass(1e-10));
    // the first generator cancels exactly against the mixed term
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; ++t) {
        const heis_point p = random_point(rng);
        const auto diff = rho_log(lattice_act(p, {1, 0, 0})) - rho_log(p);
        CHECK(std::abs(diff) < 1e-12);
    }
    // closed-form value of the metric logarithm
    for (int t = 0; t < 10; ++t) {
        const heis_point p = random_point(rng);
        const double expected =
            (p.z.imag() - p.x.imag() * p.y.real()) / (2.0 * M_PI);
        CHECK(std::abs(rho_log(p) - cplx(expected, 0.0)) < 1e-14);
    }
    CHECK(std::abs(rho_log(heis_point{})) == 0.0);
    CHECK(rho_metric(heis_point{}) == 1.0);
    // zero trials pass vacuously
    CHECK(heis_invariance_check(heis_kind::rho, 0, 1).max_residual == 0.0);
}

TEST_CASE("connection form is lattice invariant") {
    const auto rep = heis_invariance_check(heis_kind::omega, 100, 99, 20);
    CHECK(rep.trials == 100);
    CHECK(rep.pass(1e-10));
    // the cancellation is structural, not just numeric
    heis_section fam;
    fam.x = make_rat(rf("(z + 4)/(z - 6)"));
    fam.y = make_sum({make_rat(rf("z^2 + 2")), make_log_abs(rf("z - 3"))});
    fam.z = make_rat(rf("z"));
    const heis_lattice_elem lam{2, -1, 3};
    const form diff = omega_form(lattice_act(fam, lam)) + (-omega_form(fam));
    CHECK(diff.is_structurally_zero());
}

TEST_CASE("pullbacks along symbol sections reproduce the symbol structures") {
    for (const char* w : {"2.2", "4.5"}) {
        CAPTURE(w);
        const fixture fx(3, w);
        const rational_function f = rf("z*(z - 3)");
        const rational_function g = rf("z - 5");
        const tame_symbol_data ts(f, g, fx.cover, fx.nv);
        const hermitian_tame_symbol_data hs(f, g, fx.cover, fx.nv);
        const function_branches hb(rf("z + 4"), fx.cover);
        for (int i = 0; i < fx.cover.sector_count(); ++i) {
            const simplex v{i};
            const auto& fb = ts.branches_f();
            const auto& gb = ts.branches_g();

            // canonical section: omega pullback equals the torsor vertex entry
            const form pulled = omega_form(symbol_section(fb, gb, i, make_int(0)));
            const cvalue tv = ts.torsor_cochain().at(1, v);
            const auto& torsor_forms = std::get<std::vector<form>>(tv);
            const form torsor_entry =
                torsor_forms.empty() ? form{} : torsor_forms[0];
            CHECK(form_sup(pulled + (-torsor_entry), fx.cover, v, 10, 41) < 1e-10);

            // a multiplicative section coefficient s corresponds to the
            // additive fiber coordinate 2 pi i log s
            const expr h = make_prod({make_two_pi_i(), sector_log_expr(hb, i)});
            const form pulled_h = omega_form(symbol_section(fb, gb, i, h));
            const form lhs = scale(make_rat(rf("z + 4")), pulled_h);
            const form rhs = ts.connection_action(i, make_rat(rf("z + 4")));
            CHECK(form_sup(lhs + (-rhs), fx.cover, v, 10, 43) < 1e-10);

            // metric pullbacks match the section-length formula
            for (const expr& fiber : {make_int(0), h}) {
                const expr pulled_len =
                    rho_log(symbol_section(fb, gb, i, fiber));
                const expr direct = hs.section_length_log(i, fiber);
                for (const auto& z : sample_points(fx.cover, v, 10, 47))
                    CHECK(std::abs(pulled_len.eval(z) - direct.eval(z)) < 1e-10);
            }

            // the canonical section's length is the hermitian metric slot
            const expr len0 = rho_log(symbol_section(fb, gb, i, make_int(0)));
            for (const auto& z : sample_points(fx.cover, v, 10, 53))
                CHECK(std::abs(len0.eval(z) - hs.metric_slot(i).eval(z)) < 1e-10);
        }
    }
}
