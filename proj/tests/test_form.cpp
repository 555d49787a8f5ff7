// SPDX-License-Identifier: MIT
//
// Exact factoring, log branches, canonical expression algebra, and the
// differential-form calculus built on top of it.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cechsym/form.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace cechsym;

namespace {
rational_function rf(const char* s) { return rational_function::parse(s); }
constexpr double tp = 2.0 * std::numbers::pi;

std::vector<std::complex<double>> probe_points() {
    std::vector<std::complex<double>> pts;
    for (int k = 0; k < 8; ++k)
        pts.push_back(std::polar(0.8 + 0.07 * k, -2.8 + 0.7 * k));
    return pts;
}

double max_abs_diff(const expr& a, const expr& b) {
    double m = 0;
    for (const auto& z : probe_points()) m = std::max(m, std::abs(a.eval(z) - b.eval(z)));
    return m;
}

double max_abs_form(const form& w) {
    double m = 0;
    for (const auto& z : probe_points())
        for (const auto& v : w.eval(z)) m = std::max(m, std::abs(v));
    return m;
}
}  // namespace

// ---------------------------------------------------------------------------
// factoring
// ---------------------------------------------------------------------------

TEST_CASE("factoring over the Gaussian rationals") {
    const auto lf = factor_over_gaussians(rf("z^2*(z - 3)/(z + 1)"));
    REQUIRE(lf.has_value());
    CHECK(lf->lead == gaussian_rational(1));
    REQUIRE(lf->factors.size() == 3);
    CHECK(assemble_factorization(*lf) == rf("z^2*(z - 3)/(z + 1)"));

    const auto gi = factor_over_gaussians(rf("z^2 + 1"));
    REQUIRE(gi.has_value());
    CHECK(assemble_factorization(*gi) == rf("(z + i)*(z - i)"));

    const auto scaled = factor_over_gaussians(rf("(2*z - 1)*(3*z + 2)"));
    REQUIRE(scaled.has_value());
    CHECK(scaled->lead == gaussian_rational(6));
    CHECK(assemble_factorization(*scaled) == rf("(2*z - 1)*(3*z + 2)"));

    CHECK(!factor_over_gaussians(rf("z^2 - 7")).has_value());
    CHECK(!factor_over_gaussians(rf("z^3 - z - 11")).has_value());
}

TEST_CASE("factoring handles high multiplicities and rational roots") {
    const auto lf = factor_over_gaussians(rf("(z - 1/2)^4*(z + 5)^2/z^6"));
    REQUIRE(lf.has_value());
    CHECK(assemble_factorization(*lf) == rf("(z - 1/2)^4*(z + 5)^2/z^6"));
}

// ---------------------------------------------------------------------------
// branches
// ---------------------------------------------------------------------------

TEST_CASE("chained sector branches of log z") {
    const sector_cover cover(gaussian_rational(0), 0.5, 1.5, 3, parse_rational("2.2"));
    const auto branches = chained_sector_branches(rational_function::z(), cover, 128);
    REQUIRE(branches.size() == 3);
    // sector 2 sees the continued (not principal) argument
    const std::complex<double> z2 = std::polar(1.0, 2.0 * tp / 3.0);
    const std::complex<double> v2 = branches[2].log_at(z2);
    CHECK(std::abs(v2.imag() - 2.0 * tp / 3.0) < 1e-9);
    CHECK(std::abs(v2.real()) < 1e-9);
    // radial stage
    const std::complex<double> v0 = branches[0].log_at(std::complex<double>(1.4, 0.0));
    CHECK(std::abs(v0 - std::log(1.4)) < 1e-9);
}

TEST_CASE("function branch jumps agree with the direct assignment") {
    const sector_cover cover(gaussian_rational(0), 0.5, 1.5, 3, parse_rational("2.2"));
    for (const char* s : {"z", "z^2*(z - 3)", "(z + 4)/z", "5*z^3"}) {
        const function_branches fb(rf(s), cover);
        const auto direct = assign_branches(rf(s), cover);
        CAPTURE(s);
        CHECK(fb.is_factored());
        for (const auto& [edge, want] : direct.m) CHECK(fb.m(edge.first, edge.second) == want);
    }
}

TEST_CASE("branch jumps are exactly additive under products") {
    const sector_cover cover(gaussian_rational(0), 0.5, 1.5, 3, parse_rational("2.2"));
    const rational_function f1 = rf("z^2*(z - 3)");
    const rational_function f2 = rf("(z + 4)/z");
    const function_branches a(f1, cover), b(f2, cover), ab(f1 * f2, cover);
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
        CHECK(ab.m(i, j) == a.m(i, j) + b.m(i, j));
        CHECK(ab.m(j, i) == -ab.m(i, j));
    }
}

TEST_CASE("unfactorable functions fall back to direct continuation") {
    const sector_cover cover(gaussian_rational(0), 0.5, 1.5, 3, parse_rational("2.2"));
    const function_branches fb(rf("z^2 - 7"), cover);
    CHECK(!fb.is_factored());
    CHECK(fb.m(0, 1) == 0);
    CHECK(fb.m(0, 2) == 0);
    // winding of a zero-free function is zero: sum around the wrap cancels
    const function_branches zz(rf("z"), cover);
    CHECK(zz.m(0, 2) == 1);
}

// ---------------------------------------------------------------------------
// expressions
// ---------------------------------------------------------------------------

TEST_CASE("canonical sums and products") {
    const expr x = make_rat(rf("z + 1"));
    const expr y = make_log_abs(rf("z - 3"));
    CHECK(x + x == make_prod({make_int(2), x}));
    CHECK(x * y == y * x);
    CHECK((x + y) - (x + y) == make_int(0));
    CHECK((x * y - y * x).is_zero());
    CHECK(make_sum({x, -x}).is_zero());
    CHECK(make_prod({make_int(0), y}).is_zero());
    CHECK(make_prod({x}) == x);
    // rational factors multiply exactly
    CHECK(make_prod({make_rat(rf("z")), make_rat(rf("z + 1"))}) == make_rat(rf("z^2 + z")));
    // twisted constants fold with their twist
    const expr u = make_two_pi_i();
    CHECK(u * u == make_two_pi_i(2));
    CHECK(make_prod({make_int(3), u, u}) ==
          make_const(twisted_scalar{gaussian_rational(3), 2}));
    CHECK(u + u == make_prod({make_int(2), u}));
}

TEST_CASE("conjugation pushes to leaves") {
    const expr x = make_rat(rf("z^2 + i"));
    const expr labs = make_log_abs(rf("z - 2"));
    CHECK(make_conj(make_conj(x)) == x);
    CHECK(make_conj(labs) == labs);
    CHECK(make_conj(make_int(5)) == make_int(5));
    CHECK(make_conj(make_two_pi_i()) == -make_two_pi_i());
    CHECK(make_conj(x + labs) == make_conj(x) + labs);
    const std::complex<double> z{1.1, 0.4};
    CHECK(std::abs(make_conj(x).eval(z) - std::conj(x.eval(z))) < 1e-14);
}

TEST_CASE("powers fold and evaluate") {
    const expr x = make_rat(rf("z + 1"));
    CHECK(make_pow(x, 3) == make_rat(rf("(z + 1)^3")));
    CHECK(make_pow(make_int(2), 10) == make_int(1024));
    CHECK(make_pow(make_two_pi_i(), 3) == make_two_pi_i(3));
    const expr s = make_sum({make_log_abs(rf("z")), make_int(1)});
    const expr p = make_pow(s, 2);
    const std::complex<double> z{0.9, 0.3};
    CHECK(std::abs(p.eval(z) - s.eval(z) * s.eval(z)) < 1e-14);
    CHECK(make_pow(make_pow(s, 2), 3) == make_pow(s, 6));
}

TEST_CASE("projections take real and imaginary parts") {
    const expr x = make_rat(rf("z^2 + i*z"));
    const std::complex<double> z{1.2, -0.3};
    const std::complex<double> v = x.eval(z);
    CHECK(std::abs(pi_p(x, 0).eval(z) - std::complex<double>(v.real(), 0.0)) < 1e-14);
    CHECK(std::abs(pi_p(x, 1).eval(z) - std::complex<double>(0.0, v.imag())) < 1e-14);
    // pi_0 + pi_1 = identity
    CHECK(max_abs_diff(make_sum({pi_p(x, 0), pi_p(x, 1)}), x) < 1e-14);
}

TEST_CASE("wirtinger derivatives of the leaf kinds") {
    const rational_function R = rf("(z^2 + 1)/(z - 3)");
    CHECK(d_z(make_rat(R)) == make_rat(R.derivative()));
    CHECK(d_zbar(make_rat(R)).is_zero());

    const expr la = make_log_abs(R);
    const expr half_dlog =
        make_prod({make_gauss(gaussian_rational{bigrat(1, 2)}), make_rat(R.dlog())});
    CHECK(d_z(la) == half_dlog);
    CHECK(d_zbar(la) == make_conj(half_dlog));

    // product rule with exact collection
    const expr u = make_rat(rf("z"));
    const expr v = make_log_abs(rf("z - 2"));
    const expr duv = d_z(u * v);
    const expr expect = make_sum({v, u * d_z(v)});
    CHECK(max_abs_diff(duv, expect) < 1e-12);
}

TEST_CASE("structural cancellation of symmetric products") {
    // a * b - b * a with transcendental factors cancels exactly
    const expr a = pi_p(make_rat(rf("1/z")), 1);
    const expr b = make_log_abs(rf("z"));
    CHECK((a * b - b * a).is_zero());
}

// ---------------------------------------------------------------------------
// forms
// ---------------------------------------------------------------------------

TEST_CASE("exterior derivative squares to zero") {
    const form f1 = form::function(make_log_abs(rf("z - 2")) * make_log_abs(rf("z + 3")));
    CHECK(d(d(f1)).is_structurally_zero());

    const form f2 = form::function(make_rat(rf("z^3 + i*z")));
    CHECK(d(d(f2)).is_structurally_zero());

    const form mixed = form::dz(make_log_abs(rf("z"))) + form::dzbar(make_rat(rf("1/z")));
    CHECK(max_abs_form(d(d(mixed))) < 1e-12);
}

TEST_CASE("wedge grading and antisymmetry") {
    const form a = form::dz(make_rat(rf("z"))) + form::dzbar(make_log_abs(rf("z - 2")));
    const form b = form::dz(make_rat(rf("1/z"))) + form::dzbar(make_rat(rf("z + 1")));
    CHECK((wedge(a, b) + wedge(b, a)).is_structurally_zero());

    const form fa = form::function(make_rat(rf("z^2")));
    // function wedge is plain multiplication
    CHECK(wedge(fa, b).c10 == make_rat(rf("z^2")) * make_rat(rf("1/z")));
}

TEST_CASE("leibniz rule for d on wedges") {
    const form a = form::dz(make_log_abs(rf("z")));
    const form b = form::function(make_log_abs(rf("z - 2")));
    // deg a = 1: d(a ^ b) = da ^ b - a ^ db
    const form lhs = d(wedge(a, b));
    const form rhs = wedge(d(a), b) - wedge(a, d(b));
    CHECK(max_abs_form(lhs - rhs) < 1e-10);

    const form f = form::function(make_rat(rf("z^2 + 1")));
    const form lhs2 = d(wedge(f, b));
    const form rhs2 = wedge(d(f), b) + wedge(f, d(b));
    CHECK(max_abs_form(lhs2 - rhs2) < 1e-10);
}

TEST_CASE("dc operator and harmonicity of power metrics") {
    // log|z|^2 is harmonic away from the origin: d(dc(log|z|^2)) = 0
    const form logrho = form::function(make_prod({make_int(2), make_log_abs(rf("z"))}));
    CHECK(max_abs_form(d(dc(logrho))) < 1e-10);
    // and so is log|h|^2 for any rational h
    const form lh = form::function(make_prod({make_int(2), make_log_abs(rf("(z - 2)/(z + 3)"))}));
    CHECK(max_abs_form(d(dc(lh))) < 1e-10);
}

TEST_CASE("pi projections on forms respect conjugation") {
    const form a = form::dz(make_rat(rf("z^2"))) + form::dzbar(make_rat(rf("i*z")));
    const form p0 = pi_p(a, 0);
    // a pi_0 projection is fixed by conjugation
    CHECK(max_abs_form(conj(p0) - p0) < 1e-12);
    const form p1 = pi_p(a, 1);
    CHECK(max_abs_form(conj(p1) + p1) < 1e-12);
    CHECK(max_abs_form((p0 + p1) - a) < 1e-12);
}

TEST_CASE("volume forms conjugate with a sign") {
    const form v = form::volume(make_rat(rf("z")));
    const std::complex<double> z{1.0, 0.5};
    CHECK(std::abs(conj(v).eval(z)[3] + std::conj(v.eval(z)[3])) < 1e-14);
}

TEST_CASE("log branch expressions evaluate through continuation") {
    const sector_cover cover(gaussian_rational(0), 0.5, 1.5, 3, parse_rational("2.2"));
    const auto branches = chained_sector_branches(rational_function::z(), cover, 128);
    const expr L2 = make_log(branches[2]);
    const std::complex<double> z = std::polar(1.0, 2.0 * tp / 3.0);
    CHECK(std::abs(L2.eval(z).imag() - 2.0 * tp / 3.0) < 1e-9);
    // derivative of any log branch is the exact logarithmic derivative
    CHECK(d_z(L2) == make_rat(rf("1/z")));
    CHECK(d_zbar(L2).is_zero());
}
