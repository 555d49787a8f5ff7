// SPDX-License-Identifier: MIT
//
// Rational-function layer: canonical form, parser/printer round-trip,
// evaluation and pole guard, derivative, valuations, and the exact local
// tame symbol (frozen oracle table).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cechsym/rational_function.hpp"

#include <complex>
#include <random>
#include <string>
#include <vector>

using namespace cechsym;

namespace {
rational_function rf(const std::string& text) { return rational_function::parse(text); }
}  // namespace

TEST_CASE("canonical form reduces and makes denominator monic") {
    // (2z^2 - 2) / (4z - 4) == (z + 1) / 2
    const rational_function f = rf("(2*z^2 - 2)/(4*z - 4)");
    CHECK(f == rf("(z + 1)/2"));
    CHECK(f.den().degree() == 0);
    CHECK(f.den().coeff(0) == gaussian_rational(1));
    CHECK(f.num() == polynomial({gaussian_rational{bigrat(1, 2)}, gaussian_rational{bigrat(1, 2)}}));

    // denominator made monic: (z+1)/(2z-4) has den z-2, num (z+1)/2
    const rational_function g = rf("(z + 1)/(2*z - 4)");
    CHECK(g.den() == polynomial({gaussian_rational(-2), gaussian_rational(1)}));
}

TEST_CASE("field operations agree with hand values") {
    const rational_function z = rational_function::z();
    const rational_function f = z / (z + rational_function(1));
    const rational_function g = (z - rational_function(1)) / z;
    CHECK(f * g == rf("(z - 1)/(z + 1)"));
    CHECK(f + g == rf("(2*z^2 - 1)/(z^2 + z)"));
    CHECK(f / f == rational_function(1));
    CHECK(f - f == rational_function(0));
    CHECK(z.pow(-2) == rf("1/z^2"));
}

TEST_CASE("parser handles grammar corner cases") {
    CHECK(rf("z^2 - 2*z + 1") == rf("(z - 1)^2"));
    CHECK(rf("-z") == rational_function(0) - rational_function::z());
    CHECK(rf("3/2") == rational_function(gaussian_rational{bigrat(3, 2)}));
    CHECK(rf("1/2*z") == rf("z/2"));
    CHECK(rf("i^2") == rational_function(-1));
    CHECK(rf("(z + i)*(z - i)") == rf("z^2 + 1"));
    CHECK(rf("z^-1") == rf("1/z"));
    CHECK(rf("- - z") == rational_function::z());
    CHECK_THROWS_AS(rf("z +"), parse_error);
    CHECK_THROWS_AS(rf("(z"), parse_error);
    CHECK_THROWS_AS(rf("q"), parse_error);
    CHECK_THROWS_AS(rf("2 z"), parse_error);
    CHECK_THROWS_AS(rf("1/0"), input_error);
}

TEST_CASE("degree cap enforced at 32") {
    CHECK_NOTHROW(rf("z^32"));
    CHECK_THROWS_AS(rf("z^33"), input_error);
    CHECK_THROWS_AS(rf("1/z^33"), input_error);
    // cancellation below the cap is fine even if raw inputs look big
    CHECK(rf("z^20 * z^12 / z^10") == rf("z^22"));
}

TEST_CASE("print/parse round-trip is bit-exact") {
    std::mt19937_64 gen(20260823u);
    std::uniform_int_distribution<int> deg(0, 6), coeff(-9, 9), denq(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        auto rand_poly = [&]() {
            std::vector<gaussian_rational> cs(static_cast<std::size_t>(deg(gen)) + 1);
            for (auto& c : cs)
                c = gaussian_rational{bigrat(coeff(gen), denq(gen)), bigrat(coeff(gen), denq(gen))};
            return polynomial(std::move(cs));
        };
        polynomial n = rand_poly();
        polynomial d = rand_poly();
        if (d.is_zero()) d = polynomial(1);
        const rational_function f(n, d);
        const std::string text = f.to_text();
        const rational_function back = rational_function::parse(text);
        REQUIRE(back == f);
        REQUIRE(back.to_text() == text);
    }
}

TEST_CASE("printer output for known inputs") {
    CHECK(rf("z").to_text() == "z");
    CHECK(rf("0").to_text() == "0");
    CHECK(rf("-3/2*z^2 + i").to_text() == "-3/2*z^2 + i");
    CHECK(rf("z/(z - 1)").to_text() == "(z)/(z - 1)");
    CHECK(rf("(1 + 2*i)*z").to_text() == "(1 + 2*i)*z");
}

TEST_CASE("numeric evaluation and pole guard") {
    const rational_function f = rf("(z^2 + 1)/(z - 2)");
    const std::complex<double> v = f.eval({1.0, 1.0});
    // f(1+i) = (1 + 2i + 1... ) compute: (1+i)^2 + 1 = 1 + 2i, over (i - 1)
    const std::complex<double> expect = std::complex<double>(1.0, 2.0) / std::complex<double>(-1.0, 1.0);
    CHECK(std::abs(v - expect) < 1e-14);
    CHECK_THROWS_AS(f.eval({2.0, 0.0}), pole_error);
    CHECK_THROWS_AS(f.eval({2.0 + 1e-13, 0.0}), pole_error);
    CHECK_NOTHROW(f.eval({2.0 + 1e-6, 0.0}));
}

TEST_CASE("exact evaluation") {
    const rational_function f = rf("(z^2 + 1)/(z - 2)");
    CHECK(f.eval_exact(gaussian_rational(3)) == gaussian_rational(10));
    CHECK_THROWS_AS(f.eval_exact(gaussian_rational(2)), pole_error);
}

TEST_CASE("derivative via quotient rule") {
    CHECK(rf("z^3").derivative() == rf("3*z^2"));
    CHECK(rf("1/z").derivative() == rf("-1/z^2"));
    CHECK(rf("(z + 1)/(z - 1)").derivative() == rf("-2/(z - 1)^2"));
    CHECK(rf("z").dlog() == rf("1/z"));
    CHECK(rf("z^3*(z - 2)").dlog() == rf("3/z + 1/(z - 2)"));
}

TEST_CASE("valuation counts zeros minus poles") {
    const gaussian_rational origin(0);
    CHECK(rf("z^3*(z - 1)").valuation(origin) == 3);
    CHECK(rf("(z - 1)/(z^2)").valuation(origin) == -2);
    CHECK(rf("z/(z - 1)").valuation(gaussian_rational(1)) == -1);
    CHECK(rf("5").valuation(origin) == 0);
    CHECK_THROWS_AS(rf("0").valuation(origin), input_error);
}

TEST_CASE("split isolates the regular unit factor") {
    const auto [v, u] = rf("z^2*(z - 3)").split_at(gaussian_rational(0));
    CHECK(v == 2);
    CHECK(u == gaussian_rational(-3));
    const auto [vp, up] = rf("(z + 1)/(z^3)").split_at(gaussian_rational(0));
    CHECK(vp == -3);
    CHECK(up == gaussian_rational(1));
}

TEST_CASE("tame symbol oracle table at the origin") {
    const gaussian_rational p0(0);
    struct row {
        const char* f;
        const char* g;
        bigrat want_re;
    };
    const std::vector<row> table = {
        {"z", "z", bigrat(-1)},
        {"z", "2", bigrat(1, 2)},
        {"z", "z - 3", bigrat(-1, 3)},
        {"z^2", "z - 3", bigrat(1, 9)},
        {"z^3", "z - 3", bigrat(-1, 27)},
        {"z", "z^2*(z - 5)", bigrat(-1, 5)},
        {"z^2", "z^2*(z - 5)", bigrat(1, 25)},
        {"z*(z - 3)", "z", bigrat(3)},
        {"z^3", "z", bigrat(-1)},
        {"z*(z - 3)", "z^2*(z - 5)", bigrat(-9, 5)},
    };
    for (const auto& r : table) {
        const gaussian_rational got = tame_symbol_value(rf(r.f), rf(r.g), p0);
        CAPTURE(r.f);
        CAPTURE(r.g);
        CHECK(got == gaussian_rational(r.want_re));
    }
}

TEST_CASE("tame symbol properties") {
    const gaussian_rational p0(0);
    const rational_function f = rf("z^2*(z - 3)");
    const rational_function g = rf("z*(z - 5)^2");
    const rational_function h = rf("(z - 7)/z");

    // bimultiplicative in each slot
    CHECK(tame_symbol_value(f * h, g, p0) ==
          tame_symbol_value(f, g, p0) * tame_symbol_value(h, g, p0));
    CHECK(tame_symbol_value(f, g * h, p0) ==
          tame_symbol_value(f, g, p0) * tame_symbol_value(f, h, p0));

    // swapping the arguments inverts the symbol
    const gaussian_rational fg = tame_symbol_value(f, g, p0);
    const gaussian_rational gf = tame_symbol_value(g, f, p0);
    CHECK(fg * gf == gaussian_rational(1));

    // symbol at a different point
    CHECK(tame_symbol_value(rf("z - 3"), rf("z"), gaussian_rational(3)) ==
          gaussian_rational(bigrat(1, 3)));
}
