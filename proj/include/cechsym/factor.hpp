// SPDX-License-Identifier: MIT
//
// Factorization of rational functions into linear factors over Q(i).
// Roots are located numerically (companion-matrix eigenvalues), snapped to
// nearby Gaussian rationals, and each snap is verified by exact division, so
// a reported factorization is exact.  Functions with roots outside Q(i)
// report failure and callers fall back to unfactored handling.

#ifndef CECHSYM_FACTOR_HPP
#define CECHSYM_FACTOR_HPP

#include "cechsym/rational_function.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace cechsym {

// f = lead * prod (z - root[k])^mult[k] with distinct roots
struct linear_factorization {
    gaussian_rational lead;
    std::vector<std::pair<gaussian_rational, long>> factors;  // (root, multiplicity), sorted
};

namespace detail {

// nearest rational with denominator <= maxden (continued-fraction convergents)
inline std::optional<bigrat> snap_to_rational(double x, long maxden, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    double v = x;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergent recurrences
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(v);
        if (std::abs(fl) > 1e15) return std::nullopt;
        const long long a = static_cast<long long>(fl);
        const long long h2 = a * h1 + h0;
        const long long k2 = a * k1 + k0;
        if (k2 > maxden || k2 < 0) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double approx = static_cast<double>(h1) / static_cast<double>(k1);
        if (std::abs(approx - x) < tol) return bigrat(bigint(h1), bigint(k1));
        const double frac = v - fl;
        if (frac < 1e-18) break;
        v = 1.0 / frac;
    }
    if (k1 > 0 && std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < tol)
        return bigrat(bigint(h1), bigint(k1));
    return std::nullopt;
}

inline std::vector<std::complex<double>> polynomial_roots(const polynomial& p) {
    const long deg = p.degree();
    if (deg < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    const std::complex<double> lead = p.leading().to_complex();
    for (long k = 0; k < deg; ++k) {
        companion(k, deg - 1) = -p.coeff(k).to_complex() / lead;
        if (k > 0) companion(k, k - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<std::complex<double>> roots;
    for (long k = 0; k < deg; ++k) roots.push_back(solver.eigenvalues()(k));
    return roots;
}

// exact linear factors of one polynomial; returns remaining unfactored part
inline polynomial extract_linear_factors(
    polynomial p, std::vector<std::pair<gaussian_rational, long>>* out, long sign) {
    // root-find on the squarefree part: repeated roots of p perturb the
    // companion-matrix eigenvalues far beyond snapping reach, simple ones do not
    polynomial squarefree = p;
    if (p.degree() > 1) {
        const polynomial g = polynomial::gcd(p, p.derivative());
        if (g.degree() > 0) squarefree = polynomial::divmod(p, g).first;
    }
    const auto roots = polynomial_roots(squarefree);
    for (const auto& r : roots) {
        const auto re = snap_to_rational(r.real(), 1000000, 1e-7);
        const auto im = snap_to_rational(r.imag(), 1000000, 1e-7);
        if (!re || !im) continue;
        const gaussian_rational cand{*re, *im};
        const polynomial lin({-cand, gaussian_rational(1)});
        long mult = 0;
        for (;;) {
            auto [q, rem] = polynomial::divmod(p, lin);
            if (!rem.is_zero()) break;
            ++mult;
            p = std::move(q);
        }
        if (mult == 0) continue;
        bool merged = false;
        for (auto& f : *out)
            if (f.first == cand) {
                f.second += sign * mult;
                merged = true;
            }
        if (!merged) out->push_back({cand, sign * mult});
    }
    return p;
}

}  // namespace detail

// Exact factorization over Q(i), or nullopt when some root is not Gaussian
// rational (within snapping reach).
inline std::optional<linear_factorization> factor_over_gaussians(const rational_function& f) {
    if (f.is_zero()) throw input_error("factor_over_gaussians: zero function");
    linear_factorization out;
    out.factors.clear();
    polynomial rn = detail::extract_linear_factors(f.num(), &out.factors, +1);
    polynomial rd = detail::extract_linear_factors(f.den(), &out.factors, -1);
    if (rn.degree() > 0 || rd.degree() > 0) return std::nullopt;
    // denominator of a normalized rational function is monic, so rd == 1
    out.lead = rn.coeff(0) / rd.coeff(0);
    out.factors.erase(
        std::remove_if(out.factors.begin(), out.factors.end(),
                       [](const auto& p) { return p.second == 0; }),
        out.factors.end());
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// rebuild the rational function from its factorization (sanity checks)
inline rational_function assemble_factorization(const linear_factorization& lf) {
    rational_function out{lf.lead};
    for (const auto& [root, mult] : lf.factors) {
        const rational_function lin =
            rational_function::z() - rational_function(root);
        out *= lin.pow(mult);
    }
    return out;
}

}  // namespace cechsym

#endif  // CECHSYM_FACTOR_HPP
