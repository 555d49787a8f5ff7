// SPDX-License-Identifier: MIT
//
// Branches of logarithms of rational functions on an annulus sector cover.
//
// A log_branch is one continuous branch of log h near a base point, evaluated
// anywhere on the annulus by continuation along a canonical two-stage path
// (angular sweep at the base radius, then radial).  A function_branches
// object assembles per-sector branches of log f for every sector of a cover,
// chained counterclockwise from sector 0; when f factors over Q(i) each
// linear factor is continued separately, which makes the integer jumps m_ij
// exactly additive under multiplication of functions.

#ifndef CECHSYM_BRANCH_HPP
#define CECHSYM_BRANCH_HPP

#include "cechsym/cover.hpp"
#include "cechsym/factor.hpp"
#include "cechsym/rational_function.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <numbers>
#include <utility>
#include <vector>

namespace cechsym {

// ---------------------------------------------------------------------------
// single branch
// ---------------------------------------------------------------------------

class log_branch {
  public:
    log_branch(rational_function h, std::complex<double> center, double base_angle,
               double base_radius, std::complex<double> base_value, int steps)
        : h_(std::move(h)),
          center_(center),
          base_angle_(base_angle),
          base_radius_(base_radius),
          base_value_(base_value),
          steps_(steps) {}

    const rational_function& fn() const { return h_; }
    std::complex<double> center() const { return center_; }
    double base_angle() const { return base_angle_; }
    double base_radius() const { return base_radius_; }
    std::complex<double> base_value() const { return base_value_; }
    int steps() const { return steps_; }

    // branch value at z: angular stage at the base radius toward the
    // representative of arg(z) nearest the base angle, then radial stage
    std::complex<double> log_at(std::complex<double> z) const {
        const std::complex<double> rel = z - center_;
        const double radius = std::abs(rel);
        const double delta =
            std::remainder(std::arg(rel) - base_angle_, 2.0 * std::numbers::pi);
        std::complex<double> v = detail::continue_log(
            h_,
            [&](double t) {
                return center_ + std::polar(base_radius_, base_angle_ + t * delta);
            },
            steps_, base_value_);
        if (radius != base_radius_) {
            const double target = base_angle_ + delta;
            v = detail::continue_log(
                h_,
                [&](double t) {
                    return center_ +
                           std::polar(base_radius_ + t * (radius - base_radius_), target);
                },
                steps_, v);
        }
        return v;
    }

    // deterministic total order on branch data (for canonical expression keys)
    static int compare(const log_branch& a, const log_branch& b) {
        if (a.h_ != b.h_) {
            // polynomial coefficient tuples give a stable order
            auto key = [](const rational_function& f) {
                std::vector<gaussian_rational> k;
                for (long t = 0; t <= f.num().degree(); ++t) k.push_back(f.num().coeff(t));
                k.push_back(gaussian_rational{bigrat(-7), bigrat(0)});  // separator
                for (long t = 0; t <= f.den().degree(); ++t) k.push_back(f.den().coeff(t));
                return k;
            };
            const auto ka = key(a.h_), kb = key(b.h_);
            return ka < kb ? -1 : 1;
        }
        auto bits = [](double x) {
            std::uint64_t u;
            static_assert(sizeof(u) == sizeof(x));
            std::memcpy(&u, &x, sizeof(u));
            return u;
        };
        const std::uint64_t ka[] = {bits(a.base_angle_), bits(a.base_radius_),
                                    bits(a.base_value_.real()), bits(a.base_value_.imag()),
                                    bits(a.center_.real()), bits(a.center_.imag()),
                                    static_cast<std::uint64_t>(a.steps_)};
        const std::uint64_t kb[] = {bits(b.base_angle_), bits(b.base_radius_),
                                    bits(b.base_value_.real()), bits(b.base_value_.imag()),
                                    bits(b.center_.real()), bits(b.center_.imag()),
                                    static_cast<std::uint64_t>(b.steps_)};
        for (int t = 0; t < 7; ++t) {
            if (ka[t] < kb[t]) return -1;
            if (ka[t] > kb[t]) return 1;
        }
        return 0;
    }

  private:
    rational_function h_;
    std::complex<double> center_;
    double base_angle_;
    double base_radius_;
    std::complex<double> base_value_;
    int steps_;
};

// chained per-sector base values of log h: principal at sector 0, then each
// next sector's base continued counterclockwise along the mid-radius circle
inline std::vector<std::complex<double>> chained_sector_bases(const rational_function& h,
                                                              const sector_cover& cover,
                                                              int steps) {
    const double tp = 2.0 * std::numbers::pi;
    const int n = cover.sector_count();
    const double r = cover.mid_radius();
    const std::complex<double> c = cover.center_point();
    std::vector<std::complex<double>> base(static_cast<std::size_t>(n));
    base[0] = std::log(h.eval(c + std::polar(r, 0.0)));
    for (int k = 1; k < n; ++k) {
        const double a0 = tp * (k - 1) / n;
        const double a1 = tp * k / n;
        base[static_cast<std::size_t>(k)] = detail::continue_log(
            h, [&](double t) { return c + std::polar(r, a0 + t * (a1 - a0)); }, steps,
            base[static_cast<std::size_t>(k - 1)]);
    }
    return base;
}

// all per-sector branches of log h with chained bases
inline std::vector<log_branch> chained_sector_branches(const rational_function& h,
                                                       const sector_cover& cover,
                                                       int steps) {
    const double tp = 2.0 * std::numbers::pi;
    const auto bases = chained_sector_bases(h, cover, steps);
    std::vector<log_branch> out;
    out.reserve(bases.size());
    for (int k = 0; k < cover.sector_count(); ++k)
        out.emplace_back(h, cover.center_point(), tp * k / cover.sector_count(),
                         cover.mid_radius(), bases[static_cast<std::size_t>(k)], steps);
    return out;
}

// branch of log g based at the midpoint of an overlap's designated region
inline log_branch overlap_log_branch(const rational_function& g, const sector_cover& cover,
                                     const simplex& s, int steps) {
    angular_region region;
    if (!cover.designated_region(s.idx, &region))
        throw empty_region_error("overlap_log_branch: empty designated region");
    const double mid = 0.5 * (region.lo.to_double() + region.hi.to_double());
    const std::complex<double> base =
        cover.center_point() + std::polar(cover.mid_radius(), mid);
    return log_branch(g, cover.center_point(), mid, cover.mid_radius(),
                      std::log(g.eval(base)), steps);
}

// ---------------------------------------------------------------------------
// per-sector branch system for one function
// ---------------------------------------------------------------------------

class function_branches {
  public:
    struct part {
        rational_function h;         // linear factor (z - a), or f itself if unfactored
        long mult = 1;               // exponent of this part
        std::vector<log_branch> by_sector;
    };

    function_branches(const rational_function& f, const sector_cover& cover,
                      int steps = 256)
        : f_(f), lead_log_(0.0, 0.0) {
        if (f.is_zero()) throw input_error("function_branches: zero function");
        const auto lf = factor_over_gaussians(f);
        if (lf) {
            factored_ = true;
            for (const auto& [root, mult] : lf->factors) {
                part p;
                p.h = rational_function::z() - rational_function(root);
                p.mult = mult;
                p.by_sector = chained_sector_branches(p.h, cover, steps);
                parts_.push_back(std::move(p));
            }
            lead_log_ = std::log(lf->lead.to_complex());
        } else {
            factored_ = false;
            part p;
            p.h = f;
            p.mult = 1;
            p.by_sector = chained_sector_branches(f, cover, steps);
            parts_.push_back(std::move(p));
        }
        // integer jumps on every nerve edge, at designated-region midpoints
        const nerve nv = build_nerve(cover, 1);
        for (const simplex& e : nv.simplices(1)) {
            angular_region region;
            if (!cover.designated_region(e.idx, &region)) continue;
            const double mid = 0.5 * (region.lo.to_double() + region.hi.to_double());
            const std::complex<double> at =
                cover.center_point() + std::polar(cover.mid_radius(), mid);
            long total = 0;
            for (const auto& p : parts_) {
                const std::complex<double> diff =
                    p.by_sector[static_cast<std::size_t>(e.idx[1])].log_at(at) -
                    p.by_sector[static_cast<std::size_t>(e.idx[0])].log_at(at);
                total += p.mult * branch_assignment::round_jump(diff);
            }
            m_[{e.idx[0], e.idx[1]}] = total;
        }
    }

    const rational_function& fn() const { return f_; }
    bool is_factored() const { return factored_; }
    const std::vector<part>& parts() const { return parts_; }
    std::complex<double> lead_log() const { return lead_log_; }

    // branch of log f on sector k
    std::complex<double> log_at(int k, std::complex<double> z) const {
        std::complex<double> acc = lead_log_;
        for (const auto& p : parts_)
            acc += static_cast<double>(p.mult) *
                   p.by_sector[static_cast<std::size_t>(k)].log_at(z);
        return acc;
    }

    // exact integer jump (log_j f - log_i f)/2pi*i on the designated region
    long m(int i, int j) const {
        if (i == j) return 0;
        if (i > j) return -m(j, i);
        const auto it = m_.find({i, j});
        if (it == m_.end()) throw input_error("function_branches: no such overlap");
        return it->second;
    }

    bool has_edge(int i, int j) const {
        if (i > j) std::swap(i, j);
        return m_.find({i, j}) != m_.end();
    }

  private:
    rational_function f_;
    bool factored_ = false;
    std::vector<part> parts_;
    std::complex<double> lead_log_;
    std::map<std::pair<int, int>, long> m_;
};

}  // namespace cechsym

#endif  // CECHSYM_BRANCH_HPP
