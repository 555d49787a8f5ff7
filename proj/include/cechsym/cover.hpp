// SPDX-License-Identifier: MIT
//
// Sector covers of an annulus around a puncture: exact nerve combinatorics,
// designated intersection regions, reproducible sample points, discretized
// winding loops, and per-sector log branches with integer jump data.
//
// Sector k spans angles (2*pi*k/N - w/2, 2*pi*k/N + w/2) at every radius of
// the annulus.  For wide sectors an intersection of several sectors can have
// several components on the circle; each nerve simplex designates one:
//   * the "straight" component (plain interval intersection of the sectors'
//     canonical angle ranges) whenever it is nonempty — this choice is
//     face-coherent, so Cech identities evaluated on designated regions see
//     consistent locally-constant data;
//   * otherwise the component across the largest angular gap of the chosen
//     centers (this is what makes the wrap-around overlap of a narrow cover
//     appear in the nerve).
// All nonemptiness decisions are exact: angles live in Q + Q*2pi and signs
// are decided through a rational enclosure of 2pi.

#ifndef CECHSYM_COVER_HPP
#define CECHSYM_COVER_HPP

#include "cechsym/rational.hpp"
#include "cechsym/rational_function.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace cechsym {

// intersection region reported empty where a simplex was expected
struct empty_region_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// exact angles  tau * 2pi + rad  with tau, rad rational
// ---------------------------------------------------------------------------

// sign of (q - 2pi) for rational q, decided by a tight rational enclosure
inline int compare_with_two_pi(const bigrat& q) {
    static const bigrat lo =
        bigrat(bigint("6283185307179586476925286766559"), bigint("1000000000000000000000000000000"));
    static const bigrat hi =
        bigrat(bigint("6283185307179586476925286766560"), bigint("1000000000000000000000000000000"));
    if (q <= lo) return -1;  // q < 2pi (2pi is irrational, equality impossible)
    if (q >= hi) return 1;
    throw input_error("angle comparison: rational value indistinguishable from 2*pi");
}

struct exact_angle {
    bigrat tau;  // coefficient of 2*pi
    bigrat rad;  // plain radians

    exact_angle() = default;
    exact_angle(bigrat turns, bigrat radians) : tau(std::move(turns)), rad(std::move(radians)) {}

    double to_double() const {
        return tau.convert_to<double>() * 2.0 * std::numbers::pi + rad.convert_to<double>();
    }

    friend exact_angle operator+(const exact_angle& a, const exact_angle& b) {
        return {a.tau + b.tau, a.rad + b.rad};
    }
    friend exact_angle operator-(const exact_angle& a, const exact_angle& b) {
        return {a.tau - b.tau, a.rad - b.rad};
    }
    friend exact_angle operator-(const exact_angle& a) { return {-a.tau, -a.rad}; }

    // exact sign of (a - b)
    static int compare(const exact_angle& a, const exact_angle& b) {
        const bigrat dt = a.tau - b.tau;
        const bigrat dr = a.rad - b.rad;
        if (dt == 0) return dr == 0 ? 0 : (dr < 0 ? -1 : 1);
        // sign of dt*2pi + dr == sign(dt) * sign(2pi - (-dr/dt))
        const int s = compare_with_two_pi(-dr / dt);
        return dt > 0 ? -s : s;
    }
    friend bool operator<(const exact_angle& a, const exact_angle& b) {
        return compare(a, b) < 0;
    }
    friend bool operator==(const exact_angle& a, const exact_angle& b) {
        return compare(a, b) == 0;
    }
};

// open angular arc (lo, hi) in unreduced coordinates, lo < hi
struct angular_region {
    exact_angle lo;
    exact_angle hi;
};

// ---------------------------------------------------------------------------
// simplices
// ---------------------------------------------------------------------------

struct simplex {
    std::vector<int> idx;  // strictly increasing sector indices

    simplex() = default;
    explicit simplex(std::vector<int> v) : idx(std::move(v)) {}
    simplex(std::initializer_list<int> v) : idx(v) {}

    int dimension() const { return static_cast<int>(idx.size()) - 1; }

    // face obtained by dropping the k-th vertex
    simplex face_dropping(int k) const {
        simplex f;
        for (int t = 0; t < static_cast<int>(idx.size()); ++t)
            if (t != k) f.idx.push_back(idx[t]);
        return f;
    }

    friend bool operator<(const simplex& a, const simplex& b) { return a.idx < b.idx; }
    friend bool operator==(const simplex& a, const simplex& b) { return a.idx == b.idx; }
};

inline std::string to_string(const simplex& s) {
    std::string out = "(";
    for (std::size_t k = 0; k < s.idx.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(s.idx[k]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// sector cover
// ---------------------------------------------------------------------------

class sector_cover {
  public:
    sector_cover(gaussian_rational center, double inner, double outer, int n_sectors,
                 bigrat width, std::uint64_t seed = 0)
        : center_(std::move(center)),
          inner_(inner),
          outer_(outer),
          n_(n_sectors),
          width_(std::move(width)),
          seed_(seed) {
        if (n_ < 1) throw input_error("sector_cover: need at least one sector");
        if (!(inner_ > 0.0) || !(inner_ < outer_))
            throw input_error("sector_cover: need 0 < inner < outer");
        if (width_ <= 0) throw input_error("sector_cover: width must be positive");
        // covering condition N * w > 2pi
        if (compare_with_two_pi(bigrat(n_) * width_) <= 0)
            throw input_error("sector_cover: N * width must exceed 2*pi");
    }

    const gaussian_rational& center() const { return center_; }
    double inner() const { return inner_; }
    double outer() const { return outer_; }
    int sector_count() const { return n_; }
    const bigrat& width() const { return width_; }
    std::uint64_t seed() const { return seed_; }

    double width_rad() const { return width_.convert_to<double>(); }
    double mid_radius() const { return 0.5 * (inner_ + outer_); }
    std::complex<double> center_point() const { return center_.to_complex(); }

    // canonical center angle of sector k as an exact angle (2*pi*k/N)
    exact_angle sector_center(int k) const { return {bigrat(k, n_), bigrat(0)}; }

    std::complex<double> point_at(double angle, double radius) const {
        return center_point() + std::polar(radius, angle);
    }

    // numeric membership: circular distance from theta to sector center < w/2
    bool contains_angle(int k, double theta) const {
        const double c = 2.0 * std::numbers::pi * static_cast<double>(k) / n_;
        double d = std::remainder(theta - c, 2.0 * std::numbers::pi);
        return std::abs(d) < 0.5 * width_rad();
    }

    // Designated intersection region of a set of sectors, or empty result.
    // Returned angles are unreduced: consecutive centers of the chosen run
    // increase monotonically, wrapping past 2pi when the run crosses it.
    bool designated_region(const std::vector<int>& sectors, angular_region* out) const {
        if (sectors.empty()) throw input_error("designated_region: empty index set");
        for (int k : sectors)
            if (k < 0 || k >= n_) throw input_error("designated_region: sector index range");
        std::vector<int> s = sectors;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw input_error("designated_region: repeated sector index");
        const int q = static_cast<int>(s.size());
        const bigrat half_w = width_ / 2;

        auto region_for_run = [&](int start_t, const bigrat& span_units) -> angular_region {
            // run starts at sorted position start_t and proceeds cyclically
            const bigrat first(s[static_cast<std::size_t>(start_t)], n_);
            const bigrat last = first + span_units / n_;
            return {exact_angle{last, -half_w}, exact_angle{first, half_w}};
        };

        // straight component: span of sorted centers in units of sectors
        const bigrat straight_units(s[static_cast<std::size_t>(q - 1)] - s[0], 1);
        if (nonempty_span(straight_units)) {
            if (out) *out = region_for_run(0, straight_units);
            return true;
        }
        if (q == 1) {
            if (out) *out = region_for_run(0, bigrat(0));
            return true;
        }
        // wrapped component across the largest circular gap between centers
        int best_t = -1;
        int best_gap = -1;
        for (int t = 0; t < q; ++t) {
            const int a = s[static_cast<std::size_t>(t)];
            const int b = s[static_cast<std::size_t>((t + 1) % q)];
            const int gap = (t + 1 == q) ? (b + n_ - a) : (b - a);
            if (gap > best_gap) {
                best_gap = gap;
                best_t = t;
            }
        }
        const bigrat cyclic_units(n_ - best_gap, 1);
        if (!nonempty_span(cyclic_units)) return false;
        if (out) *out = region_for_run((best_t + 1) % q, cyclic_units);
        return true;
    }

    bool subset_nonempty(const std::vector<int>& sectors) const {
        return designated_region(sectors, nullptr);
    }

  private:
    gaussian_rational center_;
    double inner_;
    double outer_;
    int n_;
    bigrat width_;
    std::uint64_t seed_;

    // true when an angular span of span_units*(2pi/N) is less than the width
    bool nonempty_span(const bigrat& span_units) const {
        if (span_units == 0) return true;
        // 2pi * span_units / N < w  <=>  2pi < w * N / span_units
        return compare_with_two_pi(width_ * bigrat(n_) / span_units) > 0;
    }
};

// ---------------------------------------------------------------------------
// nerve
// ---------------------------------------------------------------------------

struct nerve {
    int max_dim = 0;
    std::vector<std::vector<simplex>> by_dim;  // by_dim[d] = d-simplices, sorted

    const std::vector<simplex>& simplices(int dim) const {
        static const std::vector<simplex> none;
        if (dim < 0 || dim >= static_cast<int>(by_dim.size())) return none;
        return by_dim[static_cast<std::size_t>(dim)];
    }

    bool has(const simplex& s) const {
        const int d = s.dimension();
        if (d < 0 || d >= static_cast<int>(by_dim.size())) return false;
        const auto& v = by_dim[static_cast<std::size_t>(d)];
        return std::binary_search(v.begin(), v.end(), s);
    }

    std::size_t total_count() const {
        std::size_t c = 0;
        for (const auto& v : by_dim) c += v.size();
        return c;
    }
};

inline nerve build_nerve(const sector_cover& cover, int max_dim) {
    if (max_dim < 0) throw input_error("build_nerve: negative dimension");
    nerve nv;
    nv.max_dim = max_dim;
    nv.by_dim.assign(static_cast<std::size_t>(max_dim) + 1, {});
    const int n = cover.sector_count();
    // enumerate strictly increasing tuples by backtracking
    std::vector<int> cur;
    auto extend = [&](auto&& self, int next) -> void {
        for (int k = next; k < n; ++k) {
            cur.push_back(k);
            if (cover.subset_nonempty(cur)) {
                const int d = static_cast<int>(cur.size()) - 1;
                if (d <= max_dim) {
                    nv.by_dim[static_cast<std::size_t>(d)].push_back(simplex(cur));
                    if (d < max_dim) self(self, k + 1);
                }
            }
            cur.pop_back();
        }
    };
    extend(extend, 0);
    for (auto& v : nv.by_dim) std::sort(v.begin(), v.end());
    return nv;
}

// ---------------------------------------------------------------------------
// sample points
// ---------------------------------------------------------------------------

inline std::vector<std::complex<double>> sample_points(
    const sector_cover& cover, const simplex& s, int count, std::uint64_t seed,
    const std::vector<std::complex<double>>& avoid = {}) {
    angular_region region;
    if (!cover.designated_region(s.idx, &region))
        throw empty_region_error("sample_points: designated region is empty");
    const double lo = region.lo.to_double();
    const double hi = region.hi.to_double();
    const double len = hi - lo;
    const double r0 = cover.inner(), r1 = cover.outer();
    const double margin = 1e-6;

    std::uint64_t mixed = seed ^ 0x9e3779b97f4a7c15ull;
    for (int k : s.idx)
        mixed = mixed * 1099511628211ull + static_cast<std::uint64_t>(k + 1);
    std::mt19937_64 gen(mixed);
    std::uniform_real_distribution<double> unit(margin, 1.0 - margin);

    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 1000 * (count + 1))
            throw empty_region_error("sample_points: could not avoid excluded points");
        const double theta = lo + unit(gen) * len;
        const double radius = r0 + unit(gen) * (r1 - r0);
        const std::complex<double> z = cover.point_at(theta, radius);
        bool ok = true;
        for (const auto& a : avoid)
            if (std::abs(z - a) < 1e-9) ok = false;
        if (ok) out.push_back(z);
    }
    return out;
}

// ---------------------------------------------------------------------------
// winding loop
// ---------------------------------------------------------------------------

struct loop_segment {
    int sector = 0;
    exact_angle a0;  // start angle (unreduced, monotone along the loop)
    exact_angle a1;  // end angle
};

struct winding_loop_data {
    double radius = 0.0;
    int steps_per_arc = 0;
    std::vector<loop_segment> segments;  // positively oriented, closes up to 2pi
};

// positively-oriented circle of radius r, cut at consecutive-overlap midpoints
inline winding_loop_data winding_loop(const sector_cover& cover, double r,
                                      int steps_per_arc) {
    if (!(r > cover.inner()) || !(r < cover.outer()))
        throw input_error("winding_loop: radius outside annulus");
    if (steps_per_arc < 1) throw input_error("winding_loop: need at least one step");
    winding_loop_data ld;
    ld.radius = r;
    ld.steps_per_arc = steps_per_arc;
    const int n = cover.sector_count();
    for (int k = 0; k < n; ++k) {
        loop_segment seg;
        seg.sector = k;
        seg.a0 = exact_angle{bigrat(2 * k - 1, 2 * n), bigrat(0)};
        seg.a1 = exact_angle{bigrat(2 * k + 1, 2 * n), bigrat(0)};
        ld.segments.push_back(seg);
    }
    return ld;
}

// ---------------------------------------------------------------------------
// log branches
// ---------------------------------------------------------------------------

namespace detail {

// continue a log value for f along the path z(t), t in [0,1]
template <typename PathFn>
std::complex<double> continue_log(const rational_function& f, PathFn&& path, int steps,
                                  std::complex<double> start_log) {
    std::complex<double> acc = start_log;
    std::complex<double> prev = f.eval(path(0.0));
    for (int s = 1; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const std::complex<double> next = f.eval(path(t));
        acc += std::log(next / prev);  // principal step, small per-step arc
        prev = next;
    }
    return acc;
}

}  // namespace detail

class branch_assignment {
  public:
    branch_assignment(rational_function f, const sector_cover& cover, int steps)
        : f_(std::move(f)),
          center_(cover.center_point()),
          n_(cover.sector_count()),
          half_width_(0.5 * cover.width_rad()),
          r_mid_(cover.mid_radius()),
          steps_(steps) {
        // base value of sector 0: principal log at its base point, then chain
        // the remaining base values counterclockwise so that consecutive
        // sectors agree on the short way around
        const double tp = 2.0 * std::numbers::pi;
        base_.resize(static_cast<std::size_t>(n_));
        base_[0] = std::log(f_.eval(point(0.0, r_mid_)));
        for (int k = 1; k < n_; ++k) {
            const double a0 = tp * (k - 1) / n_;
            const double a1 = tp * k / n_;
            base_[static_cast<std::size_t>(k)] = detail::continue_log(
                f_, [&](double t) { return point(a0 + t * (a1 - a0), r_mid_); }, steps_,
                base_[static_cast<std::size_t>(k - 1)]);
        }
    }

    const rational_function& function() const { return f_; }
    int sector_count() const { return n_; }

    // branch of log f on sector k at angle theta (any representative) and radius
    std::complex<double> log_at(int k, double theta, double radius) const {
        if (k < 0 || k >= n_) throw input_error("log_at: sector index");
        const double tp = 2.0 * std::numbers::pi;
        const double c = tp * k / n_;
        const double delta = std::remainder(theta - c, tp);
        if (!(std::abs(delta) < half_width_ + 1e-12))
            throw input_error("log_at: angle outside sector");
        // angular stage at mid radius, then radial stage
        std::complex<double> v = detail::continue_log(
            f_, [&](double t) { return point(c + t * delta, r_mid_); }, steps_,
            base_[static_cast<std::size_t>(k)]);
        if (radius != r_mid_)
            v = detail::continue_log(
                f_, [&](double t) { return point(c + delta, r_mid_ + t * (radius - r_mid_)); },
                steps_, v);
        return v;
    }

    // integer jump (log_b - log_a) / 2pi*i at the given point, guarded
    long jump_integer(int a, int b, double theta, double radius) const {
        const std::complex<double> la = log_at(a, theta, radius);
        const std::complex<double> lb = log_at(b, theta, radius);
        return round_jump(lb - la);
    }

    static long round_jump(std::complex<double> diff) {
        const double tp = 2.0 * std::numbers::pi;
        const double m = diff.imag() / tp;
        const long mi = std::lround(m);
        const double residual = std::abs(diff - std::complex<double>(0.0, tp * mi));
        if (!(residual < 0.25 * tp))
            throw branch_guard_error("branch jump residual exceeds guard");
        return mi;
    }

  private:
    rational_function f_;
    std::complex<double> center_;
    int n_;
    double half_width_;
    double r_mid_;
    int steps_;
    std::vector<std::complex<double>> base_;

    std::complex<double> point(double angle, double radius) const {
        return center_ + std::polar(radius, angle);
    }
};

struct log_branch_assignment {
    branch_assignment branches;
    std::map<std::pair<int, int>, long> m;  // per nerve edge (i < j), designated region
};

// Per-sector branches of log f plus integer jumps m_ij on every nerve edge,
// each computed at the midpoint of the edge's designated region.
inline log_branch_assignment assign_branches(const rational_function& f,
                                             const sector_cover& cover, int steps = 256) {
    log_branch_assignment out{branch_assignment(f, cover, steps), {}};
    const nerve nv = build_nerve(cover, 1);
    for (const simplex& e : nv.simplices(1)) {
        angular_region region;
        if (!cover.designated_region(e.idx, &region))
            throw empty_region_error("assign_branches: edge without region");
        const double mid = 0.5 * (region.lo.to_double() + region.hi.to_double());
        const long mij =
            out.branches.jump_integer(e.idx[0], e.idx[1], mid, cover.mid_radius());
        out.m[{e.idx[0], e.idx[1]}] = mij;
    }
    return out;
}

// Sum of switch jump integers around a loop; equals the winding of f about
// the cover center.  At the switch from segment s to segment s+1 the jump
// taken is (log_from - log_to) / 2pi*i at the switch point.
inline long loop_branch_sum(const branch_assignment& branches, const winding_loop_data& ld) {
    long total = 0;
    const int n = static_cast<int>(ld.segments.size());
    for (int s = 0; s < n; ++s) {
        const loop_segment& cur = ld.segments[static_cast<std::size_t>(s)];
        const loop_segment& nxt = ld.segments[static_cast<std::size_t>((s + 1) % n)];
        const double theta = cur.a1.to_double();
        total += branches.jump_integer(nxt.sector, cur.sector, theta, ld.radius);
    }
    return total;
}

}  // namespace cechsym

#endif  // CECHSYM_COVER_HPP
