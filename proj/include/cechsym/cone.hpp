// SPDX-License-Identifier: MIT
//
// Shifted-cone model of the twisted complexes: triples (integral part,
// filtered-form part, trailing function/form part) with the one-parameter
// family of products interpolating "multiply on the left" and "multiply on
// the right".

#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cechsym/cech.hpp"

namespace cechsym {

// one slot of the cone: the integral channel lives at internal degree 0,
// the filtered channel at internal degree equal to the twist, and the
// trailing channel one degree behind its own
struct cone_value {
    form x;  // integral channel
    form y;  // filtered channel
    form z;  // trailing channel

    bool is_structurally_zero() const {
        return x.is_structurally_zero() && y.is_structurally_zero() && z.is_structurally_zero();
    }
};

inline cone_value operator+(const cone_value& a, const cone_value& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline cone_value operator-(const cone_value& a, const cone_value& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

class cone_cochain {
  public:
    cone_cochain(int twist, std::shared_ptr<const nerve> nv, int degree)
        : twist_(twist), nv_(std::move(nv)), degree_(degree) {
        if (twist_ < 1) throw input_error("cone_cochain: twist must be positive");
        if (!nv_) throw input_error("cone_cochain: null nerve");
        if (degree_ < 0) throw input_error("cone_cochain: negative degree");
    }

    int twist() const { return twist_; }
    int degree() const { return degree_; }
    const nerve& nv() const { return *nv_; }
    std::shared_ptr<const nerve> nv_ptr() const { return nv_; }
    int cech_degree(int p) const { return degree_ - p; }

    void set(int p, const simplex& s, cone_value v) {
        check_position(p, s);
        data_[{p, s.idx}] = std::move(v);
    }

    cone_value at(int p, const simplex& s) const {
        check_position(p, s);
        const auto it = data_.find({p, s.idx});
        return it != data_.end() ? it->second : cone_value{};
    }

    // the largest internal degree that can carry data: the trailing channel
    // reaches one past the length of the underlying two-step tail
    int max_internal() const { return 2; }

    template <class F>
    void for_each_position(F&& fn) const {
        for (int p = 0; p <= max_internal(); ++p) {
            const int q = cech_degree(p);
            if (q < 0 || q > nv_->max_dim) continue;
            for (const simplex& s : nv_->simplices(q)) fn(p, s);
        }
    }

  private:
    void check_position(int p, const simplex& s) const {
        if (p < 0 || p > max_internal()) throw input_error("cone_cochain: bad internal degree");
        if (cech_degree(p) != s.dimension())
            throw input_error("cone_cochain: simplex dimension mismatch");
        if (!nv_->has(s)) throw input_error("cone_cochain: simplex not in nerve");
    }

    int twist_;
    std::shared_ptr<const nerve> nv_;
    int degree_;
    std::map<std::pair<int, std::vector<int>>, cone_value> data_;
};

inline cone_cochain operator+(const cone_cochain& a, const cone_cochain& b) {
    if (a.twist() != b.twist() || a.degree() != b.degree())
        throw input_error("cone sum: shape mismatch");
    cone_cochain out(a.twist(), a.nv_ptr(), a.degree());
    out.for_each_position([&](int p, const simplex& s) {
        const cone_value v = a.at(p, s) + b.at(p, s);
        if (!v.is_structurally_zero()) out.set(p, s, v);
    });
    return out;
}

inline cone_cochain operator-(const cone_cochain& a, const cone_cochain& b) {
    if (a.twist() != b.twist() || a.degree() != b.degree())
        throw input_error("cone difference: shape mismatch");
    cone_cochain out(a.twist(), a.nv_ptr(), a.degree());
    out.for_each_position([&](int p, const simplex& s) {
        const cone_value v = a.at(p, s) - b.at(p, s);
        if (!v.is_structurally_zero()) out.set(p, s, v);
    });
    return out;
}

// slot differential: the trailing channel receives the integral channel,
// minus the filtered channel, minus its own derivative
inline cone_value cone_slot_d(const cone_value& v, int p, int twist) {
    cone_value out;
    out.y = d(v.y);
    form z_out = -d(v.z);
    if (p == 0) z_out = z_out + v.x;
    if (p == twist) z_out = z_out - v.y;
    out.z = z_out;
    return out;
}

inline cone_cochain cone_total_D(const cone_cochain& c) {
    cone_cochain out(c.twist(), c.nv_ptr(), c.degree() + 1);
    out.for_each_position([&](int p, const simplex& s) {
        cone_value acc;
        if (p >= 1) acc = acc + cone_slot_d(c.at(p - 1, s), p - 1, c.twist());
        const int q = s.dimension();
        if (q >= 1 && c.cech_degree(p) >= 0) {
            cone_value delta;
            for (int k = 0; k <= q; ++k) {
                const cone_value face = c.at(p, s.face_dropping(k));
                delta = (k % 2 == 0) ? delta + face : delta - face;
            }
            acc = (p % 2 == 0) ? acc + delta : acc - delta;
        }
        if (!acc.is_structurally_zero()) out.set(p, s, acc);
    });
    return out;
}

// interpolated product: at parameter 0 the trailing channel multiplies the
// integral channel on the right, at parameter 1 the filtered channel
inline cone_cochain cone_cup_alpha(const cone_cochain& a, const cone_cochain& b,
                                   const bigrat& alpha) {
    const expr al = make_gauss(gaussian_rational{alpha});
    const expr om = make_gauss(gaussian_rational{bigrat(1) - alpha});
    cone_cochain out(a.twist() + b.twist(), a.nv_ptr(), a.degree() + b.degree());
    out.for_each_position([&](int p, const simplex& s) {
        cone_value acc;
        const int q = s.dimension();
        for (int qa = 0; qa <= q; ++qa) {
            const int qb = q - qa;
            const simplex front{std::vector<int>(s.idx.begin(), s.idx.begin() + qa + 1)};
            const simplex back{std::vector<int>(s.idx.begin() + qa, s.idx.end())};
            for (int pa = 0; pa <= p; ++pa) {
                const int pb = p - pa;
                if (pa > a.max_internal() || pb > b.max_internal()) continue;
                if (a.cech_degree(pa) != qa || b.cech_degree(pb) != qb) continue;
                const cone_value u = a.at(pa, front);
                const cone_value v = b.at(pb, back);
                cone_value term;
                term.x = wedge(u.x, v.x);
                term.y = wedge(u.y, v.y);
                const form right_mix = scale(om, v.x) + scale(al, v.y);
                const form left_mix = scale(om, u.y) + scale(al, u.x);
                form z_term = wedge(u.z, right_mix);
                const form zr = wedge(left_mix, v.z);
                z_term = (pa % 2 == 0) ? z_term + zr : z_term - zr;
                term.z = z_term;
                if ((qa * pb) % 2 != 0) term = cone_value{} - term;
                acc = acc + term;
            }
        }
        if (!acc.is_structurally_zero()) out.set(p, s, acc);
    });
    return out;
}

// numeric sup of all channels over sampled points of every simplex
inline double cone_max_residual(const cone_cochain& c, const sector_cover& cover,
                                int samples_per_simplex, std::uint64_t seed,
                                const std::vector<std::complex<double>>& avoid = {}) {
    double worst = 0.0;
    c.for_each_position([&](int p, const simplex& s) {
        const cone_value v = c.at(p, s);
        if (v.is_structurally_zero()) return;
        const auto pts = sample_points(cover, s, samples_per_simplex, seed, avoid);
        for (const auto& z : pts)
            for (const form* f : {&v.x, &v.y, &v.z})
                for (const auto& val : f->eval(z)) worst = std::max(worst, std::abs(val));
    });
    return worst;
}

}  // namespace cechsym
