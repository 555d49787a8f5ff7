// SPDX-License-Identifier: MIT
//
// Cech machinery over a sector cover: coefficient complexes (additive form
// slots and multiplicative function slots), total cochains, the total
// differential D = d + (-1)^p delta, cup products, and numeric closure checks.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cechsym/cover.hpp"
#include "cechsym/form.hpp"

namespace cechsym {

// ---------------------------------------------------------------------------
// coefficient complexes
// ---------------------------------------------------------------------------

// value held by one slot on one simplex: a tuple of forms for additive slots
// (usually one entry; direct-sum slots hold two), or a nonzero rational
// function for multiplicative slots
using cvalue = std::variant<std::vector<form>, rational_function>;

enum class slot_kind { additive, multiplicative };

struct slot_spec {
    slot_kind kind = slot_kind::additive;
    int arity = 1;  // number of form components (additive slots)
    // differential into the next slot; empty for the final slot
    std::function<std::vector<form>(const cvalue&)> diff;
};

struct coefficient_complex {
    std::string name;
    int twist = 0;  // the complex pairs values against (2*pi*i)^twist integers
    std::vector<slot_spec> slots;

    int length() const { return static_cast<int>(slots.size()) - 1; }
    const slot_spec& slot(int p) const {
        if (p < 0 || p > length()) throw input_error("coefficient_complex: bad slot degree");
        return slots[static_cast<std::size_t>(p)];
    }
};

namespace detail {

inline const std::vector<form>& forms_of(const cvalue& v) {
    if (!std::holds_alternative<std::vector<form>>(v))
        throw input_error("expected an additive slot value");
    return std::get<std::vector<form>>(v);
}

inline const rational_function& ratio_of(const cvalue& v) {
    if (!std::holds_alternative<rational_function>(v))
        throw input_error("expected a multiplicative slot value");
    return std::get<rational_function>(v);
}

inline std::function<std::vector<form>(const cvalue&)> diff_forms(
    std::function<std::vector<form>(const std::vector<form>&)> fn) {
    return [fn = std::move(fn)](const cvalue& v) { return fn(forms_of(v)); };
}

}  // namespace detail

// the deligne-style complexes used throughout: integral constants, then
// holomorphic-function slots, then form slots of the indicated flavor
inline std::shared_ptr<const coefficient_complex> complex_z1d() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "z1d";
    cx->twist = 1;
    cx->slots.resize(2);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    return cx;
}

inline std::shared_ptr<const coefficient_complex> complex_z2d() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "z2d";
    cx->twist = 2;
    cx->slots.resize(3);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    cx->slots[1].diff =
        detail::diff_forms([](const std::vector<form>& v) { return std::vector<form>{d(v[0])}; });
    return cx;
}

// twist-2 complex whose top slot keeps the imaginary part of a function
inline std::shared_ptr<const coefficient_complex> complex_herm_z2() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "herm_z2";
    cx->twist = 2;
    cx->slots.resize(3);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    cx->slots[1].diff = detail::diff_forms(
        [](const std::vector<form>& v) { return std::vector<form>{-pi_p(v[0], 1)}; });
    return cx;
}

// twist-1 complex whose top slot keeps the real part of a function;
// hosts metrized line-bundle data
inline std::shared_ptr<const coefficient_complex> complex_met_z1() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "met_z1";
    cx->twist = 1;
    cx->slots.resize(3);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    cx->slots[1].diff = detail::diff_forms(
        [](const std::vector<form>& v) { return std::vector<form>{-pi_p(v[0], 0)}; });
    return cx;
}

// twist-2 complex ending in imaginary-part one-forms
inline std::shared_ptr<const coefficient_complex> complex_lambda2() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "lambda2";
    cx->twist = 2;
    cx->slots.resize(3);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    cx->slots[1].diff = detail::diff_forms(
        [](const std::vector<form>& v) { return std::vector<form>{-pi_p(d(v[0]), 1)}; });
    return cx;
}

// twist-2 complex keeping both the derivative and the imaginary part
inline std::shared_ptr<const coefficient_complex> complex_gamma_tilde2() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "gamma_tilde2";
    cx->twist = 2;
    cx->slots.resize(3);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    cx->slots[1].diff = detail::diff_forms(
        [](const std::vector<form>& v) { return std::vector<form>{d(v[0]), -pi_p(v[0], 1)}; });
    cx->slots[2].arity = 2;
    return cx;
}

// extension of the previous complex by one more slot; the extra differential
// combines the pair into a single one-form and measures the failure of a
// one-form/function pair to be compatible
inline std::shared_ptr<const coefficient_complex> complex_gamma2() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "gamma2";
    cx->twist = 2;
    cx->slots.resize(4);
    cx->slots[0].diff = detail::diff_forms([](const std::vector<form>& v) { return v; });
    cx->slots[1].diff = detail::diff_forms(
        [](const std::vector<form>& v) { return std::vector<form>{d(v[0]), -pi_p(v[0], 1)}; });
    cx->slots[2].arity = 2;
    cx->slots[2].diff = detail::diff_forms([](const std::vector<form>& v) {
        return std::vector<form>{pi_p(v[0], 1) + d(v[1])};
    });
    return cx;
}

// multiplicative functions with their logarithmic derivatives
inline std::shared_ptr<const coefficient_complex> complex_mult_conn() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "mult_conn";
    cx->twist = 1;
    cx->slots.resize(2);
    cx->slots[0].kind = slot_kind::multiplicative;
    cx->slots[0].diff = [](const cvalue& v) {
        return std::vector<form>{form::dz(make_rat(detail::ratio_of(v).dlog()))};
    };
    return cx;
}

// multiplicative functions with the logarithm of their absolute value
inline std::shared_ptr<const coefficient_complex> complex_mult_met() {
    auto cx = std::make_shared<coefficient_complex>();
    cx->name = "mult_met";
    cx->twist = 1;
    cx->slots.resize(2);
    cx->slots[0].kind = slot_kind::multiplicative;
    cx->slots[0].diff = [](const cvalue& v) {
        return std::vector<form>{form::function(make_log_abs(detail::ratio_of(v)))};
    };
    return cx;
}

inline std::shared_ptr<const coefficient_complex> complex_by_name(const std::string& name) {
    if (name == "z1d") return complex_z1d();
    if (name == "z2d") return complex_z2d();
    if (name == "herm_z2") return complex_herm_z2();
    if (name == "met_z1") return complex_met_z1();
    if (name == "lambda2") return complex_lambda2();
    if (name == "gamma_tilde2") return complex_gamma_tilde2();
    if (name == "gamma2") return complex_gamma2();
    if (name == "mult_conn") return complex_mult_conn();
    if (name == "mult_met") return complex_mult_met();
    throw input_error("unknown coefficient complex: " + name);
}

// ---------------------------------------------------------------------------
// cvalue helpers
// ---------------------------------------------------------------------------

namespace detail {

inline cvalue cv_zero(const slot_spec& s) {
    if (s.kind == slot_kind::multiplicative) return rational_function(1);
    return std::vector<form>(static_cast<std::size_t>(s.arity));
}

inline bool cv_is_zero(const slot_spec& s, const cvalue& v) {
    if (s.kind == slot_kind::multiplicative) return ratio_of(v).is_constant() &&
        ratio_of(v).constant_value() == gaussian_rational(1);
    for (const auto& f : forms_of(v))
        if (!f.is_structurally_zero()) return false;
    return true;
}

inline cvalue cv_combine(const slot_spec& s, const cvalue& a, const cvalue& b, int bsign) {
    if (s.kind == slot_kind::multiplicative) {
        const rational_function& x = ratio_of(a);
        const rational_function& y = ratio_of(b);
        return bsign >= 0 ? x * y : x / y;
    }
    const auto& x = forms_of(a);
    const auto& y = forms_of(b);
    if (x.size() != y.size()) throw input_error("cv_combine: arity mismatch");
    std::vector<form> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = bsign >= 0 ? x[k] + y[k] : x[k] - y[k];
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// cochains
// ---------------------------------------------------------------------------

class cech_cochain {
  public:
    cech_cochain(std::shared_ptr<const coefficient_complex> cx, std::shared_ptr<const nerve> nv,
                 int degree)
        : cx_(std::move(cx)), nv_(std::move(nv)), degree_(degree) {
        if (!cx_ || !nv_) throw input_error("cech_cochain: null complex or nerve");
        if (degree_ < 0) throw input_error("cech_cochain: negative degree");
    }

    const coefficient_complex& cx() const { return *cx_; }
    std::shared_ptr<const coefficient_complex> cx_ptr() const { return cx_; }
    const nerve& nv() const { return *nv_; }
    std::shared_ptr<const nerve> nv_ptr() const { return nv_; }
    int degree() const { return degree_; }

    // Cech degree of the component with internal degree p (may be negative)
    int cech_degree(int p) const { return degree_ - p; }

    void set(int p, const simplex& s, cvalue v) {
        check_position(p, s);
        data_[key(p, s)] = std::move(v);
    }

    cvalue at(int p, const simplex& s) const {
        check_position(p, s);
        const auto it = data_.find(key(p, s));
        if (it != data_.end()) return it->second;
        return detail::cv_zero(cx_->slot(p));
    }

    bool stored(int p, const simplex& s) const { return data_.count(key(p, s)) > 0; }

    // visits every (internal degree, simplex) position of this degree,
    // including positions holding the default zero value
    template <class F>
    void for_each_position(F&& fn) const {
        for (int p = 0; p <= cx_->length(); ++p) {
            const int q = cech_degree(p);
            if (q < 0 || q > nv_->max_dim) continue;
            for (const simplex& s : nv_->simplices(q)) fn(p, s);
        }
    }

  private:
    using key_t = std::pair<int, std::vector<int>>;
    static key_t key(int p, const simplex& s) { return {p, s.idx}; }

    void check_position(int p, const simplex& s) const {
        cx_->slot(p);
        const int q = cech_degree(p);
        if (q != s.dimension()) throw input_error("cech_cochain: simplex dimension mismatch");
        if (!nv_->has(s)) throw input_error("cech_cochain: simplex not in nerve");
    }

    std::shared_ptr<const coefficient_complex> cx_;
    std::shared_ptr<const nerve> nv_;
    int degree_;
    std::map<key_t, cvalue> data_;
};

// slot-wise sum and difference (additive slots add, multiplicative multiply)
inline cech_cochain combine(const cech_cochain& a, const cech_cochain& b, int bsign) {
    if (a.cx_ptr()->name != b.cx_ptr()->name || a.degree() != b.degree())
        throw input_error("combine: cochain shape mismatch");
    cech_cochain out(a.cx_ptr(), a.nv_ptr(), a.degree());
    a.for_each_position([&](int p, const simplex& s) {
        const slot_spec& spec = a.cx().slot(p);
        const cvalue v = detail::cv_combine(spec, a.at(p, s), b.at(p, s), bsign);
        if (!detail::cv_is_zero(spec, v)) out.set(p, s, v);
    });
    return out;
}

inline cech_cochain operator+(const cech_cochain& a, const cech_cochain& b) {
    return combine(a, b, +1);
}
inline cech_cochain operator-(const cech_cochain& a, const cech_cochain& b) {
    return combine(a, b, -1);
}

// ---------------------------------------------------------------------------
// the total differential
// ---------------------------------------------------------------------------

// D(c)^(p,q) = diff(c^(p-1,q)) + (-1)^p * (delta c)^(p,q-1-shifted);
// the alternating Cech boundary acts additively on form slots and
// multiplicatively (with inverse faces) on function slots
inline cech_cochain total_D(const cech_cochain& c) {
    const auto cx = c.cx_ptr();
    cech_cochain out(cx, c.nv_ptr(), c.degree() + 1);
    out.for_each_position([&](int p, const simplex& s) {
        const slot_spec& spec = cx->slot(p);
        cvalue acc = detail::cv_zero(spec);
        // coefficient differential from the slot below
        if (p >= 1 && cx->slot(p - 1).diff) {
            const cvalue below = c.at(p - 1, s);
            if (!detail::cv_is_zero(cx->slot(p - 1), below))
                acc = detail::cv_combine(spec, acc, cvalue(cx->slot(p - 1).diff(below)), +1);
        }
        // Cech boundary within the slot
        const int q = s.dimension();
        if (q >= 1 && c.cech_degree(p) >= 0) {
            if (spec.kind == slot_kind::multiplicative && (p % 2) != 0)
                throw input_error("total_D: multiplicative slot at odd internal degree");
            cvalue delta = detail::cv_zero(spec);
            for (int k = 0; k <= q; ++k) {
                const int sign = (k % 2 == 0) ? +1 : -1;
                delta = detail::cv_combine(spec, delta, c.at(p, s.face_dropping(k)), sign);
            }
            acc = detail::cv_combine(spec, acc, delta, (p % 2 == 0) ? +1 : -1);
        }
        if (!detail::cv_is_zero(spec, acc)) out.set(p, s, acc);
    });
    return out;
}

// ---------------------------------------------------------------------------
// cup products
// ---------------------------------------------------------------------------

// pairing of a slot-pa fragment of the first factor with a slot-pb fragment
// of the second; returns the form landing in slot pa+pb of the target
using cup_pairing = std::function<form(int pa, const form&, int pb, const form&)>;

// front-face / back-face cup with the usual Koszul sign
inline cech_cochain cup(const cech_cochain& a, const cech_cochain& b,
                        std::shared_ptr<const coefficient_complex> target,
                        const cup_pairing& pair) {
    if (a.nv_ptr() != b.nv_ptr() && a.nv().total_count() != b.nv().total_count())
        throw input_error("cup: factors live on different nerves");
    cech_cochain out(std::move(target), a.nv_ptr(), a.degree() + b.degree());
    out.for_each_position([&](int p, const simplex& s) {
        const slot_spec& spec = out.cx().slot(p);
        if (spec.kind != slot_kind::additive || spec.arity != 1)
            throw input_error("cup: target slot must be a single additive form");
        form acc;
        const int q = s.dimension();
        for (int qa = 0; qa <= q; ++qa) {
            const int qb = q - qa;
            const simplex front{std::vector<int>(s.idx.begin(), s.idx.begin() + qa + 1)};
            const simplex back{std::vector<int>(s.idx.begin() + qa, s.idx.end())};
            for (int pa = 0; pa <= p; ++pa) {
                const int pb = p - pa;
                if (pa > a.cx().length() || pb > b.cx().length()) continue;
                if (a.cech_degree(pa) != qa || b.cech_degree(pb) != qb) continue;
                if (a.cx().slot(pa).kind != slot_kind::additive ||
                    b.cx().slot(pb).kind != slot_kind::additive)
                    throw input_error("cup: factor slots must be additive");
                const cvalue av = a.at(pa, front);
                const cvalue bv = b.at(pb, back);
                const auto& xs = detail::forms_of(av);
                const auto& ys = detail::forms_of(bv);
                if (xs.size() != 1 || ys.size() != 1)
                    throw input_error("cup: factor slots must have arity one");
                form term = pair(pa, xs[0], pb, ys[0]);
                if ((qa * pb) % 2 != 0) term = -term;
                acc = acc + term;
            }
        }
        if (!acc.is_structurally_zero()) out.set(p, s, {std::vector<form>{acc}});
    });
    return out;
}

// multiply when the first fragment is integral; differentiate a top-degree
// second fragment against higher first fragments; nothing otherwise
inline cech_cochain deligne_cup(const cech_cochain& a, const cech_cochain& b,
                                std::shared_ptr<const coefficient_complex> target) {
    const int top_b = b.cx().length();
    const cup_pairing pair = [top_b](int pa, const form& x, int pb, const form& y) -> form {
        if (pa == 0) return wedge(x, y);
        if (pb == top_b) return wedge(x, d(y));
        return form{};
    };
    return cup(a, b, std::move(target), pair);
}

// variant pairing two function fragments into -pi_1(x) * pi_0(y)
inline cech_cochain hermitian_cup(const cech_cochain& a, const cech_cochain& b,
                                  std::shared_ptr<const coefficient_complex> target) {
    const cup_pairing pair = [](int pa, const form& x, int pb, const form& y) -> form {
        if (pa == 0) return wedge(x, y);
        if (pa == 1 && pb == 1) return -wedge(pi_p(x, 1), pi_p(y, 0));
        return form{};
    };
    return cup(a, b, std::move(target), pair);
}

// ---------------------------------------------------------------------------
// closure checking
// ---------------------------------------------------------------------------

struct component_residual {
    int p = 0;
    int q = 0;
    std::string worst_simplex;
    double max_abs = 0.0;
    bool exact = false;  // true when the entry vanishes identically
};

struct cocycle_report {
    int degree = 0;               // degree of the cochain that was checked
    int samples_per_simplex = 0;  // evaluation points used on every simplex
    double max_residual = 0.0;
    std::vector<component_residual> components;

    bool pass(double tol) const { return max_residual < tol; }
};

// evaluates D(c) on sampled points of every simplex of the nerve and
// reports the largest residual per (internal, Cech) bidegree
inline cocycle_report is_cocycle(const cech_cochain& c, const sector_cover& cover,
                                 int samples_per_simplex, std::uint64_t seed,
                                 const std::vector<std::complex<double>>& avoid = {}) {
    if (samples_per_simplex < 1) throw input_error("is_cocycle: need at least one sample");
    const cech_cochain dc = total_D(c);
    cocycle_report report;
    report.degree = c.degree();
    report.samples_per_simplex = samples_per_simplex;
    std::map<std::pair<int, int>, component_residual> comps;
    dc.for_each_position([&](int p, const simplex& s) {
        const slot_spec& spec = dc.cx().slot(p);
        auto& comp = comps[{p, s.dimension()}];
        comp.p = p;
        comp.q = s.dimension();
        const cvalue v = dc.at(p, s);
        if (detail::cv_is_zero(spec, v)) {
            if (comp.worst_simplex.empty()) comp.exact = true;
            return;
        }
        double local = 0.0;
        const auto pts = sample_points(cover, s, samples_per_simplex, seed, avoid);
        if (spec.kind == slot_kind::multiplicative) {
            const rational_function& g = detail::ratio_of(v);
            for (const auto& z : pts) local = std::max(local, std::abs(g.eval(z) - 1.0));
        } else {
            for (const form& f : detail::forms_of(v))
                for (const auto& z : pts)
                    for (const auto& val : f.eval(z)) local = std::max(local, std::abs(val));
        }
        if (local >= comp.max_abs) {
            comp.max_abs = local;
            comp.worst_simplex = to_string(s);
            comp.exact = false;
        }
    });
    for (auto& [pq, comp] : comps) {
        report.max_residual = std::max(report.max_residual, comp.max_abs);
        report.components.push_back(comp);
    }
    return report;
}

}  // namespace cechsym
