#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brp/rational.hpp"
#include "brp/trees.hpp"

namespace brp {

// Linear combination of forests. Also used for functionals on H via the
// Kronecker pairing <f, h> = coefficient of h in f.
template <class S>
struct HBasic {
    int d = 0;
    std::map<Forest, S> terms;

    HBasic() = default;
    explicit HBasic(int d_) : d(d_) {}
    HBasic(const Forest& f, S c, int d_ = 0) : d(d_) { add(f, c); }

    static HBasic unit(int d_ = 0) { return HBasic(Forest{}, S(1), d_); }
    static HBasic of(const Tree& t, int d_ = 0) { return HBasic(Forest(t), S(1), d_); }

    void add(const Forest& f, const S& c) {
        if (is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace(f, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }
    S at(const Forest& f) const {
        auto it = terms.find(f);
        return it == terms.end() ? S(0) : it->second;
    }
    bool empty() const { return terms.empty(); }
    int max_grade() const {
        int g = -1;
        for (const auto& [f, c] : terms) g = std::max(g, f.grade());
        return g;
    }
    int max_label() const {
        int m = 0;
        for (const auto& [f, c] : terms) m = std::max(m, f.max_label());
        return m;
    }
    int context() const { return d > 0 ? d : std::max(1, max_label()); }

    HBasic& operator+=(const HBasic& o) {
        for (const auto& [f, c] : o.terms) add(f, c);
        if (!d) d = o.d;
        return *this;
    }
    HBasic& operator-=(const HBasic& o) {
        for (const auto& [f, c] : o.terms) add(f, -c);
        if (!d) d = o.d;
        return *this;
    }
    HBasic& operator*=(const S& s) {
        if (is_zero(s)) {
            terms.clear();
            return *this;
        }
        for (auto& [f, c] : terms) c *= s;
        return *this;
    }
    friend HBasic operator+(HBasic a, const HBasic& b) { return a += b; }
    friend HBasic operator-(HBasic a, const HBasic& b) { return a -= b; }
    friend HBasic operator*(const S& s, HBasic a) { return a *= s; }
    friend bool operator==(const HBasic& a, const HBasic& b) { return a.terms == b.terms; }

    HBasic truncated(int N) const {
        HBasic r(d);
        for (const auto& [f, c] : terms)
            if (f.grade() <= N) r.terms.emplace(f, c);
        return r;
    }
};

using HElem = HBasic<Rational>;
using HElemF = HBasic<double>;

inline HElemF to_float(const HElem& x) {
    HElemF r(x.d);
    for (const auto& [f, c] : x.terms) r.add(f, c.get_d());
    return r;
}

struct PairElem {
    int d = 0;
    std::map<std::pair<Forest, Forest>, Rational> terms;
    void add(const Forest& a, const Forest& b, const Rational& c);
    friend bool operator==(const PairElem& a, const PairElem& b) { return a.terms == b.terms; }
};

struct CopTerm {
    Forest left;   // pruned part
    Forest right;  // trunk, or unit
    long c;
};

int merge_context(int a, int b);

// Sweedler terms of the Connes-Kreimer coproduct of a single forest (memoized)
const std::vector<CopTerm>& coproduct_terms(const Forest& h);
// antipode of a single forest (memoized)
const HElem& antipode_of(const Forest& h);

HElem product(const HElem& x, const HElem& y);
PairElem coproduct(const HElem& x);
PairElem reduced_coproduct(const HElem& x);
HElem antipode(const HElem& x);
// sum over vertices v of t2 of the tree got by attaching t1 below v
HElem graft_product(const Tree& t1, const Tree& t2, int d = 0);

template <class S>
S pair(const HBasic<S>& f, const HBasic<S>& h) {
    merge_context(f.d, h.d);
    S r(0);
    const auto& small = f.terms.size() < h.terms.size() ? f : h;
    const auto& big = f.terms.size() < h.terms.size() ? h : f;
    for (const auto& [k, c] : small.terms) {
        auto it = big.terms.find(k);
        if (it != big.terms.end()) r += c * it->second;
    }
    return r;
}

// <f * g, h> = <f (x) g, Delta h> for every forest h of grade <= N
template <class S>
HBasic<S> convolve(const HBasic<S>& f, const HBasic<S>& g, int N) {
    if (N < 0) throw std::invalid_argument("convolve: N < 0");
    int d = (f.d && g.d) ? merge_context(f.d, g.d) : std::max(f.context(), g.context());
    HBasic<S> r(merge_context(f.d, g.d));
    if (f.empty() || g.empty()) return r;
    int top = std::min(N, f.max_grade() + g.max_grade());
    for (const auto& h : enumerate_forests(top, d)) {
        S v(0);
        bool hit = false;
        for (const auto& t : coproduct_terms(h)) {
            auto a = f.terms.find(t.left);
            if (a == f.terms.end()) continue;
            auto b = g.terms.find(t.right);
            if (b == g.terms.end()) continue;
            v += S(t.c) * a->second * b->second;
            hit = true;
        }
        if (hit) r.add(h, v);
    }
    return r;
}

template <class S>
HBasic<S> lie_bracket(const HBasic<S>& f, const HBasic<S>& g, int N) {
    return convolve(f, g, N) - convolve(g, f, N);
}

template <class S>
HBasic<S> exp_star(const HBasic<S>& h, int N) {
    if (!is_zero(h.at(Forest{}))) throw std::invalid_argument("exp_star: nonzero unit coefficient");
    HBasic<S> result = HBasic<S>::unit(h.d);
    HBasic<S> power = HBasic<S>::unit(h.d);
    for (int k = 1; k <= N; ++k) {
        power = convolve(power, h, N);
        if (power.empty()) break;
        HBasic<S> term = power;
        term *= S(1) / from_rational<S>(factorial(k));
        result += term;
    }
    return result;
}

template <class S>
HBasic<S> log_star(const HBasic<S>& g, int N) {
    if (g.at(Forest{}) != S(1)) throw std::invalid_argument("log_star: unit coefficient must be 1");
    HBasic<S> x = g - HBasic<S>::unit(g.d);
    HBasic<S> result(g.d);
    HBasic<S> power = HBasic<S>::unit(g.d);
    for (int k = 1; k <= N; ++k) {
        power = convolve(power, x, N);
        if (power.empty()) break;
        HBasic<S> term = power;
        term *= from_rational<S>(Rational(k % 2 ? 1 : -1, k));
        result += term;
    }
    return result;
}

// first forest violating the character property, if any
template <class S>
std::optional<Forest> group_like_witness(const HBasic<S>& g, int N) {
    if (!near(g.at(Forest{}), S(1))) return Forest{};
    for (const auto& h : enumerate_forests(N, g.context())) {
        if (h.size() < 2) continue;
        S prod(1);
        for (const auto& t : h.trees()) prod *= g.at(Forest(t));
        if (!near(g.at(h), prod)) return h;
    }
    // support outside the enumerated range cannot be checked against products
    return std::nullopt;
}

template <class S>
bool is_group_like(const HBasic<S>& g, int N) {
    return !group_like_witness(g, N).has_value();
}

template <class S>
bool is_primitive(const HBasic<S>& h, int N) {
    for (const auto& [f, c] : h.terms)
        if (!f.is_tree() && f.grade() <= N) return false;
    // derivation form: <h, h1 h2> = eps(h1)<h,h2> + <h,h1>eps(h2)
    for (const auto& f : enumerate_forests(N, h.context())) {
        if (f.size() < 2) continue;
        if (!is_zero(h.at(f))) return false;
    }
    return true;
}

HElem star_inverse(const HElem& g, int N);
HElemF star_inverse(const HElemF& g, int N);
double homogeneous_norm(const HElem& g, int N);

}  // namespace brp
