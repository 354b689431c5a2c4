#include "brp/hopf.hpp"

#include <cmath>
#include <mutex>

namespace brp {

int merge_context(int a, int b) {
    if (a && b && a != b) throw std::invalid_argument("alphabet size mismatch");
    return a ? a : b;
}

void PairElem::add(const Forest& a, const Forest& b, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms.try_emplace({a, b}, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second)) terms.erase(it);
    }
}

namespace {

using TermMap = std::map<std::pair<Forest, Forest>, long>;

std::vector<CopTerm> flatten(const TermMap& m) {
    std::vector<CopTerm> out;
    out.reserve(m.size());
    for (const auto& [k, c] : m)
        if (c) out.push_back({k.first, k.second, c});
    return out;
}

// pairwise product of two Sweedler expansions
std::vector<CopTerm> multiply(const std::vector<CopTerm>& a, const std::vector<CopTerm>& b) {
    TermMap m;
    for (const auto& x : a)
        for (const auto& y : b) m[{x.left * y.left, x.right * y.right}] += x.c * y.c;
    return flatten(m);
}

std::vector<CopTerm> tree_coproduct(const Tree& t) {
    // partial products over the children: left forest, right forest (multiset of trunks)
    std::vector<CopTerm> acc{{Forest{}, Forest{}, 1}};
    for (const auto& child : t.children()) acc = multiply(acc, coproduct_terms(Forest(child)));
    TermMap m;
    m[{Forest(t), Forest{}}] += 1;
    for (const auto& x : acc) m[{x.left, Forest(graft(x.right, t.root()))}] += x.c;
    return flatten(m);
}

struct HopfCache {
    std::mutex mu;
    std::map<Forest, std::vector<CopTerm>> cop;
    std::map<Forest, HElem> anti;
};

HopfCache& hcache() {
    static HopfCache c;
    return c;
}

}  // namespace

const std::vector<CopTerm>& coproduct_terms(const Forest& h) {
    auto& c = hcache();
    {
        std::lock_guard lk(c.mu);
        auto it = c.cop.find(h);
        if (it != c.cop.end()) return it->second;
    }
    std::vector<CopTerm> terms;
    if (h.is_unit()) {
        terms.push_back({Forest{}, Forest{}, 1});
    } else if (h.is_tree()) {
        terms = tree_coproduct(h.tree());
    } else {
        terms = coproduct_terms(Forest(h.trees().front()));
        for (std::size_t k = 1; k < h.size(); ++k)
            terms = multiply(terms, coproduct_terms(Forest(h.trees()[k])));
    }
    std::lock_guard lk(c.mu);
    return c.cop.emplace(h, std::move(terms)).first->second;
}

const HElem& antipode_of(const Forest& h) {
    auto& c = hcache();
    {
        std::lock_guard lk(c.mu);
        auto it = c.anti.find(h);
        if (it != c.anti.end()) return it->second;
    }
    HElem s;
    if (h.is_unit()) {
        s = HElem::unit();
    } else if (h.is_tree()) {
        s.add(h, Rational(-1));
        for (const auto& t : coproduct_terms(h)) {
            if (t.left.is_unit() || t.right.is_unit()) continue;
            HElem part = product(antipode_of(t.left), HElem(t.right, Rational(1)));
            part *= Rational(-t.c);
            s += part;
        }
    } else {
        s = HElem::unit();
        for (const auto& t : h.trees()) s = product(s, antipode_of(Forest(t)));
    }
    std::lock_guard lk(c.mu);
    return c.anti.emplace(h, std::move(s)).first->second;
}

HElem product(const HElem& x, const HElem& y) {
    HElem r(merge_context(x.d, y.d));
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) r.add(a * b, ca * cb);
    return r;
}

PairElem coproduct(const HElem& x) {
    PairElem r;
    r.d = x.d;
    for (const auto& [f, c] : x.terms)
        for (const auto& t : coproduct_terms(f)) r.add(t.left, t.right, c * t.c);
    return r;
}

PairElem reduced_coproduct(const HElem& x) {
    PairElem r = coproduct(x);
    for (const auto& [f, c] : x.terms) {
        r.add(Forest{}, f, -c);
        r.add(f, Forest{}, -c);
    }
    return r;
}

HElem antipode(const HElem& x) {
    HElem r(x.d);
    for (const auto& [f, c] : x.terms) {
        HElem s = antipode_of(f);
        s *= c;
        r += s;
    }
    return r;
}

namespace {
std::vector<Tree> attach_everywhere(const Tree& branch, const Tree& host) {
    std::vector<Tree> out;
    std::vector<Tree> kids = host.children();
    kids.push_back(branch);
    out.push_back(graft(Forest(kids), host.root()));
    const auto& ch = host.children();
    for (std::size_t i = 0; i < ch.size(); ++i) {
        for (const auto& sub : attach_everywhere(branch, ch[i])) {
            std::vector<Tree> k2 = ch;
            k2[i] = sub;
            out.push_back(graft(Forest(k2), host.root()));
        }
    }
    return out;
}
}  // namespace

HElem graft_product(const Tree& t1, const Tree& t2, int d) {
    HElem r(d);
    for (const auto& t : attach_everywhere(t1, t2)) r.add(Forest(t), Rational(1));
    return r;
}

namespace {
template <class S>
HBasic<S> inverse_impl(const HBasic<S>& g, int N) {
    if (!is_group_like(g, N)) throw std::invalid_argument("star_inverse: argument is not group-like");
    HBasic<S> r(g.d);
    for (const auto& h : enumerate_forests(N, g.context())) {
        S v(0);
        for (const auto& [f, c] : antipode_of(h).terms) v += from_rational<S>(c) * g.at(f);
        r.add(h, v);
    }
    return r;
}
}  // namespace

HElem star_inverse(const HElem& g, int N) { return inverse_impl(g, N); }
HElemF star_inverse(const HElemF& g, int N) { return inverse_impl(g, N); }

double homogeneous_norm(const HElem& g, int N) {
    if (!is_group_like(g, N)) throw std::invalid_argument("homogeneous_norm: argument is not group-like");
    double s = 0;
    for (const auto& [f, c] : log_star(g, N).terms)
        if (f.is_tree() && f.grade() <= N) s += std::pow(std::abs(c.get_d()), 1.0 / f.grade());
    return s;
}

}  // namespace brp
