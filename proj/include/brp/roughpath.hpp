#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brp/expr.hpp"
#include "brp/hopf.hpp"
#include "brp/morphisms.hpp"
#include "brp/parallel.hpp"
#include "brp/tensor.hpp"

namespace brp {

int gamma_to_level(const Rational& gamma);

// Values of a path on a grid; basis elements are single-vertex trees (labels)
// or general trees for extended paths.
template <class S>
struct SampledPath {
    std::vector<S> times;
    std::vector<Tree> basis;
    std::vector<std::vector<S>> values;  // one row per time

    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
    void check() const {
        if (times.size() < 2) throw std::invalid_argument("fewer than 2 grid points");
        for (std::size_t k = 1; k < times.size(); ++k)
            if (!(times[k - 1] < times[k])) throw std::invalid_argument("grid times must be strictly increasing");
        if (values.size() != times.size()) throw std::invalid_argument("one value row per grid time required");
        for (const auto& row : values)
            if (row.size() != basis.size()) throw std::invalid_argument("value row has the wrong dimension");
    }
    S delta(std::size_t k, std::size_t comp) const { return values[k + 1][comp] - values[k][comp]; }
    int alphabet() const {
        int d = 0;
        for (const auto& t : basis) d = std::max(d, t.max_label());
        return d;
    }
    bool over_labels() const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!basis[i].is_leaf() || basis[i].root() != static_cast<int>(i) + 1) return false;
        return true;
    }
};

enum class LiftKind { none, canonical, ito };

template <class S>
struct BranchedRoughPath {
    int N = 1;
    Rational gamma{1, 2};
    int d = 1;
    std::vector<S> times;
    std::vector<HBasic<S>> steps;
    // constructor provenance, used by validation to recompute increments directly
    LiftKind kind = LiftKind::none;
    std::shared_ptr<const SampledPath<S>> source;

    std::size_t size() const { return steps.size(); }
    HBasic<S> increment(std::size_t s, std::size_t t) const {
        if (t >= times.size() || s > t) throw std::out_of_range("increment: bad grid indices");
        HBasic<S> r = HBasic<S>::unit(d);
        for (std::size_t k = s; k < t; ++k) r = convolve(r, steps[k], N);
        return r;
    }
};

template <class S>
struct GeometricRoughPath {
    int N = 1;
    int n = 1;  // letter-grade bound
    int d = 1;
    std::vector<Tree> letters;
    std::vector<S> times;
    std::vector<TBasic<S>> steps;

    TBasic<S> increment(std::size_t s, std::size_t t) const {
        if (t >= times.size() || s > t) throw std::out_of_range("increment: bad grid indices");
        TBasic<S> r = TBasic<S>::unit(d, n);
        for (std::size_t k = s; k < t; ++k) r = concat(r, steps[k], N);
        return r;
    }
};

// X[s][t] for all s <= t
template <class P>
auto all_increments(const P& X, int threads = 1) {
    using Elem = decltype(X.increment(0, 0));
    std::size_t n = X.times.size();
    std::vector<std::vector<Elem>> out(n);
    parallel_for(n, threads, [&](std::size_t s) {
        out[s].resize(n);
        out[s][s] = Elem::unit(X.d);
        if constexpr (std::is_same_v<Elem, TBasic<Rational>> || std::is_same_v<Elem, TBasic<double>>)
            out[s][s].n = X.n;
        for (std::size_t t = s + 1; t < n; ++t) {
            if constexpr (requires { convolve(out[s][t - 1], X.steps[t - 1], X.N); })
                out[s][t] = convolve(out[s][t - 1], X.steps[t - 1], X.N);
            else
                out[s][t] = concat(out[s][t - 1], X.steps[t - 1], X.N);
        }
    });
    return out;
}

// ---- lifts

template <class S>
GeometricRoughPath<S> canonical_lift(const SampledPath<S>& path, int N) {
    path.check();
    if (N < 1) throw std::invalid_argument("canonical_lift: N >= 1 required");
    GeometricRoughPath<S> X;
    X.N = N;
    X.d = std::max(1, path.alphabet());
    X.n = 1;
    for (const auto& t : path.basis) X.n = std::max(X.n, t.grade());
    X.letters = path.basis;
    X.times = path.times;
    for (std::size_t k = 0; k < path.steps(); ++k) {
        TBasic<S> x(X.d, X.n);
        for (std::size_t c = 0; c < path.basis.size(); ++c)
            if (path.basis[c].grade() <= N) x.add(Word(path.basis[c]), path.delta(k, c));
        X.steps.push_back(tensor_exp(x, N));
    }
    return X;
}

template <class S>
const std::vector<std::pair<Forest, TensorElem>>& phi_g_images(int N, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::pair<Forest, TensorElem>>> cache;
    std::lock_guard lk(mu);
    auto it = cache.find({N, d});
    if (it == cache.end()) {
        std::vector<std::pair<Forest, TensorElem>> v;
        for (const auto& h : enumerate_forests(N, d)) v.emplace_back(h, phi_g(HElem(h, Rational(1), d)));
        it = cache.emplace(std::pair{N, d}, std::move(v)).first;
    }
    return it->second;
}

template <class S>
HBasic<S> embed_functional(const TBasic<S>& g, int N, int d) {
    HBasic<S> r(d);
    for (const auto& [h, img] : phi_g_images<S>(N, d)) r.add(h, pair_exact(g, img));
    return r;
}

template <class S>
BranchedRoughPath<S> embed_geometric(const GeometricRoughPath<S>& Xbar, const Rational& gamma) {
    for (const auto& l : Xbar.letters)
        if (!l.is_leaf()) throw std::invalid_argument("embed_geometric: letters must be single-vertex trees");
    BranchedRoughPath<S> X;
    X.N = Xbar.N;
    X.gamma = gamma;
    X.d = Xbar.d;
    X.times = Xbar.times;
    for (const auto& st : Xbar.steps) X.steps.push_back(embed_functional(st, X.N, X.d));
    return X;
}

template <class S>
BranchedRoughPath<S> canonical_branched(const SampledPath<S>& path, int N, const Rational& gamma) {
    if (!path.over_labels()) throw std::invalid_argument("canonical lift needs a path over labels 1..d");
    auto X = embed_geometric(canonical_lift(path, N), gamma);
    X.kind = LiftKind::canonical;
    X.source = std::make_shared<SampledPath<S>>(path);
    return X;
}

// step increments of the left-point lift: b_i -> dX^i, larger trees 0, forests multiply
template <class S>
HBasic<S> ito_step(const SampledPath<S>& path, std::size_t k, int N, int d) {
    HBasic<S> r(d);
    for (const auto& h : enumerate_forests(N, d)) {
        S v(1);
        bool leaves = true;
        for (const auto& t : h.trees()) {
            if (!t.is_leaf()) {
                leaves = false;
                break;
            }
            v *= path.delta(k, t.root() - 1);
        }
        if (leaves) r.add(h, v);
    }
    return r;
}

template <class S>
BranchedRoughPath<S> ito_lift(const SampledPath<S>& path, int N, const Rational& gamma) {
    path.check();
    if (!path.over_labels()) throw std::invalid_argument("ito_lift needs a path over labels 1..d");
    BranchedRoughPath<S> X;
    X.N = N;
    X.gamma = gamma;
    X.d = std::max(1, path.alphabet());
    X.times = path.times;
    for (std::size_t k = 0; k < path.steps(); ++k) X.steps.push_back(ito_step(path, k, N, X.d));
    X.kind = LiftKind::ito;
    X.source = std::make_shared<SampledPath<S>>(path);
    return X;
}

// left-point sums over [s,t] evaluated without the convolution product
template <class S>
HBasic<S> ito_direct(const SampledPath<S>& path, std::size_t s, std::size_t t, int N, int d) {
    const auto& trees = enumerate_trees(N, d);
    std::map<Tree, S> val;
    for (const auto& tr : trees) val[tr] = S(0);
    for (std::size_t k = s; k < t; ++k) {
        std::map<Tree, S> next = val;
        for (const auto& tr : trees) {
            S p = path.delta(k, tr.root() - 1);
            for (const auto& c : tr.children()) p *= val[c];
            next[tr] += p;
        }
        val = std::move(next);
    }
    HBasic<S> r(d);
    for (const auto& h : enumerate_forests(N, d)) {
        S v(1);
        for (const auto& tr : h.trees()) v *= val[tr];
        r.add(h, v);
    }
    return r;
}

template <class S>
HBasic<S> direct_increment(const BranchedRoughPath<S>& X, std::size_t s, std::size_t t) {
    if (X.kind == LiftKind::ito && X.source) return ito_direct(*X.source, s, t, X.N, X.d);
    if (X.kind == LiftKind::canonical && X.source) {
        auto G = canonical_lift(*X.source, X.N);
        return embed_functional(G.increment(s, t), X.N, X.d);
    }
    return X.increment(s, t);
}

// ---- validation

struct ValidationReport {
    bool character = true;
    bool chen = true;
    std::string character_witness;
    std::string chen_witness;
    long steps_checked = 0;
    long triples_checked = 0;
    std::vector<std::pair<std::string, double>> holder;  // per tree: max |<X_st,tau>| / |t-s|^(gamma |tau|)
    bool ok() const { return character && chen; }
};

template <class S>
std::string scalar_text(const S& v) {
    return to_string(v);
}

template <class S>
ValidationReport validate(const BranchedRoughPath<S>& X, int threads = 1) {
    ValidationReport rep;
    for (std::size_t k = 0; k < X.steps.size(); ++k) {
        ++rep.steps_checked;
        if (auto w = group_like_witness(X.steps[k], X.N)) {
            rep.character = false;
            rep.character_witness = "step " + std::to_string(k) + " forest " + print_forest(*w);
            break;
        }
    }
    auto inc = all_increments(X, threads);
    std::size_t n = X.times.size();
    std::vector<std::vector<HBasic<S>>> direct(n, std::vector<HBasic<S>>(n));
    bool has_source = X.kind != LiftKind::none && X.source;
    parallel_for(n, threads, [&](std::size_t s) {
        for (std::size_t t = s + 1; t < n; ++t) direct[s][t] = has_source ? direct_increment(X, s, t) : inc[s][t];
    });
    std::mutex mu;
    std::atomic<long> triples{0};
    auto compare = [&](const HBasic<S>& comp, const HBasic<S>& ref, std::size_t s, std::size_t u, std::size_t t) {
        for (const auto& h : enumerate_forests(X.N, X.d))
            if (!near(comp.at(h), ref.at(h))) {
                std::lock_guard lk(mu);
                if (rep.chen) {
                    rep.chen = false;
                    rep.chen_witness = "(s,u,t) = (" + std::to_string(s) + "," + std::to_string(u) + "," +
                                       std::to_string(t) + ") forest " + print_forest(h) + ": " +
                                       scalar_text(comp.at(h)) + " vs " + scalar_text(ref.at(h));
                }
                return;
            }
    };
    parallel_for(n, threads, [&](std::size_t s) {
        for (std::size_t t = s + 1; t < n; ++t) {
            if (has_source) compare(inc[s][t], direct[s][t], s, s, t);
            for (std::size_t u = s + 1; u < t; ++u) {
                ++triples;
                compare(convolve(inc[s][u], inc[u][t], X.N), direct[s][t], s, u, t);
            }
        }
    });
    rep.triples_checked = triples;
    double g = to_double(X.gamma);
    for (const auto& tr : enumerate_trees(X.N, X.d)) {
        double best = 0;
        Forest f(tr);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = s + 1; t < n; ++t) {
                double dt = to_double(S(X.times[t] - X.times[s]));
                best = std::max(best, std::abs(to_double(inc[s][t].at(f))) / std::pow(dt, g * tr.grade()));
            }
        rep.holder.emplace_back(print_tree(tr), best);
    }
    return rep;
}

template <class S>
ValidationReport validate(const GeometricRoughPath<S>& X, int threads = 1) {
    ValidationReport rep;
    for (std::size_t k = 0; k < X.steps.size(); ++k) {
        ++rep.steps_checked;
        if (auto w = tensor_group_like_witness(X.steps[k], X.N)) {
            rep.character = false;
            rep.character_witness = "step " + std::to_string(k) + " words " + print_word(w->first) + " , " +
                                    print_word(w->second);
            break;
        }
    }
    auto inc = all_increments(X, threads);
    std::size_t n = X.times.size();
    std::mutex mu;
    std::atomic<long> triples{0};
    parallel_for(n, threads, [&](std::size_t s) {
        for (std::size_t u = s + 1; u < n; ++u)
            for (std::size_t t = u + 1; t < n; ++t) {
                ++triples;
                auto comp = concat(inc[s][u], inc[u][t], X.N);
                if (!(comp == inc[s][t])) {
                    bool differs = false;
                    for (const auto& [w, c] : comp.terms)
                        if (!near(c, inc[s][t].at(w))) differs = true;
                    for (const auto& [w, c] : inc[s][t].terms)
                        if (!near(c, comp.at(w))) differs = true;
                    if (!differs) continue;
                    std::lock_guard lk(mu);
                    if (rep.chen) {
                        rep.chen = false;
                        rep.chen_witness = "(s,u,t) = (" + std::to_string(s) + "," + std::to_string(u) + "," +
                                           std::to_string(t) + ")";
                    }
                }
            }
    });
    rep.triples_checked = triples;
    for (const auto& l : X.letters) {
        double best = 0;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = s + 1; t < n; ++t) {
                double dt = to_double(S(X.times[t] - X.times[s]));
                // regularity 1/N per unit of grade
                best = std::max(best, std::abs(to_double(inc[s][t].at(Word(l)))) /
                                          std::pow(dt, static_cast<double>(l.grade()) / X.N));
            }
        rep.holder.emplace_back(print_tree(l), best);
    }
    return rep;
}

// ---- geometricity test <X,h> = <X, iota phi_g(h)>

template <class S>
struct ShuffleDefect {
    std::size_t s, t;
    Forest h;
    S value, expected;
};

template <class S>
std::vector<ShuffleDefect<S>> shuffle_defects(const BranchedRoughPath<S>& X, bool all_pairs = false,
                                             int threads = 1) {
    std::vector<std::pair<Forest, HElem>> targets;
    for (const auto& [h, img] : phi_g_images<S>(X.N, X.d)) targets.emplace_back(h, chain_embedding(img));
    std::vector<ShuffleDefect<S>> out;
    auto check = [&](std::size_t s, std::size_t t, const HBasic<S>& inc) {
        for (const auto& [h, chains] : targets) {
            S rhs(0);
            for (const auto& [f, c] : chains.terms) rhs += from_rational<S>(c) * inc.at(f);
            if (!near(inc.at(h), rhs)) out.push_back({s, t, h, inc.at(h), rhs});
        }
    };
    if (!all_pairs) {
        for (std::size_t k = 0; k < X.steps.size(); ++k) check(k, k + 1, X.steps[k]);
    } else {
        auto inc = all_increments(X, threads);
        for (std::size_t s = 0; s < X.times.size(); ++s)
            for (std::size_t t = s + 1; t < X.times.size(); ++t) check(s, t, inc[s][t]);
    }
    return out;
}

}  // namespace brp
