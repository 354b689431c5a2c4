#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "brp/io.hpp"
#include "brp/morphisms.hpp"
#include "brp/roughpath.hpp"

namespace brp {

// broken precondition inside the encoder (cocycle failure, bad level)
class ConversionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::pair<Forest, TensorElem>>& psi_images(int N, int d);

struct Certificate {
    bool checked = false;
    bool pass = true;
    long checked_pairs = 0;
    long checked_forests = 0;
    std::string witness;  // "h=..., s=..., t=..., <X,h>=..., <Xbar,psi(h)>=..."
    bool cocycle_checked = false;
    long cocycle_triples = 0;
    std::string note;
};

template <class S>
struct ConversionResult {
    int N = 1;
    int d = 1;
    SampledPath<S> extended_path;  // basis T_N, grade-1 components first
    GeometricRoughPath<S> geometric;
    Certificate certificate;
};

struct EncodeOptions {
    bool check_cocycle = true;
    bool certify = true;
    int threads = 1;
};

// extended basis at level n: all trees of grade <= n, by grade
std::vector<Tree> extended_basis(int n, int d);

// per-step increments of the components of grade n+1, given the level-n lift
template <class S>
std::map<Tree, std::vector<S>> extract_extended_path(const BranchedRoughPath<S>& X,
                                                     const GeometricRoughPath<S>& partial, int n,
                                                     bool check_cocycle = true, long* triples = nullptr,
                                                     int threads = 1) {
    auto fresh = trees_of_grade(n + 1, X.d);
    std::map<Tree, std::vector<S>> out;
    for (const auto& tau : fresh) {
        const TensorElem& img = psi_tree(tau);
        auto& v = out[tau];
        for (std::size_t k = 0; k < X.steps.size(); ++k)
            v.push_back(X.steps[k].at(Forest(tau)) - pair_exact(partial.steps[k], img));
    }
    if (!check_cocycle) return out;
    // value on every grid pair, then additivity on every triple
    auto xi = all_increments(X, threads);
    auto gi = all_increments(partial, threads);
    std::size_t m = X.times.size();
    long count = 0;
    for (const auto& tau : fresh) {
        const TensorElem& img = psi_tree(tau);
        std::vector<std::vector<S>> val(m, std::vector<S>(m, S(0)));
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = s + 1; t < m; ++t) val[s][t] = xi[s][t].at(Forest(tau)) - pair_exact(gi[s][t], img);
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t u = s + 1; u < m; ++u)
                for (std::size_t t = u + 1; t < m; ++t) {
                    ++count;
                    if (!near(val[s][t], S(val[s][u] + val[u][t])))
                        throw ConversionError("cocycle violation for " + print_tree(tau) + " at (s,u,t) = (" +
                                              std::to_string(s) + "," + std::to_string(u) + "," +
                                              std::to_string(t) + "): " + to_string(val[s][t]) + " vs " +
                                              to_string(S(val[s][u] + val[u][t])));
                }
    }
    if (triples) *triples += count;
    return out;
}

template <class S>
Certificate certify(const BranchedRoughPath<S>& X, const GeometricRoughPath<S>& Xbar, int threads = 1) {
    Certificate c;
    c.checked = true;
    const auto& images = psi_images(X.N, X.d);
    auto xi = all_increments(X, threads);
    auto gi = all_increments(Xbar, threads);
    std::size_t m = X.times.size();
    std::mutex mu;
    parallel_for(m, threads, [&](std::size_t s) {
        for (std::size_t t = s + 1; t < m; ++t)
            for (const auto& [h, img] : images) {
                S lhs = xi[s][t].at(h);
                S rhs = pair_exact(gi[s][t], img);
                if (!near(lhs, rhs)) {
                    std::lock_guard lk(mu);
                    if (c.pass) {
                        c.pass = false;
                        c.witness = "h=" + print_forest(h) + ", s=" + std::to_string(s) + ", t=" + std::to_string(t) +
                                    ", <X,h>=" + to_string(lhs) + ", <Xbar,psi(h)>=" + to_string(rhs);
                    }
                    return;
                }
            }
    });
    c.checked_pairs = static_cast<long>(m * (m - 1) / 2);
    c.checked_forests = static_cast<long>(images.size());
    return c;
}

template <class S>
ConversionResult<S> encode(const BranchedRoughPath<S>& X, const EncodeOptions& opt = {}) {
    if (X.N < 1) throw ConversionError("encode: level must be >= 1");
    if (X.steps.size() + 1 != X.times.size()) throw ConversionError("encode: one increment per grid interval needed");
    ConversionResult<S> R;
    R.N = X.N;
    R.d = X.d;
    auto& P = R.extended_path;
    P.times = X.times;
    P.values.assign(X.times.size(), {});
    auto append = [&](const Tree& tau, const std::vector<S>& steps) {
        P.basis.push_back(tau);
        S acc(0);
        P.values[0].push_back(acc);
        for (std::size_t k = 0; k < steps.size(); ++k) {
            acc += steps[k];
            P.values[k + 1].push_back(acc);
        }
    };
    for (int i = 1; i <= X.d; ++i) {
        std::vector<S> steps;
        for (const auto& st : X.steps) steps.push_back(st.at(Forest(Tree(i))));
        append(Tree(i), steps);
    }
    long triples = 0;
    for (int n = 1; n < X.N; ++n) {
        auto partial = canonical_lift(P, X.N);
        partial.d = X.d;
        auto fresh = extract_extended_path(X, partial, n, opt.check_cocycle, &triples, opt.threads);
        for (const auto& [tau, steps] : fresh) append(tau, steps);
    }
    R.geometric = canonical_lift(P, X.N);
    R.geometric.d = X.d;
    if (opt.certify) R.certificate = certify(X, R.geometric, opt.threads);
    R.certificate.cocycle_checked = opt.check_cocycle && X.N > 1;
    R.certificate.cocycle_triples = triples;
    Rational inv = 1 / X.gamma;
    if (inv.get_den() == 1)
        R.certificate.note = "1/gamma is an integer; the grid extension is built regardless";
    return R;
}

// Corollary-style extension: new leaf labels d1+1.. take the given components
template <class S>
BranchedRoughPath<S> extend_alphabet(const BranchedRoughPath<S>& X1, const SampledPath<S>& extra) {
    extra.check();
    if (extra.times != X1.times) throw std::invalid_argument("extend_alphabet: grid mismatch");
    for (const auto& b : extra.basis)
        if (!b.is_leaf()) throw std::invalid_argument("extend_alphabet: new components must be single-vertex");
    int d1 = X1.d;
    int d2 = d1 + static_cast<int>(extra.basis.size());
    BranchedRoughPath<S> X2;
    X2.N = X1.N;
    X2.gamma = X1.gamma;
    X2.d = d2;
    X2.times = X1.times;
    for (std::size_t k = 0; k < X1.steps.size(); ++k) {
        std::map<Tree, S> tv;
        for (const auto& t : enumerate_trees(X2.N, d2)) {
            if (t.max_label() <= d1)
                tv[t] = X1.steps[k].at(Forest(t));
            else if (t.is_leaf())
                tv[t] = extra.delta(k, t.root() - d1 - 1);
        }
        HBasic<S> h(d2);
        for (const auto& f : enumerate_forests(X2.N, d2)) {
            S v(1);
            for (const auto& t : f.trees()) {
                auto it = tv.find(t);
                if (it == tv.end()) {
                    v = S(0);
                    break;
                }
                v *= it->second;
            }
            h.add(f, v);
        }
        X2.steps.push_back(std::move(h));
    }
    return X2;
}

// modified level-2 driver over single-vertex letters plus the symmetric family
template <class S>
struct SimplifiedN2 {
    GeometricRoughPath<S> driver;
    std::vector<std::pair<int, int>> sym_index;  // (k,l), k <= l
    std::vector<std::vector<S>> sym_steps;       // per step, one value per index
};

template <class S>
SimplifiedN2<S> simplify_n2(const ConversionResult<S>& R) {
    if (R.N != 2) throw std::invalid_argument("simplify_n2: level must be 2");
    int d = R.d;
    SimplifiedN2<S> out;
    auto& D = out.driver;
    D.N = 2;
    D.n = 1;
    D.d = d;
    for (int i = 1; i <= d; ++i) D.letters.push_back(Tree(i));
    D.times = R.geometric.times;
    auto area = [](int j, int i) { return graft(Forest(Tree(j)), i); };
    for (int k = 1; k <= d; ++k)
        for (int l = k; l <= d; ++l) out.sym_index.emplace_back(k, l);
    for (const auto& st : R.geometric.steps) {
        TBasic<S> x = TBasic<S>::unit(d, 1);
        for (int i = 1; i <= d; ++i) x.add(Word(Tree(i)), st.at(Word(Tree(i))));
        for (int j = 1; j <= d; ++j)
            for (int i = 1; i <= d; ++i) {
                S anti = (st.at(Word(area(j, i))) - st.at(Word(area(i, j)))) / S(2);
                x.add(letters_word({j, i}), st.at(letters_word({j, i})) + anti);
            }
        D.steps.push_back(std::move(x));
        std::vector<S> q;
        for (auto [k, l] : out.sym_index) q.push_back(-(st.at(Word(area(l, k))) + st.at(Word(area(k, l)))));
        out.sym_steps.push_back(std::move(q));
    }
    return out;
}

json certificate_json(const Certificate& c);

template <class S>
json to_json(const ConversionResult<S>& R) {
    json j;
    j["kind"] = "conversion";
    j["level"] = R.N;
    j["d"] = R.d;
    j["extended_path"] = path_to_csv(R.extended_path);
    j["geometric"] = to_json(R.geometric);
    json psi = json::object();
    for (const auto& t : enumerate_trees(R.N, R.d)) psi[print_tree(t)] = print_tensor(psi_tree(t));
    j["psi"] = psi;
    j["certificate"] = certificate_json(R.certificate);
    return j;
}

}  // namespace brp
