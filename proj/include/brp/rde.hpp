#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brp/conversion.hpp"
#include "brp/poly.hpp"
#include "brp/roughpath.hpp"

namespace brp {

// f_tau for every tree, from base fields f_1..f_d.
// Repeated children are divided by their multiplicity factorials, so that
// sum_tau f_tau <X,tau> is the Taylor expansion of the flow.
class ButcherTable {
public:
    explicit ButcherTable(std::vector<PolyVectorField> base);
    ButcherTable(const ButcherTable& o);

    int labels() const { return static_cast<int>(base_.size()); }
    int dim() const { return e_; }
    const PolyVectorField& base(int label) const;
    PolyVectorField tree(const Tree& t) const;
    // <h,1> Id + sum_tau <h,tau> f_tau
    PolyVectorField of(const HElem& h) const;

    void corrupt(const Tree& t, PolyVectorField value);

private:
    int e_ = 0;
    std::vector<PolyVectorField> base_;
    mutable std::mutex mu_;
    mutable std::map<Tree, PolyVectorField> cache_;
};

inline PolyVectorField butcher(const ButcherTable& f, const Tree& t) { return f.tree(t); }
inline PolyVectorField butcher_h(const ButcherTable& f, const HElem& h) { return f.of(h); }

// F_{w1 w2 ... wn} = (F_{w1} . D) F_{w2 ... wn}, F_{letter} given
class WordFields {
public:
    WordFields() = default;
    explicit WordFields(std::map<Tree, PolyVectorField> letters);
    WordFields(const WordFields& o);

    int dim() const { return e_; }
    bool has_letter(const Tree& t) const { return letters_.count(t) > 0; }
    const std::map<Tree, PolyVectorField>& letters() const { return letters_; }
    PolyVectorField word(const Word& w) const;

private:
    int e_ = 0;
    std::map<Tree, PolyVectorField> letters_;
    mutable std::mutex mu_;
    mutable std::map<Word, PolyVectorField> cache_;
};

inline PolyVectorField geometric_F(const WordFields& F, const Word& w) { return F.word(w); }

// letter tau -> f_tau over the extended basis
template <class S>
WordFields convert_rde(const ButcherTable& f, const ConversionResult<S>& R) {
    if (f.labels() < R.d) throw std::invalid_argument("convert_rde: fewer fields than labels");
    std::map<Tree, PolyVectorField> m;
    for (const auto& t : R.extended_path.basis) m.emplace(t, f.tree(t));
    return WordFields(std::move(m));
}

struct LglReport {
    bool pass = true;
    std::string witness;
};

// D f_h . f_lambda == f_{lambda * h}
LglReport check_lgl(const ButcherTable& f, const Tree& lambda, const HElem& h, int N);
// D^2 f_h : (f_l1, f_l2) == sigma(l1 l2) f_{(l1 l2) * h}
LglReport check_lgl2(const ButcherTable& f, const Tree& l1, const Tree& l2, const HElem& h, int N);

// ---- trajectories

template <class S>
struct Trajectory {
    std::vector<S> times;
    std::vector<std::vector<S>> Y;
    // optional per-step contributions keyed by tree or word text
    std::vector<std::map<std::string, std::vector<S>>> breakdown;

    std::vector<S> step(std::size_t k) const {
        std::vector<S> r(Y[k].size());
        for (std::size_t a = 0; a < r.size(); ++a) r[a] = Y[k + 1][a] - Y[k][a];
        return r;
    }
};

template <class S>
std::vector<S> eval_field(const PolyVectorField& F, const std::vector<S>& y) {
    return F.eval(y);
}

template <class S>
Trajectory<S> solve_branched(const BranchedRoughPath<S>& X, const ButcherTable& f, const std::vector<S>& xi,
                             bool breakdown = false) {
    if (static_cast<int>(xi.size()) != f.dim()) throw std::invalid_argument("solve_branched: xi has the wrong dimension");
    if (f.labels() < X.d) throw std::invalid_argument("solve_branched: fewer fields than driver labels");
    const auto& trees = enumerate_trees(X.N, X.d);
    std::vector<PolyVectorField> ft;
    for (const auto& t : trees) ft.push_back(f.tree(t));
    Trajectory<S> T;
    T.times = X.times;
    T.Y.push_back(xi);
    for (const auto& st : X.steps) {
        std::vector<S> y = T.Y.back();
        std::map<std::string, std::vector<S>> parts;
        for (std::size_t k = 0; k < trees.size(); ++k) {
            S c = st.at(Forest(trees[k]));
            if (is_zero(c) || ft[k].is_zero()) continue;
            auto v = ft[k].eval(T.Y.back());
            for (auto& a : v) a *= c;
            for (std::size_t a = 0; a < y.size(); ++a) y[a] += v[a];
            if (breakdown) parts[print_tree(trees[k])] = v;
        }
        T.Y.push_back(std::move(y));
        if (breakdown) T.breakdown.push_back(std::move(parts));
    }
    return T;
}

// all words of the step with grade <= N
template <class S>
Trajectory<S> solve_geometric(const GeometricRoughPath<S>& Xbar, const WordFields& F, const std::vector<S>& xi,
                              bool breakdown = false) {
    if (static_cast<int>(xi.size()) != F.dim()) throw std::invalid_argument("solve_geometric: xi has the wrong dimension");
    for (const auto& l : Xbar.letters)
        if (!F.has_letter(l)) throw std::invalid_argument("solve_geometric: no field for letter " + print_tree(l));
    Trajectory<S> T;
    T.times = Xbar.times;
    T.Y.push_back(xi);
    for (const auto& st : Xbar.steps) {
        std::vector<S> y = T.Y.back();
        std::map<std::string, std::vector<S>> parts;
        for (const auto& [w, c] : st.terms) {
            if (w.empty() || w.grade() > Xbar.N) continue;
            auto v = F.word(w).eval(T.Y.back());
            for (auto& a : v) a *= c;
            for (std::size_t a = 0; a < y.size(); ++a) y[a] += v[a];
            if (breakdown) parts[print_word(w)] = v;
        }
        T.Y.push_back(std::move(y));
        if (breakdown) T.breakdown.push_back(std::move(parts));
    }
    return T;
}

// Y += sum f_i Xhat^i + sum (f_j . D f_i) Xhat^{ji} + sum_{k<=l} c_kl Q_kl
// with c_kl = -(f_{[l]k} + f_{[k]l})/2 for k<l and c_kk = -f_{[k]k}/2
template <class S>
Trajectory<S> solve_simplified_n2(const SimplifiedN2<S>& D, const ButcherTable& f, const std::vector<S>& xi) {
    if (static_cast<int>(xi.size()) != f.dim()) throw std::invalid_argument("solve_simplified_n2: xi has the wrong dimension");
    int d = D.driver.d;
    if (f.labels() < d) throw std::invalid_argument("solve_simplified_n2: fewer fields than labels");
    auto area = [&](int j, int i) { return f.tree(graft(Forest(Tree(j)), i)); };
    std::vector<PolyVectorField> sym;
    for (auto [k, l] : D.sym_index) {
        PolyVectorField c = k == l ? area(k, k) : area(l, k) + area(k, l);
        sym.push_back(Rational(-1, 2) * c);
    }
    std::map<Word, PolyVectorField> wf;
    for (int i = 1; i <= d; ++i) {
        wf.emplace(Word(Tree(i)), f.base(i));
        for (int j = 1; j <= d; ++j) wf.emplace(letters_word({j, i}), area(j, i));
    }
    Trajectory<S> T;
    T.times = D.driver.times;
    T.Y.push_back(xi);
    for (std::size_t k = 0; k < D.driver.steps.size(); ++k) {
        const auto& y0 = T.Y.back();
        std::vector<S> y = y0;
        auto add = [&](const PolyVectorField& F, const S& c) {
            if (is_zero(c)) return;
            auto v = F.eval(y0);
            for (std::size_t a = 0; a < y.size(); ++a) y[a] += c * v[a];
        };
        for (const auto& [w, F] : wf) add(F, D.driver.steps[k].at(w));
        for (std::size_t q = 0; q < sym.size(); ++q) add(sym[q], D.sym_steps[k][q]);
        T.Y.push_back(std::move(y));
    }
    return T;
}

// largest |difference of step increments| over steps and components
template <class S>
S max_step_discrepancy(const Trajectory<S>& a, const Trajectory<S>& b) {
    if (a.Y.size() != b.Y.size()) throw std::invalid_argument("trajectories have different grids");
    S worst(0);
    for (std::size_t k = 0; k + 1 < a.Y.size(); ++k) {
        auto da = a.step(k), db = b.step(k);
        for (std::size_t c = 0; c < da.size(); ++c) {
            S v = da[c] - db[c];
            if (v < 0) v = -v;
            if (worst < v) worst = v;
        }
    }
    return worst;
}

// ---- controlled paths

template <class S>
struct ControlledPath {
    int N = 1;  // coefficients on forests of grade <= N-1
    int d = 1;
    int e = 1;
    std::vector<S> times;
    // per time: forest -> R^e value; the unit forest holds the path itself
    std::vector<std::map<Forest, std::vector<S>>> coeff;

    const std::vector<S>& state(std::size_t k) const { return coeff[k].at(Forest{}); }
    std::vector<S> at(std::size_t k, const Forest& h) const {
        auto it = coeff[k].find(h);
        return it == coeff[k].end() ? std::vector<S>(e, S(0)) : it->second;
    }
};

// the driver itself: state X_t (from X_{t0} = 0), coefficient e_j on b_j
template <class S>
ControlledPath<S> controlled_driver(const BranchedRoughPath<S>& X) {
    ControlledPath<S> Z;
    Z.N = X.N;
    Z.d = X.d;
    Z.e = X.d;
    Z.times = X.times;
    std::vector<S> x(X.d, S(0));
    for (std::size_t k = 0; k < X.times.size(); ++k) {
        if (k > 0)
            for (int i = 1; i <= X.d; ++i) x[i - 1] += X.steps[k - 1].at(Forest(Tree(i)));
        std::map<Forest, std::vector<S>> m;
        m[Forest{}] = x;
        if (X.N > 1)
            for (int j = 1; j <= X.d; ++j) {
                std::vector<S> ej(X.d, S(0));
                ej[j - 1] = S(1);
                m[Forest(Tree(j))] = ej;
            }
        Z.coeff.push_back(std::move(m));
    }
    return Z;
}

// coefficients f_h(Y_t) of an RDE solution
template <class S>
ControlledPath<S> controlled_solution(const Trajectory<S>& T, const ButcherTable& f, int N, int d) {
    ControlledPath<S> Z;
    Z.N = N;
    Z.d = d;
    Z.e = f.dim();
    Z.times = T.times;
    const auto& trees = enumerate_trees(N - 1, d);
    std::vector<PolyVectorField> ft;
    for (const auto& t : trees) ft.push_back(f.tree(t));
    for (const auto& y : T.Y) {
        std::map<Forest, std::vector<S>> m;
        m[Forest{}] = y;
        for (std::size_t k = 0; k < trees.size(); ++k) m[Forest(trees[k])] = ft[k].eval(y);
        Z.coeff.push_back(std::move(m));
    }
    return Z;
}

// integral of Z against X^i, summed over grid intervals
template <class S>
ControlledPath<S> integrate_controlled(const ControlledPath<S>& Z, const BranchedRoughPath<S>& X, int i) {
    if (Z.times != X.times) throw std::invalid_argument("integrate_controlled: grid mismatch");
    if (i < 1 || i > X.d) throw std::invalid_argument("integrate_controlled: label out of range");
    ControlledPath<S> W;
    W.N = Z.N;
    W.d = X.d;
    W.e = Z.e;
    W.times = Z.times;
    std::vector<S> acc(Z.e, S(0));
    for (std::size_t k = 0; k < Z.times.size(); ++k) {
        if (k > 0)
            for (const auto& [h, v] : Z.coeff[k - 1]) {
                if (h.grade() > Z.N - 1) continue;
                S x = X.steps[k - 1].at(Forest(graft(h, i)));
                if (is_zero(x)) continue;
                for (int a = 0; a < Z.e; ++a) acc[a] += v[a] * x;
            }
        std::map<Forest, std::vector<S>> m;
        m[Forest{}] = acc;
        for (const auto& [h, v] : Z.coeff[k])
            if (h.grade() + 1 <= W.N - 1) m[Forest(graft(h, i))] = v;
        W.coeff.push_back(std::move(m));
    }
    return W;
}

namespace detail {
// ordered tuples (h1..hn) of nonunit forests with h1...hn = h
void ordered_factorizations(const Forest& h, std::vector<std::vector<Forest>>& out);
}

template <class S>
ControlledPath<S> compose_controlled(const PolyVectorField& phi, const ControlledPath<S>& Z) {
    if (phi.dim() != Z.e) throw std::invalid_argument("compose_controlled: dimension mismatch");
    ControlledPath<S> W = Z;
    for (std::size_t k = 0; k < Z.times.size(); ++k) {
        const auto& z = Z.state(k);
        std::map<Forest, std::vector<S>> m;
        m[Forest{}] = phi.eval(z);
        for (const auto& h : enumerate_forests(Z.N - 1, Z.d)) {
            if (h.is_unit()) continue;
            std::vector<std::vector<Forest>> fac;
            detail::ordered_factorizations(h, fac);
            std::vector<S> v(Z.e, S(0));
            for (const auto& tup : fac) {
                std::vector<std::vector<S>> dirs;
                bool zero = false;
                for (const auto& g : tup) {
                    auto it = Z.coeff[k].find(g);
                    if (it == Z.coeff[k].end()) {
                        zero = true;
                        break;
                    }
                    dirs.push_back(it->second);
                }
                if (zero) continue;
                auto c = contract_at(phi, z, dirs);
                S w = from_rational<S>(1 / factorial(static_cast<int>(tup.size())));
                for (int a = 0; a < Z.e; ++a) v[a] += w * c[a];
            }
            bool nz = false;
            for (const auto& a : v) nz = nz || !is_zero(a);
            if (nz) m[h] = v;
        }
        W.coeff[k] = std::move(m);
    }
    return W;
}

// R^h_{st} = <h, Z_t> - <X_st * h, Z_s>, products truncated at grade N-1
template <class S>
std::vector<S> consistency_residual(const ControlledPath<S>& Z, const HBasic<S>& Xst, const Forest& h, std::size_t s,
                                    std::size_t t) {
    auto r = Z.at(t, h);
    HBasic<S> prod = convolve(Xst, HBasic<S>(h, S(1), Z.d), Z.N - 1);
    for (const auto& [g, c] : prod.terms) {
        auto it = Z.coeff[s].find(g);
        if (it == Z.coeff[s].end()) continue;
        for (int a = 0; a < Z.e; ++a) r[a] -= c * it->second[a];
    }
    return r;
}

template <class S>
std::string trajectory_csv(const Trajectory<S>& T) {
    std::string out = "t";
    std::size_t e = T.Y.empty() ? 0 : T.Y[0].size();
    for (std::size_t a = 1; a <= e; ++a) out += ",y_" + std::to_string(a);
    out += "\n";
    for (std::size_t k = 0; k < T.times.size(); ++k) {
        out += to_string(T.times[k]);
        for (const auto& v : T.Y[k]) out += "," + to_string(v);
        out += "\n";
    }
    return out;
}

template <class S>
json to_json(const Trajectory<S>& T) {
    json j;
    j["kind"] = "trajectory";
    j["scalar"] = scalar_name<S>();
    j["times"] = json::array();
    for (const auto& t : T.times) j["times"].push_back(scalar_json(t));
    j["Y"] = json::array();
    for (const auto& y : T.Y) {
        json row = json::array();
        for (const auto& v : y) row.push_back(scalar_json(v));
        j["Y"].push_back(row);
    }
    if (!T.breakdown.empty()) {
        j["steps"] = json::array();
        for (const auto& parts : T.breakdown) {
            json m = json::object();
            for (const auto& [k, v] : parts) {
                json row = json::array();
                for (const auto& a : v) row.push_back(scalar_json(a));
                m[k] = row;
            }
            j["steps"].push_back(m);
        }
    }
    return j;
}

}  // namespace brp
