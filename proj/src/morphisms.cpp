#include "brp/morphisms.hpp"

#include <functional>

#include "brp/expr.hpp"

namespace brp {

namespace {

TensorElem letter(const Tree& t) { return TensorElem(Word(t), Rational(1)); }

TensorElem shuffle_all(const Forest& f, const std::function<TensorElem(const Tree&)>& img) {
    TensorElem r = TensorElem::unit();
    for (const auto& t : f.trees()) r = shuffle(r, img(t));
    return r;
}

// one recursion step given images of strictly smaller trees
TensorElem compute_image(MorphismKind kind, const Tree& t, const std::function<TensorElem(const Tree&)>& img) {
    if (kind == MorphismKind::phi_g) {
        TensorElem below = shuffle_all(Forest(t.children()), img);
        TensorElem r;
        Word tail(Tree(t.root()));
        for (const auto& [w, c] : below.terms) r.add(w + tail, c);
        return r;
    }
    TensorElem r = letter(t);
    for (const auto& cut : coproduct_terms(Forest(t))) {
        if (cut.left.is_unit() || cut.right.is_unit()) continue;
        TensorElem head = shuffle_all(cut.left, img);
        Word tail(cut.right.tree());
        for (const auto& [w, c] : head.terms) r.add(w + tail, c * cut.c);
    }
    return r;
}

struct GlobalImages {
    std::mutex mu;
    std::map<Tree, TensorElem> phi, psi;
};
GlobalImages& gimages() {
    static GlobalImages g;
    return g;
}

const TensorElem& global_image(MorphismKind kind, const Tree& t) {
    auto& g = gimages();
    auto& table = kind == MorphismKind::phi_g ? g.phi : g.psi;
    {
        std::lock_guard lk(g.mu);
        auto it = table.find(t);
        if (it != table.end()) return it->second;
    }
    TensorElem v = compute_image(kind, t, [kind](const Tree& s) { return global_image(kind, s); });
    std::lock_guard lk(g.mu);
    return table.emplace(t, std::move(v)).first->second;
}

}  // namespace

MorphismTable::MorphismTable(MorphismKind kind, int N, int d) : kind_(kind), N_(N), d_(d) {
    for (const auto& t : enumerate_trees(std::max(1, N), d)) tree_image(t);
}

TensorElem MorphismTable::tree_image(const Tree& t) const {
    {
        std::lock_guard lk(mu_);
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
    }
    TensorElem v = compute_image(kind_, t, [this](const Tree& s) { return tree_image(s); });
    v.d = d_;
    std::lock_guard lk(mu_);
    return cache_.emplace(t, std::move(v)).first->second;
}

TensorElem MorphismTable::image(const Forest& f) const {
    return shuffle_all(f, [this](const Tree& s) { return tree_image(s); });
}

TensorElem MorphismTable::image(const HElem& h) const {
    TensorElem r(d_, kind_ == MorphismKind::psi ? N_ : 1);
    for (const auto& [f, c] : h.terms) {
        TensorElem x = image(f);
        x *= c;
        r += x;
    }
    return r;
}

void MorphismTable::corrupt(const Tree& t, TensorElem value) {
    std::lock_guard lk(mu_);
    cache_[t] = std::move(value);
}

std::map<Tree, TensorElem> MorphismTable::snapshot() const {
    std::lock_guard lk(mu_);
    return cache_;
}

const TensorElem& psi_tree(const Tree& t) { return global_image(MorphismKind::psi, t); }
const TensorElem& phi_g_tree(const Tree& t) { return global_image(MorphismKind::phi_g, t); }

TensorElem phi_g(const HElem& h) {
    TensorElem r(h.d, 1);
    for (const auto& [f, c] : h.terms) {
        TensorElem x = shuffle_all(f, [](const Tree& s) { return phi_g_tree(s); });
        x *= c;
        r += x;
    }
    return r;
}

TensorElem psi(const HElem& h, int N) {
    if (h.max_grade() > N) throw std::invalid_argument("psi: element grade exceeds level");
    TensorElem r(h.d, N);
    for (const auto& [f, c] : h.terms) {
        TensorElem x = shuffle_all(f, [](const Tree& s) { return psi_tree(s); });
        x *= c;
        r += x;
    }
    return r;
}

HElem psi_adjoint(const Word& w, int N, int d) {
    HElem r(d);
    if (w.grade() > N) return r;
    for (const auto& h : enumerate_forests(w.grade(), d)) {
        if (h.grade() != w.grade()) continue;
        r.add(h, psi(HElem(h, Rational(1), d), N).at(w));
    }
    return r;
}

HElem phi_g_adjoint(const Word& w, int d) {
    HElem r(d);
    for (const auto& t : w.letters())
        if (!t.is_leaf()) return r;
    for (const auto& h : enumerate_forests(w.grade(), d)) {
        if (h.grade() != w.grade()) continue;
        r.add(h, phi_g(HElem(h, Rational(1), d)).at(w));
    }
    return r;
}

HElem chain_embedding(const TensorElem& x) {
    HElem r(x.d);
    for (const auto& [w, c] : x.terms) {
        if (w.empty()) {
            r.add(Forest{}, c);
            continue;
        }
        std::vector<int> labels;
        for (const auto& t : w.letters()) {
            if (!t.is_leaf()) throw std::invalid_argument("chain_embedding: letters must be single vertices");
            labels.push_back(t.root());
        }
        r.add(Forest(chain(labels)), c);
    }
    return r;
}

MorphismReport verify_hopf_morphism(const MorphismTable& m, int N, int d) {
    MorphismReport rep;
    for (const auto& h : enumerate_forests(N, d)) {
        ++rep.forests_checked;
        TensorElem img = m.image(h);
        for (const auto& [w, c] : img.terms) {
            if (w.grade() != h.grade()) {
                rep.pass = false;
                rep.check = "grading";
                rep.witness = h;
                rep.detail = "word " + print_word(w) + " in image has the wrong grade";
                return rep;
            }
        }
        if (h.size() >= 2) {
            Forest rest(std::vector<Tree>(h.trees().begin() + 1, h.trees().end()));
            TensorElem split = shuffle(m.image(Forest(h.trees().front())), m.image(rest));
            if (!(split == img)) {
                rep.pass = false;
                rep.check = "product";
                rep.witness = h;
                rep.detail = print_tensor(img) + " != " + print_tensor(split);
                return rep;
            }
        }
        WordPairElem lhs = deconcat(img);
        WordPairElem rhs;
        for (const auto& cut : coproduct_terms(h)) {
            TensorElem a = m.image(cut.left), b = m.image(cut.right);
            for (const auto& [u, cu] : a.terms)
                for (const auto& [v, cv] : b.terms) rhs.add(u, v, cu * cv * cut.c);
        }
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.check = "coproduct";
            rep.witness = h;
            rep.detail = "deconcatenation of image differs from image of coproduct";
            return rep;
        }
    }
    rep.check = "all";
    return rep;
}

MorphismReport verify_hopf_morphism(MorphismKind which, int N, int d) {
    MorphismTable m(which, N, d);
    return verify_hopf_morphism(m, N, d);
}

}  // namespace brp
