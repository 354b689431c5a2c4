#include "brp/rde.hpp"

#include "brp/expr.hpp"

namespace brp {

ButcherTable::ButcherTable(std::vector<PolyVectorField> base) : base_(std::move(base)) {
    if (base_.empty()) throw std::invalid_argument("ButcherTable: at least one field needed");
    e_ = base_[0].dim();
    for (const auto& f : base_)
        if (f.dim() != e_) throw std::invalid_argument("ButcherTable: fields of different dimensions");
}

ButcherTable::ButcherTable(const ButcherTable& o) : e_(o.e_), base_(o.base_) {
    std::lock_guard lk(o.mu_);
    cache_ = o.cache_;
}

const PolyVectorField& ButcherTable::base(int label) const {
    if (label < 1 || label > labels()) throw std::invalid_argument("ButcherTable: unknown label " + std::to_string(label));
    return base_[label - 1];
}

PolyVectorField ButcherTable::tree(const Tree& t) const {
    {
        std::lock_guard lk(mu_);
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
    }
    const auto& fi = base(t.root());
    PolyVectorField r;
    if (t.is_leaf()) {
        r = fi;
    } else {
        std::vector<PolyVectorField> gs;
        Rational norm = 1;
        const auto& kids = t.children();
        std::size_t run = 0;
        for (std::size_t k = 0; k < kids.size(); ++k) {
            gs.push_back(tree(kids[k]));
            run = (k > 0 && kids[k] == kids[k - 1]) ? run + 1 : 1;
            norm *= run;
        }
        r = contract(fi, gs);
        r *= Rational(1) / norm;
    }
    std::lock_guard lk(mu_);
    return cache_.emplace(t, std::move(r)).first->second;
}

PolyVectorField ButcherTable::of(const HElem& h) const {
    PolyVectorField r(e_);
    for (const auto& [f, c] : h.terms) {
        if (f.is_unit())
            r += c * PolyVectorField::identity(e_);
        else if (f.is_tree())
            r += c * tree(f.tree());
    }
    return r;
}

void ButcherTable::corrupt(const Tree& t, PolyVectorField value) {
    std::lock_guard lk(mu_);
    cache_[t] = std::move(value);
}

WordFields::WordFields(std::map<Tree, PolyVectorField> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("WordFields: no letters");
    e_ = letters_.begin()->second.dim();
    for (const auto& [t, f] : letters_)
        if (f.dim() != e_) throw std::invalid_argument("WordFields: fields of different dimensions");
}

WordFields::WordFields(const WordFields& o) : e_(o.e_), letters_(o.letters_) {
    std::lock_guard lk(o.mu_);
    cache_ = o.cache_;
}

PolyVectorField WordFields::word(const Word& w) const {
    if (w.empty()) return PolyVectorField::identity(e_);
    {
        std::lock_guard lk(mu_);
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
    }
    auto lit = letters_.find(w[0]);
    if (lit == letters_.end()) throw std::invalid_argument("WordFields: unknown letter " + print_tree(w[0]));
    PolyVectorField r = w.size() == 1 ? lit->second : word(w.slice(1, w.size())).directional(lit->second);
    std::lock_guard lk(mu_);
    return cache_.emplace(w, std::move(r)).first->second;
}

namespace {

std::string first_difference(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField diff = a - b;
    for (int c = 0; c < diff.dim(); ++c) {
        if (diff[c].is_zero()) continue;
        const auto& [m, coef] = *diff[c].terms().begin();
        Poly mono(diff.dim());
        mono.add(m, Rational(1));
        return "component " + std::to_string(c + 1) + ", monomial " + print_poly(mono) + ": lhs " +
               print_poly(a[c]) + " vs rhs " + print_poly(b[c]);
    }
    return {};
}

}  // namespace

LglReport check_lgl(const ButcherTable& f, const Tree& lambda, const HElem& h, int N) {
    PolyVectorField lhs = f.of(h).directional(f.tree(lambda));
    PolyVectorField rhs = f.of(convolve(HElem::of(lambda), h, N));
    LglReport r;
    if (!(lhs == rhs)) {
        r.pass = false;
        r.witness = "lambda " + print_tree(lambda) + ", h " + print_h(h) + ": " + first_difference(lhs, rhs);
    }
    return r;
}

LglReport check_lgl2(const ButcherTable& f, const Tree& l1, const Tree& l2, const HElem& h, int N) {
    PolyVectorField lhs = contract(f.of(h), {f.tree(l1), f.tree(l2)});
    Forest pairf = Forest(l1) * Forest(l2);
    // dual basis of a repeated pair carries its symmetry factor
    PolyVectorField rhs = Rational(symmetry_factor(pairf)) * f.of(convolve(HElem(pairf, Rational(1)), h, N));
    LglReport r;
    if (!(lhs == rhs)) {
        r.pass = false;
        r.witness = "lambda " + print_tree(l1) + " " + print_tree(l2) + ", h " + print_h(h) + ": " +
                    first_difference(lhs, rhs);
    }
    return r;
}

namespace detail {

void ordered_factorizations(const Forest& h, std::vector<std::vector<Forest>>& out) {
    if (h.is_unit()) {
        out.push_back({});
        return;
    }
    // distinct trees with multiplicities
    std::vector<std::pair<Tree, int>> groups;
    for (const auto& t : h.trees()) {
        if (!groups.empty() && groups.back().first == t)
            ++groups.back().second;
        else
            groups.emplace_back(t, 1);
    }
    std::vector<int> take(groups.size(), 0);
    while (true) {
        std::size_t k = 0;
        while (k < take.size() && take[k] == groups[k].second) take[k++] = 0;
        if (k == take.size()) break;
        ++take[k];
        std::vector<Tree> first, rest;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (int c = 0; c < take[g]; ++c) first.push_back(groups[g].first);
            for (int c = take[g]; c < groups[g].second; ++c) rest.push_back(groups[g].first);
        }
        std::vector<std::vector<Forest>> tails;
        ordered_factorizations(Forest(rest), tails);
        Forest head(first);
        for (auto& tl : tails) {
            tl.insert(tl.begin(), head);
            out.push_back(std::move(tl));
        }
    }
}

}  // namespace detail

}  // namespace brp
