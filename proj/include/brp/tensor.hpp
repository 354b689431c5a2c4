#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brp/hopf.hpp"
#include "brp/rational.hpp"
#include "brp/trees.hpp"

namespace brp {

// Word whose letters are trees; grade is the sum of the letter grades.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Tree> ls) : letters_(std::move(ls)) {}
    explicit Word(const Tree& t) : letters_{t} {}

    const std::vector<Tree>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Tree& operator[](std::size_t i) const { return letters_[i]; }
    int grade() const;
    int max_letter_grade() const;
    int max_label() const;

    Word operator+(const Word& o) const;  // concatenation
    Word slice(std::size_t from, std::size_t to) const;

    friend std::strong_ordering operator<=>(const Word& a, const Word& b);
    friend bool operator==(const Word& a, const Word& b) = default;

private:
    std::vector<Tree> letters_;
};

// word over single-vertex letters
Word letters_word(const std::vector<int>& labels);

template <class S>
struct TBasic {
    int d = 0;
    int n = 0;  // letter-grade bound (0 = unconstrained)
    std::map<Word, S> terms;

    TBasic() = default;
    TBasic(int d_, int n_) : d(d_), n(n_) {}
    TBasic(const Word& w, S c, int d_ = 0, int n_ = 0) : d(d_), n(n_) { add(w, c); }

    static TBasic unit(int d_ = 0, int n_ = 0) { return TBasic(Word{}, S(1), d_, n_); }

    void add(const Word& w, const S& c) {
        if (is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }
    S at(const Word& w) const {
        auto it = terms.find(w);
        return it == terms.end() ? S(0) : it->second;
    }
    bool empty() const { return terms.empty(); }
    int max_grade() const {
        int g = -1;
        for (const auto& [w, c] : terms) g = std::max(g, w.grade());
        return g;
    }
    int max_label() const {
        int m = 0;
        for (const auto& [w, c] : terms) m = std::max(m, w.max_label());
        return m;
    }
    int max_letter_grade() const {
        int m = 0;
        for (const auto& [w, c] : terms) m = std::max(m, w.max_letter_grade());
        return m;
    }
    int context() const { return d > 0 ? d : std::max(1, max_label()); }

    TBasic& operator+=(const TBasic& o) {
        for (const auto& [w, c] : o.terms) add(w, c);
        if (!d) d = o.d;
        if (!n) n = o.n;
        return *this;
    }
    TBasic& operator-=(const TBasic& o) {
        for (const auto& [w, c] : o.terms) add(w, -c);
        if (!d) d = o.d;
        if (!n) n = o.n;
        return *this;
    }
    TBasic& operator*=(const S& s) {
        if (is_zero(s)) {
            terms.clear();
            return *this;
        }
        for (auto& [w, c] : terms) c *= s;
        return *this;
    }
    friend TBasic operator+(TBasic a, const TBasic& b) { return a += b; }
    friend TBasic operator-(TBasic a, const TBasic& b) { return a -= b; }
    friend TBasic operator*(const S& s, TBasic a) { return a *= s; }
    friend bool operator==(const TBasic& a, const TBasic& b) { return a.terms == b.terms; }
    TBasic truncated(int N) const {
        TBasic r(d, n);
        for (const auto& [w, c] : terms)
            if (w.grade() <= N) r.terms.emplace(w, c);
        return r;
    }
};

using TensorElem = TBasic<Rational>;
using TensorElemF = TBasic<double>;

inline TensorElemF to_float(const TensorElem& x) {
    TensorElemF r(x.d, x.n);
    for (const auto& [w, c] : x.terms) r.add(w, c.get_d());
    return r;
}

template <class S>
struct WordPairBasic {
    std::map<std::pair<Word, Word>, S> terms;
    void add(const Word& a, const Word& b, const S& c) {
        if (is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace({a, b}, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }
    friend bool operator==(const WordPairBasic& a, const WordPairBasic& b) { return a.terms == b.terms; }
};
using WordPairElem = WordPairBasic<Rational>;

// interleavings of two words with multiplicities
std::vector<std::pair<Word, long>> shuffle_words(const Word& u, const Word& v);
// all words of total grade <= N over letters of grade <= n with labels 1..d
const std::vector<Word>& enumerate_words(int N, int n, int d);

int check_tensor_context(int a, int b);

template <class S>
TBasic<S> shuffle(const TBasic<S>& x, const TBasic<S>& y, int N = -1) {
    TBasic<S> r(check_tensor_context(x.d, y.d), std::max(x.n, y.n));
    for (const auto& [u, cu] : x.terms)
        for (const auto& [v, cv] : y.terms) {
            if (N >= 0 && u.grade() + v.grade() > N) continue;
            for (const auto& [w, m] : shuffle_words(u, v)) r.add(w, S(m) * cu * cv);
        }
    return r;
}

template <class S>
TBasic<S> concat(const TBasic<S>& x, const TBasic<S>& y, int N) {
    TBasic<S> r(check_tensor_context(x.d, y.d), std::max(x.n, y.n));
    for (const auto& [u, cu] : x.terms)
        for (const auto& [v, cv] : y.terms)
            if (u.grade() + v.grade() <= N) r.add(u + v, cu * cv);
    return r;
}

template <class S>
WordPairBasic<S> deconcat(const TBasic<S>& x) {
    WordPairBasic<S> r;
    for (const auto& [w, c] : x.terms)
        for (std::size_t k = 0; k <= w.size(); ++k) r.add(w.slice(0, k), w.slice(k, w.size()), c);
    return r;
}

template <class S>
TBasic<S> tensor_exp(const TBasic<S>& x, int N) {
    if (!is_zero(x.at(Word{}))) throw std::invalid_argument("tensor_exp: nonzero empty-word coefficient");
    TBasic<S> result = TBasic<S>::unit(x.d, x.n);
    TBasic<S> power = result;
    for (int k = 1; k <= N; ++k) {
        power = concat(power, x, N);
        if (power.empty()) break;
        power *= S(1) / S(k);  // accumulates 1/k!
        result += power;
    }
    return result;
}

template <class S>
TBasic<S> tensor_log(const TBasic<S>& g, int N) {
    if (g.at(Word{}) != S(1)) throw std::invalid_argument("tensor_log: empty-word coefficient must be 1");
    TBasic<S> x = g - TBasic<S>::unit(g.d, g.n);
    TBasic<S> result(g.d, g.n);
    TBasic<S> power = TBasic<S>::unit(g.d, g.n);
    for (int k = 1; k <= N; ++k) {
        power = concat(power, x, N);
        if (power.empty()) break;
        TBasic<S> term = power;
        term *= from_rational<S>(Rational(k % 2 ? 1 : -1, k));
        result += term;
    }
    return result;
}

template <class S>
S pair(const TBasic<S>& f, const TBasic<S>& x) {
    S r(0);
    const auto& small = f.terms.size() < x.terms.size() ? f : x;
    const auto& big = f.terms.size() < x.terms.size() ? x : f;
    for (const auto& [w, c] : small.terms) {
        auto it = big.terms.find(w);
        if (it != big.terms.end()) r += c * it->second;
    }
    return r;
}

// pairing of a numeric functional against an exact tensor
template <class S>
S pair_exact(const TBasic<S>& f, const TensorElem& x) {
    S r(0);
    for (const auto& [w, c] : x.terms) {
        auto it = f.terms.find(w);
        if (it != f.terms.end()) r += from_rational<S>(c) * it->second;
    }
    return r;
}

// first (u, v) violating <g,u><g,v> = <g, u sh v>
template <class S>
std::optional<std::pair<Word, Word>> tensor_group_like_witness(const TBasic<S>& g, int N) {
    if (!near(g.at(Word{}), S(1))) return std::pair{Word{}, Word{}};
    int n = g.n ? g.n : std::max(1, g.max_letter_grade());
    const auto& words = enumerate_words(N, n, g.context());
    for (std::size_t a = 1; a < words.size(); ++a) {
        const Word& u = words[a];
        if (2 * u.grade() > N) break;
        for (std::size_t b = a; b < words.size(); ++b) {
            const Word& v = words[b];
            if (u.grade() + v.grade() > N) break;
            S lhs = g.at(u) * g.at(v);
            S rhs(0);
            for (const auto& [w, m] : shuffle_words(u, v)) rhs += S(m) * g.at(w);
            if (!near(lhs, rhs)) return std::pair{u, v};
        }
    }
    return std::nullopt;
}

template <class S>
bool is_tensor_group_like(const TBasic<S>& g, int N) {
    return !tensor_group_like_witness(g, N).has_value();
}

}  // namespace brp
