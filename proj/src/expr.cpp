#include "brp/expr.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <vector>

namespace brp {

namespace {

class Parser {
public:
    Parser(std::string_view s, int d, int n) : s_(s), d_(d), n_(n) {}

    HElem expr() {
        HElem r(d_);
        skip();
        if (rest_is_zero()) return r;
        bool first = true;
        while (true) {
            skip();
            Rational sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++i_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [c, f] = term([this] { return forest_or_unit(); });
            r.add(f, sign * c);
            first = false;
            skip();
            if (i_ == s_.size()) break;
        }
        return r;
    }

    TensorElem tensor() {
        TensorElem r(d_, n_);
        skip();
        if (rest_is_zero()) return r;
        bool first = true;
        while (true) {
            skip();
            Rational sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++i_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [c, w] = term([this] { return word_or_unit(); });
            r.add(w, sign * c);
            first = false;
            skip();
            if (i_ == s_.size()) break;
        }
        return r;
    }

    Tree lone_tree() {
        skip();
        Tree t = tree();
        end();
        return t;
    }
    Forest lone_forest() {
        skip();
        Forest f = forest_or_unit();
        end();
        return f;
    }
    Word lone_word() {
        skip();
        Word w = word_or_unit();
        end();
        return w;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    int d_, n_;

    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    void end() {
        skip();
        if (i_ != s_.size()) fail("unexpected trailing input");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) {
            if (s_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }
    bool rest_is_zero() {
        std::size_t j = i_;
        if (j < s_.size() && s_[j] == '0') {
            ++j;
            while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
            if (j == s_.size()) {
                i_ = j;
                return true;
            }
        }
        return false;
    }

    std::string digits() {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected integer");
        if (i_ - start > 1 && s_[start] == '0') {
            i_ = start;
            fail("leading zero in integer");
        }
        return std::string(s_.substr(start, i_ - start));
    }

    template <class Mono>
    auto term(Mono mono) -> std::pair<Rational, decltype(mono())> {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) return {Rational(1), mono()};
        std::size_t mark = i_;
        std::string num = digits();
        skip();
        std::string den = "1";
        if (peek() == '/') {
            ++i_;
            skip();
            den = digits();
            if (mpz_class(den) == 0) fail("zero denominator");
            skip();
        }
        if (peek() == '*') {
            ++i_;
            skip();
            Rational c{mpz_class(num), mpz_class(den)};
            c.canonicalize();
            return {c, mono()};
        }
        if (num == "1" && den == "1" && s_.substr(mark, 1) == "1") {
            i_ = mark + 1;
            return {Rational(1), decltype(mono()){}};
        }
        fail("expected '*' after coefficient");
    }

    int label() {
        skip();
        if (peek() != '_') fail("expected '_'");
        ++i_;
        skip();
        std::size_t at = i_;
        std::string v = digits();
        if (v.size() > 9) {
            i_ = at;
            fail("label too large");
        }
        int l = std::stoi(v);
        if (l < 1 || (d_ > 0 && l > d_)) {
            i_ = at;
            fail("label " + v + " out of range 1.." + (d_ > 0 ? std::to_string(d_) : std::string("d")));
        }
        return l;
    }

    bool at_tree_start() const { return peek() == 'b' || peek() == '['; }

    Tree tree() {
        skip();
        if (peek() == 'b') {
            ++i_;
            return Tree(label());
        }
        if (peek() == '[') {
            ++i_;
            skip();
            std::vector<Tree> kids;
            while (at_tree_start()) {
                kids.push_back(tree());
                skip();
            }
            if (kids.empty()) fail("empty branch list");
            if (peek() != ']') fail("expected ']'");
            ++i_;
            return graft(Forest(std::move(kids)), label());
        }
        fail("expected tree");
    }

    Forest forest_or_unit() {
        skip();
        if (peek() == '1') {
            ++i_;
            return Forest{};
        }
        std::vector<Tree> ts;
        ts.push_back(tree());
        skip();
        while (at_tree_start()) {
            ts.push_back(tree());
            skip();
        }
        return Forest(std::move(ts));
    }

    Word word_or_unit() {
        skip();
        if (peek() == '1') {
            ++i_;
            return Word{};
        }
        std::vector<Tree> ls;
        while (true) {
            std::size_t at = i_;
            Tree t = tree();
            if (n_ > 0 && t.grade() > n_) {
                i_ = at;
                fail("letter grade exceeds " + std::to_string(n_));
            }
            ls.push_back(t);
            skip();
            if (s_.substr(i_, 3) == "(x)") {
                i_ += 3;
                skip();
                continue;
            }
            break;
        }
        return Word(std::move(ls));
    }
};

std::string coeff_prefix(const Rational& c, bool first) {
    std::string out;
    Rational a = abs(c);
    if (first) {
        if (c == 1) return "";
        return to_string(c) + " * ";
    }
    out = sgn(c) < 0 ? " - " : " + ";
    if (a != 1) out += to_string(a) + " * ";
    return out;
}

}  // namespace

HElem parse_h(std::string_view text, int d) { return Parser(text, d, 0).expr(); }
TensorElem parse_tensor(std::string_view text, int d, int n) { return Parser(text, d, n).tensor(); }
Tree parse_tree(std::string_view text, int d) { return Parser(text, d, 0).lone_tree(); }
Forest parse_forest(std::string_view text, int d) { return Parser(text, d, 0).lone_forest(); }
Word parse_word(std::string_view text, int d, int n) { return Parser(text, d, n).lone_word(); }

std::string print_tree(const Tree& t) {
    if (t.is_leaf()) return "b_" + std::to_string(t.root());
    std::string s = "[";
    for (std::size_t k = 0; k < t.children().size(); ++k) {
        if (k) s += ' ';
        s += print_tree(t.children()[k]);
    }
    return s + "]_" + std::to_string(t.root());
}

std::string print_forest(const Forest& f) {
    if (f.is_unit()) return "1";
    std::string s;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) s += ' ';
        s += print_tree(f.trees()[k]);
    }
    return s;
}

std::string print_word(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += " (x) ";
        s += print_tree(w[k]);
    }
    return s;
}

bool print_less(const Forest& a, const Forest& b) {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    auto la = preorder_labels(a), lb = preorder_labels(b);
    if (la != lb) return la < lb;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool print_less(const Word& a, const Word& b) {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    if (a.size() != b.size()) return a.size() < b.size();
    std::vector<int> la, lb;
    for (const auto& t : a.letters()) {
        auto p = preorder_labels(t);
        la.insert(la.end(), p.begin(), p.end());
    }
    for (const auto& t : b.letters()) {
        auto p = preorder_labels(t);
        lb.insert(lb.end(), p.begin(), p.end());
    }
    if (la != lb) return la < lb;
    return a < b;
}

std::string print_h(const HElem& x) {
    if (x.empty()) return "0";
    std::vector<const std::pair<const Forest, Rational>*> ts;
    for (const auto& kv : x.terms) ts.push_back(&kv);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) { return print_less(a->first, b->first); });
    std::string s;
    for (std::size_t k = 0; k < ts.size(); ++k) s += coeff_prefix(ts[k]->second, k == 0) + print_forest(ts[k]->first);
    return s;
}

std::string print_tensor(const TensorElem& x) {
    if (x.empty()) return "0";
    std::vector<const std::pair<const Word, Rational>*> ts;
    for (const auto& kv : x.terms) ts.push_back(&kv);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) { return print_less(a->first, b->first); });
    std::string s;
    for (std::size_t k = 0; k < ts.size(); ++k) s += coeff_prefix(ts[k]->second, k == 0) + print_word(ts[k]->first);
    return s;
}

std::string print_pair(const PairElem& x) {
    if (x.terms.empty()) return "0";
    using Entry = std::pair<const std::pair<Forest, Forest>, Rational>;
    std::vector<const Entry*> ts;
    for (const auto& kv : x.terms) ts.push_back(&kv);
    // x (x) 1 first, then 1 (x) x, then the reduced part
    auto cls = [](const Entry* e) {
        if (e->first.second.is_unit() && !e->first.first.is_unit()) return 0;
        if (e->first.first.is_unit()) return 1;
        return 2;
    };
    std::sort(ts.begin(), ts.end(), [&](const Entry* a, const Entry* b) {
        int ga = a->first.first.grade() + a->first.second.grade();
        int gb = b->first.first.grade() + b->first.second.grade();
        if (ga != gb) return ga < gb;
        if (cls(a) != cls(b)) return cls(a) < cls(b);
        if (a->first.first != b->first.first) return print_less(a->first.first, b->first.first);
        return print_less(a->first.second, b->first.second);
    });
    std::string s;
    for (std::size_t k = 0; k < ts.size(); ++k)
        s += coeff_prefix(ts[k]->second, k == 0) + print_forest(ts[k]->first.first) + " (x) " +
             print_forest(ts[k]->first.second);
    return s;
}

}  // namespace brp
