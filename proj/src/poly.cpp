#include "brp/poly.hpp"

#include <algorithm>
#include <cctype>

namespace brp {

Poly Poly::constant(int e, const Rational& c) {
    Poly p(e);
    p.add(Exponents(e, 0), c);
    return p;
}

Poly Poly::variable(int e, int k) {
    Poly p(e);
    Exponents m(e, 0);
    m.at(k) = 1;
    p.add(m, Rational(1));
    return p;
}

int Poly::degree() const {
    int g = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int v : m) s += v;
        g = std::max(g, s);
    }
    return g;
}

void Poly::add(const Exponents& m, const Rational& c) {
    if (static_cast<int>(m.size()) != e_) throw std::invalid_argument("polynomial: exponent arity mismatch");
    if (brp::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (brp::is_zero(it->second)) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (!e_) e_ = o.e_;
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!e_) e_ = o.e_;
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (brp::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(std::max(a.e_, b.e_));
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Exponents m(ma);
            for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
            r.add(m, ca * cb);
        }
    return r;
}

Poly Poly::derivative(int k) const {
    Poly r(e_);
    for (const auto& [m, c] : terms_) {
        if (m[k] == 0) continue;
        Exponents n(m);
        n[k] -= 1;
        r.add(n, c * m[k]);
    }
    return r;
}

PolyVectorField::PolyVectorField(std::vector<Poly> comps) : e_(static_cast<int>(comps.size())), comp_(std::move(comps)) {
    for (auto& p : comp_)
        if (p.vars() != e_) {
            if (!p.is_zero()) throw std::invalid_argument("vector field: components must have e variables");
            p = Poly(e_);
        }
}

PolyVectorField PolyVectorField::identity(int e) {
    PolyVectorField f(e);
    for (int k = 0; k < e; ++k) f.comp_[k] = Poly::variable(e, k);
    return f;
}

bool PolyVectorField::is_zero() const {
    return std::all_of(comp_.begin(), comp_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
    if (!e_) *this = PolyVectorField(o.e_);
    if (o.e_ != e_) throw std::invalid_argument("vector field: dimension mismatch");
    for (int k = 0; k < e_; ++k) comp_[k] += o.comp_[k];
    return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& o) {
    if (!e_) *this = PolyVectorField(o.e_);
    if (o.e_ != e_) throw std::invalid_argument("vector field: dimension mismatch");
    for (int k = 0; k < e_; ++k) comp_[k] -= o.comp_[k];
    return *this;
}

PolyVectorField& PolyVectorField::operator*=(const Rational& c) {
    for (auto& p : comp_) p *= c;
    return *this;
}

PolyVectorField PolyVectorField::derivative(int k) const {
    PolyVectorField r(e_);
    for (int i = 0; i < e_; ++i) r.comp_[i] = comp_[i].derivative(k);
    return r;
}

PolyVectorField PolyVectorField::directional(const PolyVectorField& a) const {
    if (a.e_ != e_) throw std::invalid_argument("vector field: dimension mismatch");
    PolyVectorField r(e_);
    for (int k = 0; k < e_; ++k) {
        if (a.comp_[k].is_zero()) continue;
        for (int i = 0; i < e_; ++i) r.comp_[i] += a.comp_[k] * comp_[i].derivative(k);
    }
    return r;
}

PolyVectorField contract(const PolyVectorField& F, const std::vector<PolyVectorField>& gs) {
    if (gs.empty()) return F;
    std::vector<PolyVectorField> rest(gs.begin() + 1, gs.end());
    PolyVectorField r(F.dim());
    for (int a = 0; a < F.dim(); ++a) {
        const Poly& weight = gs.front()[a];
        if (weight.is_zero()) continue;
        PolyVectorField inner = contract(F.derivative(a), rest);
        for (int i = 0; i < F.dim(); ++i) r[i] += weight * inner[i];
    }
    return r;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view s, int e) : s_(s), e_(e) {}

    Poly poly() {
        Poly p(e_);
        skip();
        bool first = true;
        while (true) {
            skip();
            Rational sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++i_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [c, m] = term();
            p.add(m, sign * c);
            first = false;
            skip();
            if (i_ == s_.size()) break;
        }
        return p;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    int e_;

    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("polynomial: " + msg + " at column " + std::to_string(i_ + 1));
    }
    std::string number() {
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' ||
                                  s_[i_] == '/' || s_[i_] == 'e' || s_[i_] == 'E'))
            ++i_;
        if (start == i_) fail("expected number");
        return std::string(s_.substr(start, i_ - start));
    }
    int integer() {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected integer");
        return std::stoi(std::string(s_.substr(start, i_ - start)));
    }
    std::pair<Rational, Exponents> term() {
        Rational c(1);
        Exponents m(e_, 0);
        while (true) {
            skip();
            if (peek() == 'y') {
                ++i_;
                int k = integer();
                if (k < 1 || k > e_) fail("variable y" + std::to_string(k) + " out of range");
                int p = 1;
                skip();
                if (peek() == '^') {
                    ++i_;
                    skip();
                    p = integer();
                }
                m[k - 1] += p;
            } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
                try {
                    c *= parse_rational(number());
                } catch (const std::exception& ex) {
                    fail(ex.what());
                }
            } else {
                fail("expected factor");
            }
            skip();
            if (peek() == '*') {
                ++i_;
                continue;
            }
            break;
        }
        return {c, m};
    }
};

std::string monomial_text(const Exponents& m) {
    std::string s;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (!m[k]) continue;
        if (!s.empty()) s += '*';
        s += "y" + std::to_string(k + 1);
        if (m[k] > 1) s += "^" + std::to_string(m[k]);
    }
    return s;
}

}  // namespace

Poly parse_poly(std::string_view text, int e) { return PolyParser(text, e).poly(); }

PolyVectorField parse_field(std::string_view text, int e) {
    std::vector<Poly> comps;
    std::size_t start = 0;
    while (true) {
        std::size_t semi = text.find(';', start);
        comps.push_back(parse_poly(text.substr(start, semi == std::string_view::npos ? semi : semi - start), e));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    if (static_cast<int>(comps.size()) != e)
        throw std::invalid_argument("vector field: expected " + std::to_string(e) + " components, got " +
                                    std::to_string(comps.size()));
    return PolyVectorField(std::move(comps));
}

std::string print_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exponents, Rational>> ts(p.terms().begin(), p.terms().end());
    auto deg = [](const Exponents& m) {
        int s = 0;
        for (int v : m) s += v;
        return s;
    };
    std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
        if (deg(a.first) != deg(b.first)) return deg(a.first) > deg(b.first);
        return a.first > b.first;
    });
    std::string s;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto& [m, c] = ts[k];
        std::string mono = monomial_text(m);
        Rational a = abs(c);
        if (k == 0)
            s += sgn(c) < 0 ? "-" : "";
        else
            s += sgn(c) < 0 ? " - " : " + ";
        if (mono.empty())
            s += to_string(a);
        else if (a == 1)
            s += mono;
        else
            s += to_string(a) + "*" + mono;
    }
    return s;
}

std::string print_field(const PolyVectorField& f) {
    std::string s;
    for (int k = 0; k < f.dim(); ++k) {
        if (k) s += "; ";
        s += print_poly(f[k]);
    }
    return s;
}

CompiledField::CompiledField(const PolyVectorField& f) : e_(f.dim()) {
    for (int i = 0; i < e_; ++i) {
        std::vector<std::pair<Exponents, double>> c;
        for (const auto& [m, v] : f[i].terms()) {
            c.emplace_back(m, v.get_d());
            for (int x : m) maxdeg_ = std::max(maxdeg_, x);
        }
        comp_.push_back(std::move(c));
    }
}

std::vector<double> CompiledField::operator()(const std::vector<double>& y) const {
    std::vector<double> out(e_, 0.0);
    for (int i = 0; i < e_; ++i)
        for (const auto& [m, c] : comp_[i]) {
            double v = c;
            for (int k = 0; k < e_; ++k)
                for (int p = 0; p < m[k]; ++p) v *= y[k];
            out[i] += v;
        }
    return out;
}

}  // namespace brp
