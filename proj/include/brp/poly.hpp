#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brp/rational.hpp"

namespace brp {

using Exponents = std::vector<int>;

// Multivariate polynomial in y1..ye with exact rational coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int e) : e_(e) {}
    static Poly constant(int e, const Rational& c);
    static Poly variable(int e, int k);  // y_{k+1}, k zero-based

    int vars() const { return e_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void add(const Exponents& m, const Rational& c);
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Poly derivative(int k) const;

    template <class S>
    S eval(const std::vector<S>& y) const;

private:
    int e_ = 0;
    std::map<Exponents, Rational> terms_;
};

// e polynomial components; also used for maps R^e -> R^e
class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(int e) : e_(e), comp_(e, Poly(e)) {}
    explicit PolyVectorField(std::vector<Poly> comps);
    static PolyVectorField identity(int e);
    static PolyVectorField zero(int e) { return PolyVectorField(e); }

    int dim() const { return e_; }
    const Poly& operator[](int i) const { return comp_[i]; }
    Poly& operator[](int i) { return comp_[i]; }
    const std::vector<Poly>& components() const { return comp_; }
    bool is_zero() const;

    PolyVectorField& operator+=(const PolyVectorField& o);
    PolyVectorField& operator-=(const PolyVectorField& o);
    PolyVectorField& operator*=(const Rational& c);
    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
    friend PolyVectorField operator*(const Rational& c, PolyVectorField a) { return a *= c; }
    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) { return a.comp_ == b.comp_; }

    PolyVectorField derivative(int k) const;
    // (a . D) F = sum_k a_k d_k F
    PolyVectorField directional(const PolyVectorField& a) const;

    template <class S>
    std::vector<S> eval(const std::vector<S>& y) const {
        std::vector<S> out;
        out.reserve(e_);
        for (const auto& p : comp_) out.push_back(p.eval(y));
        return out;
    }

private:
    int e_ = 0;
    std::vector<Poly> comp_;
};

// D^n F : (g_1, ..., g_n), the g's are not differentiated
PolyVectorField contract(const PolyVectorField& F, const std::vector<PolyVectorField>& gs);
// same with constant directions, evaluated at a point
template <class S>
std::vector<S> contract_at(const PolyVectorField& F, const std::vector<S>& y,
                           const std::vector<std::vector<S>>& directions);

Poly parse_poly(std::string_view text, int e);
// components separated by ';'
PolyVectorField parse_field(std::string_view text, int e);
std::string print_poly(const Poly& p);
std::string print_field(const PolyVectorField& f);

// numeric coefficients cached for repeated float evaluation
class CompiledField {
public:
    CompiledField() = default;
    explicit CompiledField(const PolyVectorField& f);
    std::vector<double> operator()(const std::vector<double>& y) const;
    int dim() const { return e_; }

private:
    int e_ = 0;
    int maxdeg_ = 0;
    std::vector<std::vector<std::pair<Exponents, double>>> comp_;
};

// ---- template definitions

template <class S>
S Poly::eval(const std::vector<S>& y) const {
    if (static_cast<int>(y.size()) != e_) throw std::invalid_argument("polynomial: dimension mismatch");
    S total(0);
    for (const auto& [m, c] : terms_) {
        S v = from_rational<S>(c);
        for (int k = 0; k < e_; ++k)
            for (int p = 0; p < m[k]; ++p) v *= y[k];
        total += v;
    }
    return total;
}

namespace detail {
template <class S>
void contract_rec(const PolyVectorField& F, const std::vector<S>& y, const std::vector<std::vector<S>>& dirs,
                  std::size_t k, const S& weight, std::vector<S>& acc) {
    if (is_zero(weight)) return;
    if (k == dirs.size()) {
        auto v = F.eval(y);
        for (std::size_t i = 0; i < v.size(); ++i) acc[i] += weight * v[i];
        return;
    }
    for (int a = 0; a < F.dim(); ++a) {
        if (is_zero(dirs[k][a])) continue;
        S w = weight * dirs[k][a];
        contract_rec(F.derivative(a), y, dirs, k + 1, w, acc);
    }
}
}  // namespace detail

template <class S>
std::vector<S> contract_at(const PolyVectorField& F, const std::vector<S>& y,
                           const std::vector<std::vector<S>>& directions) {
    std::vector<S> acc(F.dim(), S(0));
    detail::contract_rec(F, y, directions, 0, S(1), acc);
    return acc;
}

}  // namespace brp
