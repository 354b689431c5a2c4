#include "brp/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace brp {

namespace {

SampledPath<Rational> grid(int d, int M) {
    if (d < 1 || M < 1) throw std::invalid_argument("synthetic path: need d >= 1 and M >= 1");
    SampledPath<Rational> p;
    for (int i = 1; i <= d; ++i) p.basis.push_back(Tree(i));
    for (int k = 0; k <= M; ++k) p.times.push_back(make_rational(k, M));
    return p;
}

}  // namespace

SampledPath<Rational> synth_random_walk(int d, int M, std::uint32_t seed) {
    auto p = grid(d, M);
    std::mt19937 gen(seed);
    std::vector<Rational> x(d, Rational(0));
    p.values.push_back(x);
    for (int k = 0; k < M; ++k) {
        for (int i = 0; i < d; ++i) {
            std::uint32_t r = gen();
            int a = static_cast<int>(r % 3) + 1;
            int sign = (r >> 16) & 1 ? 1 : -1;
            x[i] += make_rational(sign * a, 4);
        }
        p.values.push_back(x);
    }
    return p;
}

SampledPath<Rational> synth_sign_walk(int d, int M, const Rational& scale, std::uint32_t seed) {
    auto p = grid(d, M);
    std::mt19937 gen(seed);
    std::vector<Rational> x(d, Rational(0));
    p.values.push_back(x);
    for (int k = 0; k < M; ++k) {
        for (int i = 0; i < d; ++i) x[i] += (gen() >> 31) ? scale : Rational(-scale);
        p.values.push_back(x);
    }
    return p;
}

SampledPath<Rational> synth_linear(int d, int M) {
    auto p = grid(d, M);
    for (const auto& t : p.times) {
        std::vector<Rational> row;
        for (int i = 1; i <= d; ++i) row.push_back(i * t);
        p.values.push_back(std::move(row));
    }
    return p;
}

SampledPath<Rational> synth_sine(int d, int M) {
    auto p = grid(d, M);
    const double scale = 1 << 20;
    for (const auto& t : p.times) {
        std::vector<Rational> row;
        for (int i = 1; i <= d; ++i) {
            double v = std::sin(2 * std::numbers::pi * i * t.get_d());
            row.push_back(make_rational(std::lround(v * scale), 1L << 20));
        }
        p.values.push_back(std::move(row));
    }
    return p;
}

}  // namespace brp
