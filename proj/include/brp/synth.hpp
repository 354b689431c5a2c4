#pragma once

#include <cstdint>

#include "brp/roughpath.hpp"

namespace brp {

// times k/M on [0,1]; components b_1..b_d
// steps +-a/4 with a in {1,2,3}, driven by mt19937 raw output
SampledPath<Rational> synth_random_walk(int d, int M, std::uint32_t seed);
// steps +-scale
SampledPath<Rational> synth_sign_walk(int d, int M, const Rational& scale, std::uint32_t seed);
// X^i_t = i t
SampledPath<Rational> synth_linear(int d, int M);
// X^i_t = sin(2 pi i t), rounded to multiples of 2^-20
SampledPath<Rational> synth_sine(int d, int M);

template <class S>
SampledPath<S> path_cast(const SampledPath<Rational>& p) {
    SampledPath<S> r;
    r.basis = p.basis;
    for (const auto& t : p.times) r.times.push_back(from_rational<S>(t));
    for (const auto& row : p.values) {
        std::vector<S> v;
        for (const auto& x : row) v.push_back(from_rational<S>(x));
        r.values.push_back(std::move(v));
    }
    return r;
}

}  // namespace brp
