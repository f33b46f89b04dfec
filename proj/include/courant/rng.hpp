#pragma once

#include "courant/algebra.hpp"

#include <cstdint>
#include <vector>

namespace courant {

// Deterministic xorshift generator; identical streams across platforms.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        uint64_t x = state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        state = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    // Uniform in [0, n).
    uint64_t below(uint64_t n) { return next() % n; }

    // Small rational in {-3..3} / {1,2,3}.
    Scalar small_scalar() {
        long num = (long)(below(7)) - 3;
        long den = (long)(below(3)) + 1;
        return Scalar(Rational(num, den));
    }

    Scalar nonzero_scalar() {
        Scalar s = small_scalar();
        while (s.is_zero()) s = small_scalar();
        return s;
    }

    // Random polynomial in the masked generators, respecting odd exponents.
    Elem poly(const AlgebraPtr& alg, const std::vector<size_t>& gens,
              uint32_t max_degree, uint32_t terms) {
        Elem r = Elem::zero(alg);
        for (uint32_t t = 0; t < terms; ++t) {
            Elem m = Elem::constant(alg, small_scalar());
            uint32_t deg = (uint32_t)below(max_degree + 1);
            for (uint32_t k = 0; k < deg; ++k) {
                size_t g = gens[below(gens.size())];
                m = m * Elem::generator(alg, g);
                if (m.is_zero()) break;
            }
            r = r + m;
        }
        return r;
    }
};

} // namespace courant
