#pragma once

#include <cstdint>

#include <gmp.h>

#include "alphax/real.hpp"

namespace alphax {

// splitmix64 (Steele, Lea, Flood 2014; public-domain reference implementation
// at https://prng.di.unimi.it/splitmix64.c). Chosen because its output is a
// pure function of (seed, index): any word of the stream can be produced
// without generating its predecessors, which makes parallel draws trivially
// deterministic: thread t can compute word j directly.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform draw from (0,1] at precision `prec`, built from consecutive stream
// words starting at `index` (consuming ceil(prec/64) words): the top `prec`
// bits K of the word block give x = (K+1) / 2^prec, which is never 0, can be
// exactly 1, and is exactly representable at `prec` bits.
inline Real uniform_open_closed(std::uint64_t seed, std::uint64_t index, mpfr_prec_t prec) {
    const std::uint64_t words = (static_cast<std::uint64_t>(prec) + 63) / 64;
    mpz_t k;
    mpz_init2(k, words * 64);
    mpz_set_ui(k, 0);
    for (std::uint64_t j = 0; j < words; ++j) {
        std::uint64_t w = splitmix64_at(seed, index + j);
        mpz_mul_2exp(k, k, 32);
        mpz_add_ui(k, k, static_cast<unsigned long>(w >> 32));
        mpz_mul_2exp(k, k, 32);
        mpz_add_ui(k, k, static_cast<unsigned long>(w & 0xFFFFFFFFULL));
    }
    mpz_tdiv_q_2exp(k, k, words * 64 - static_cast<std::uint64_t>(prec));
    mpz_add_ui(k, k, 1);
    Real x(prec + 1);  // K+1 may need prec+1 bits when K+1 = 2^prec
    mpfr_set_z(x.raw(), k, MPFR_RNDN);
    mpz_clear(k);
    return at_prec(ldexp2(x, -static_cast<long>(prec)), prec);
}

// Number of stream words one uniform draw consumes.
inline std::uint64_t words_per_draw(mpfr_prec_t prec) {
    return (static_cast<std::uint64_t>(prec) + 63) / 64;
}

} // namespace alphax
