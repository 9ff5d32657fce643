#include <doctest.h>

#include <cstdint>
#include <vector>

#include "alphax/base.hpp"
#include "alphax/dimension.hpp"
#include "alphax/errors.hpp"
#include "alphax/real.hpp"
#include "alphax/rng.hpp"

using alphax::Base;
using alphax::DigitSet;
using alphax::ProbDist;
using alphax::Real;

namespace {

constexpr mpfr_prec_t kP = 256;

Real R(const char* s) { return Real(s, kP); }

// Moran sum recomputed from scratch at 2P: every power via mpfr_pow.
Real moran_sum_at(const Real& alpha, const std::vector<long>& D, const Real& h) {
    const mpfr_prec_t p = 2 * kP;
    Real a = alphax::at_prec(alpha, p);
    Real am1 = a - Real(1L, p);
    Real hh = alphax::at_prec(h, p);
    Real sum(0L, p);
    for (long i : D)
        sum = sum + alphax::pow(am1 * alphax::pow_si(a, -i, p), hh);
    return sum;
}

ProbDist random_dist(std::uint64_t seed, std::size_t m) {
    // normalized uniform weights; the P-bit normalization keeps the total
    // within one rounding of 1, far inside the 1e-12 acceptance window
    std::vector<Real> w;
    Real total(0L, kP);
    for (std::size_t i = 0; i < m; ++i) {
        w.push_back(alphax::uniform_open_closed(seed, i * alphax::words_per_draw(kP), kP));
        total = total + w.back();
    }
    for (auto& x : w) x = x / total;
    return ProbDist(std::move(w));
}

} // namespace

TEST_CASE("Moran solver: golden-ratio oracle for alpha 2, D {1,2}") {
    Base two(R("2"));
    auto r = alphax::moran_dimension(two, DigitSet({1, 2}));
    // log((1+sqrt 5)/2)/log 2, recomputed here at 2P
    Real phi = (Real(1L, 2 * kP) + alphax::sqrt(Real(5L, 2 * kP))) / Real(2L, 2 * kP);
    Real want = alphax::log(phi) / alphax::log(Real(2L, 2 * kP));
    CHECK(alphax::abs(r.h - want) < R("1e-10"));
    CHECK(alphax::abs(r.h - R("0.6942419136306173")) < R("1e-12"));
    CHECK(r.residual < R("1e-12"));
    CHECK(r.iterations > 0);
    CHECK(!r.degenerate);
}

TEST_CASE("Moran solver: residual honest on random instances") {
    for (int t = 0; t < 12; ++t) {
        std::uint64_t s = alphax::splitmix64_at(900, t);
        double a = 1.2 + 8.8 * double(s >> 11) * 0x1p-53;
        Base base(Real(std::to_string(a), kP));
        std::vector<long> D;
        for (long d = 1; d <= 12 && D.size() < 5; ++d)
            if (alphax::splitmix64_at(901, t * 16 + d) & 1) D.push_back(d);
        if (D.size() < 2) D = {2, 3};
        auto r = alphax::moran_dimension(base, DigitSet(D));
        CHECK(alphax::abs(moran_sum_at(base.alpha(), D, r.h) - Real(1L, kP)) < R("1e-11"));
        CHECK(r.h.sign() > 0);
        CHECK(r.h < Real(1L, kP));
    }
}

TEST_CASE("Moran solver: monotone in the digit set, 0 for singletons") {
    Base base(R("2.7"));
    auto h1 = alphax::moran_dimension(base, DigitSet({2, 3}));
    auto h2 = alphax::moran_dimension(base, DigitSet({1, 2, 3}));
    auto h3 = alphax::moran_dimension(base, DigitSet({1, 2, 3, 4}));
    CHECK(h1.h < h2.h);
    CHECK(h2.h < h3.h);

    auto single = alphax::moran_dimension(base, DigitSet({4}));
    CHECK(single.h.is_zero());
    CHECK(single.residual.is_zero());

    auto full = alphax::moran_dimension_full(base);
    CHECK(full.h == Real(1L, kP));
    CHECK(full.residual.is_zero());
}

TEST_CASE("prefix sets: closed form matches the generic solver") {
    for (const char* a : {"1.5", "2", "3", "10"}) {
        Base base(Real(a, kP));
        for (long n : {2L, 5L, 17L, 30L}) {
            auto closed = alphax::prefix_set_dimension(base, n);
            auto generic = alphax::moran_dimension(base, DigitSet::prefix(n));
            CHECK(alphax::abs(closed.h - generic.h) < R("1e-10"));
        }
    }
}

TEST_CASE("prefix sets: h(n) increases to 1 at the alpha^{-n} rate") {
    Base two(R("2"));
    Real prev = alphax::prefix_set_dimension(two, 2).h;
    for (long n = 3; n <= 12; ++n) {
        Real h = alphax::prefix_set_dimension(two, n).h;
        CHECK(h > prev);
        prev = h;
    }
    Real gap20 = Real(1L, kP) - alphax::prefix_set_dimension(two, 20).h;
    CHECK(gap20 < R("1e-4"));
    CHECK(alphax::abs(gap20 - R("6.879373e-7")) < R("1e-11"));
    // (1 - h(n)) * 2^n settles near log-derivative of the Moran sum at 1
    for (long n : {15L, 20L, 25L}) {
        Real scaled = (Real(1L, kP) - alphax::prefix_set_dimension(two, n).h) *
                      alphax::pow_si(R("2"), n, kP);
        CHECK(scaled > R("0.715"));
        CHECK(scaled < R("0.725"));
    }
    CHECK(alphax::prefix_set_dimension(two, 1).h.is_zero());
}

TEST_CASE("frequency dimension: fair coin on {1,2} is exactly 2/3") {
    Base two(R("2"));
    auto r = alphax::frequency_set_dimension(two, ProbDist({R("0.5"), R("0.5")}));
    CHECK(alphax::abs(r.h - Real(2L, kP) / Real(3L, kP)) < R("1e-70"));
    CHECK(!r.degenerate);
}

TEST_CASE("frequency dimension: frozen truncated-geometric value") {
    // p_d = 2^{-d} for d = 1..19, p_20 = 2^{-19}: sums to 1 exactly
    Base two(R("2"));
    std::vector<Real> p;
    for (long d = 1; d <= 19; ++d) p.push_back(alphax::ldexp2(Real(1L, kP), -d));
    p.push_back(alphax::ldexp2(Real(1L, kP), -19));
    auto r = alphax::frequency_set_dimension(two, ProbDist(std::move(p)));
    CHECK(alphax::abs(r.h - R("0.9999990463247741")) < R("1e-13"));
    CHECK(r.h < Real(1L, kP));
}

TEST_CASE("frequency dimension is maximized by the invariant law") {
    Base two(R("2"));
    auto moran = alphax::moran_dimension(two, DigitSet({1, 2}));
    // supported on {1,2}: dim(p) <= Moran dimension, equality at the Gibbs
    // weights p* = (2^{-h}, 4^{-h})
    for (const char* p1 : {"0.1", "0.25", "0.5", "0.7", "0.9"}) {
        Real a(p1, kP);
        auto r = alphax::frequency_set_dimension(two, ProbDist({a, Real(1L, kP) - a}));
        CHECK(r.h < moran.h + R("1e-12"));
    }
    Real star = alphax::pow(R("2"), -moran.h);
    auto best = alphax::frequency_set_dimension(
        two, ProbDist({star, Real(1L, kP) - star}));
    CHECK(best.h > moran.h - R("1e-9"));
    CHECK(best.h < moran.h + R("1e-12"));
}

TEST_CASE("frequency dimension: degenerate and invalid distributions") {
    Base two(R("2"));
    auto point = alphax::frequency_set_dimension(two, ProbDist({R("0"), R("0"), R("1")}));
    CHECK(point.degenerate);
    CHECK(point.h.is_zero());

    CHECK_THROWS_AS(ProbDist({R("0.5"), R("0.6")}), alphax::validation_error);
    CHECK_THROWS_AS(ProbDist({R("-0.1"), R("1.1")}), alphax::validation_error);
    CHECK_THROWS_AS(ProbDist({R("0.5"), R("0.499999")}), alphax::validation_error);
    CHECK_THROWS_AS(ProbDist({}), alphax::validation_error);
    CHECK_THROWS_AS(DigitSet({2, 2}), alphax::validation_error);
    CHECK_THROWS_AS(DigitSet({0, 1}), alphax::validation_error);
    CHECK_THROWS_AS(alphax::prefix_set_dimension(two, 0), alphax::validation_error);
}

TEST_CASE("random distributions never beat dimension 1") {
    for (int t = 0; t < 60; ++t) {
        std::uint64_t s = alphax::splitmix64_at(911, t);
        Base base(Real(std::to_string(1.3 + 7.0 * double(s >> 11) * 0x1p-53), kP));
        auto r = alphax::frequency_set_dimension(base, random_dist(912 + t, 2 + t % 7));
        CHECK(!(r.h > Real(1L, kP)));
    }
}
