#include <doctest.h>

#include <vector>

#include "alphax/base.hpp"
#include "alphax/errors.hpp"
#include "alphax/real.hpp"
#include "alphax/rng.hpp"

using alphax::Base;
using alphax::DigitSeq;
using alphax::Real;
using alphax::Tail;

namespace {

constexpr mpfr_prec_t kP = 256;

Real R(const char* s) { return Real(s, kP); }

// Independent first-digit oracle: divide 1 by alpha repeatedly at twice the
// working precision until the power drops below x. No shared code with
// digit_of beyond the comparison operator.
long digit_by_scan(const Real& x, const Real& alpha) {
    Real p(1L, 2 * kP);
    for (long j = 1; j <= 100000; ++j) {
        p = p / alpha;
        if (x > p) return j;
    }
    return -1;
}

std::vector<Real> seeded_points(std::uint64_t seed, int count) {
    std::vector<Real> xs;
    xs.reserve(count);
    const std::uint64_t w = alphax::words_per_draw(kP);
    for (int i = 0; i < count; ++i)
        xs.push_back(alphax::uniform_open_closed(seed, std::uint64_t(i) * w, kP));
    return xs;
}

} // namespace

TEST_CASE("seeded uniforms: reproducible, in (0,1], index-addressable") {
    Real a = alphax::uniform_open_closed(7, 0, kP);
    Real b = alphax::uniform_open_closed(7, 0, kP);
    Real c = alphax::uniform_open_closed(7, alphax::words_per_draw(kP), kP);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.sign() > 0);
    CHECK(!(a > Real(1L, kP)));
    // different seeds decorrelate at index 0 too
    CHECK(a != alphax::uniform_open_closed(8, 0, kP));
}

TEST_CASE("digit cells: frozen examples") {
    Base two(R("2"));
    CHECK(alphax::digit_of(R("1"), two) == 1);
    CHECK(alphax::digit_of(R("0.6"), two) == 1);
    CHECK(alphax::digit_of(R("0.5"), two) == 2);    // boundary belongs to the deeper cell
    CHECK(alphax::digit_of(R("0.26"), two) == 2);
    CHECK(alphax::digit_of(R("0.25"), two) == 3);

    Base threehalf(R("1.5"));
    CHECK(alphax::digit_of(R("1"), threehalf) == 1);
    CHECK(alphax::digit_of(R("0.7"), threehalf) == 1);   // 0.7 > 2/3
    CHECK(alphax::digit_of(R("0.5"), threehalf) == 2);   // 4/9 < 0.5 <= 2/3
}

TEST_CASE("digit_of agrees with a linear-scan oracle") {
    for (const char* a : {"1.5", "2", "3", "10"}) {
        Base base(R(a));
        Real alpha_wide(a, 2 * kP);
        auto xs = seeded_points(101, 200);
        for (const Real& x : xs)
            CHECK(alphax::digit_of(x, base) == digit_by_scan(x, alpha_wide));
    }
}

TEST_CASE("encode: frozen digit strings") {
    Base two(R("2"));
    DigitSeq s = alphax::encode(R("0.25"), two, 3);
    REQUIRE(s.digits.size() == 3);
    CHECK(s.digits == std::vector<long>{3, 1, 1});

    DigitSeq ones = alphax::encode(R("1"), two, 5);
    CHECK(ones.digits == std::vector<long>{1, 1, 1, 1, 1});

    // 1/4 in base 3: dyadic, so exactly representable, and every shift stays
    // dyadic: 1/4 -> 5/8 -> 7/16 -> 5/32, giving digits 2, 1, 1, 2
    Base three(R("3"));
    DigitSeq t = alphax::encode(R("0.25"), three, 4);
    CHECK(t.digits == std::vector<long>{2, 1, 1, 2});
}

TEST_CASE("decode: frozen values and all-ones tails") {
    Base two(R("2"));
    auto pv = alphax::decode({{1, 1, 1}, Tail::truncated}, two);
    CHECK(pv.value == R("0.875"));
    CHECK(pv.error_bound == R("0.125"));

    auto full = alphax::decode({{1, 1, 1}, Tail::all_ones}, two);
    CHECK(full.value == R("1"));
    CHECK(full.error_bound.is_zero());

    // (3) followed by all ones is exactly 1/4: the encode(0.25) round trip
    auto quarter = alphax::decode({{3}, Tail::all_ones}, two);
    CHECK(quarter.value == R("0.25"));
}

TEST_CASE("cylinders: frozen intervals, membership, tiling") {
    Base two(R("2"));
    auto c1 = alphax::cylinder_interval({{1}, Tail::truncated}, two);
    CHECK(c1.lo == R("0.5"));
    CHECK(c1.hi == R("1"));

    auto c2 = alphax::cylinder_interval({{2}, Tail::truncated}, two);
    CHECK(c2.lo == R("0.25"));
    CHECK(c2.hi == R("0.5"));

    auto c12 = alphax::cylinder_interval({{1, 2}, Tail::truncated}, two);
    CHECK(c12.lo == R("0.625"));
    CHECK(c12.hi == R("0.75"));
    CHECK(c12.contains(R("0.75")));
    CHECK(!c12.contains(R("0.625")));  // half-open on the left

    // children (2, d) tile (0.25, 0.5] from the right: hi of (2,1) is hi of
    // (2), and each (2, d+1) abuts (2, d) exactly
    auto parent = alphax::cylinder_interval({{2}, Tail::truncated}, two);
    auto prev = alphax::cylinder_interval({{2, 1}, Tail::truncated}, two);
    CHECK(prev.hi == parent.hi);
    for (long d = 2; d <= 10; ++d) {
        auto child = alphax::cylinder_interval({{2, d}, Tail::truncated}, two);
        CHECK(child.hi == prev.lo);
        CHECK(parent.contains(child.hi));
        prev = child;
    }
}

TEST_CASE("x lies in the cylinder of its own prefix") {
    for (const char* a : {"1.5", "2", "3", "10"}) {
        Base base(R(a));
        for (const Real& x : seeded_points(202, 50)) {
            DigitSeq seq = alphax::encode(x, base, 40);
            auto iv = alphax::cylinder_interval(seq, base);
            CHECK(iv.contains(x));
            // decode is the left endpoint, decode + bound the right one
            auto pv = alphax::decode(seq, base);
            CHECK(pv.value == iv.lo);
            CHECK(!(pv.value > x));
        }
    }
}

TEST_CASE("terminating expansions round-trip exactly (alpha = 2)") {
    Base two(R("2"));
    for (int i = 0; i < 50; ++i) {
        // x = (K+1)/2^64 is exactly representable; its orbit reaches the
        // fixed point 1, so some prefix plus an all-ones tail recovers x bit
        // for bit.
        std::uint64_t k = alphax::splitmix64_at(303, i);
        Real x = alphax::ldexp2(Real(static_cast<unsigned long>(k), kP) + Real(1L, kP), -64);
        DigitSeq seq = alphax::encode(x, two, 128);
        std::size_t p = seq.digits.size();
        while (p > 0 && seq.digits[p - 1] == 1) --p;
        REQUIRE(p < seq.digits.size());  // the all-ones tail must be visible
        DigitSeq head{std::vector<long>(seq.digits.begin(), seq.digits.begin() + p),
                      Tail::all_ones};
        if (head.digits.empty()) head.digits.push_back(1);  // x == 1 edge
        CHECK(alphax::decode(head, two).value == x);
    }
}

TEST_CASE("shift map conjugation: digits of T(x) are the shifted digits of x") {
    for (const char* a : {"1.5", "3"}) {
        Base base(R(a));
        for (const Real& x : seeded_points(404, 40)) {
            DigitSeq full = alphax::encode(x, base, 12);
            Real tx = alphax::shift_map(x, base);
            DigitSeq shifted = alphax::encode(tx, base, 11);
            CHECK(std::vector<long>(full.digits.begin() + 1, full.digits.end()) ==
                  shifted.digits);
        }
    }
}

TEST_CASE("digit order reverses value order at the first disagreement") {
    Base base(R("2.5"));
    auto xs = seeded_points(505, 60);
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
        const Real& x = xs[i];
        const Real& y = xs[i + 1];
        auto dx = alphax::encode(x, base, 30).digits;
        auto dy = alphax::encode(y, base, 30).digits;
        std::size_t j = 0;
        while (j < dx.size() && dx[j] == dy[j]) ++j;
        if (j == dx.size()) continue;  // same 30-digit cylinder: no claim
        if (x < y)
            CHECK(dx[j] > dy[j]);
        else
            CHECK(dx[j] < dy[j]);
    }
}

TEST_CASE("forward_map sections the shift: T_i maps (0,1] onto cell i") {
    for (const char* a : {"1.5", "2", "10"}) {
        Base base(R(a));
        Real tol = alphax::ldexp2(Real(1L, kP), -240);
        int idx = 0;
        for (const Real& y : seeded_points(606, 30)) {
            long i = 1 + (idx++ % 5);
            Real x = alphax::forward_map(i, y, base);
            CHECK(alphax::digit_of(x, base) == i);
            Real back = alphax::shift_map(x, base);
            CHECK(alphax::abs(back - y) < tol);
        }
        // right endpoint: T_1(1) = 1 up to one rounding of alpha * (1/alpha)
        Real top = alphax::forward_map(1, Real(1L, kP), base);
        CHECK(alphax::abs(top - Real(1L, kP)) < tol);
    }
}

TEST_CASE("invalid inputs are rejected") {
    Base two(R("2"));
    CHECK_THROWS_AS(alphax::encode(Real(0L, kP), two, 4), alphax::validation_error);
    CHECK_THROWS_WITH_AS(alphax::encode(Real(0L, kP), two, 4),
                         "zero has no expansion", alphax::validation_error);
    CHECK_THROWS_AS(alphax::encode(R("-0.5"), two, 4), alphax::validation_error);
    CHECK_THROWS_AS(alphax::encode(R("1.5"), two, 4), alphax::validation_error);
    CHECK_THROWS_AS(alphax::encode(R("0.5"), two, 0), alphax::validation_error);
    CHECK_THROWS_AS(Base(R("1")), alphax::validation_error);
    CHECK_THROWS_AS(Base(R("0.5")), alphax::validation_error);
    CHECK_THROWS_AS(alphax::decode({{2, 0, 1}, Tail::truncated}, two),
                    alphax::validation_error);
    CHECK_THROWS_AS(alphax::decode({{}, Tail::truncated}, two), alphax::validation_error);
    CHECK_THROWS_AS(alphax::forward_map(0, R("0.5"), two), alphax::validation_error);
    CHECK_THROWS_AS(Real("not-a-number", kP), alphax::validation_error);

    // a positive x too small for any digit under the cap exhausts precision
    CHECK_THROWS_AS(alphax::encode(Real("1e-400000", kP), two, 4),
                    alphax::precision_exhausted);
}

TEST_CASE("Real: parsing, printing, precision propagation") {
    CHECK(R("0.5").to_double() == 0.5);
    CHECK(alphax::sig_digits_for(256) == 78);
    Real a("0.1", 256);
    Real b("0.1", 128);
    CHECK((a + b).prec() == 256);
    CHECK(a.str(10) == std::string("0.1"));
    // powers of two are exact at any precision
    CHECK(alphax::ldexp2(Real(1L, 64), -64) == alphax::pow_si(R("2"), -64, 64));
    CHECK(alphax::within_one_ulp(a, a));
}
