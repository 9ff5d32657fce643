#include "alphax/base.hpp"

#include <utility>

namespace alphax {

namespace {

// Sign of (x - alpha^{-d}) for d >= 1, deciding at 2P bits whenever x lands
// within one ulp of the cached P-bit power; d = 0 compares against 1 exactly.
int cmp_boundary(const Real& x, long d, const Base& base) {
    if (d == 0) return mpfr_cmp_ui(x.raw(), 1);
    Real p = base.neg_pow(d);
    if (!within_one_ulp(x, p)) return x < p ? -1 : 1;
    Real wide = base.neg_pow_wide(d);
    if (x < wide) return -1;
    if (x > wide) return 1;
    return 0;
}

void check_unit_interval_open(const Real& x) {
    if (x.is_zero()) throw validation_error("zero has no expansion");
    if (x.sign() < 0 || mpfr_cmp_ui(x.raw(), 1) > 0 || mpfr_nan_p(x.raw())) {
        throw validation_error("x must lie in (0,1]");
    }
}

} // namespace

Base::Base(Real alpha) : alpha_(std::move(alpha)), prec_(alpha_.prec()) {
    if (mpfr_nan_p(alpha_.raw()) || !(alpha_ > 1L)) {
        throw validation_error("base must be a real number > 1");
    }
    am1_ = alpha_ - 1L;
    log2_alpha_ = alphax::log2(alpha_).to_double();
    neg_cache_.reserve(kPowCache + 1);
    for (long d = 0; d <= kPowCache; ++d) {
        neg_cache_.push_back(pow_si(alpha_, -d, prec_));
    }
}

Base::Base(const std::string& alpha, mpfr_prec_t prec) : Base(Real(alpha, prec)) {}

Real Base::neg_pow(long d) const {
    if (d >= 0 && d <= kPowCache) return neg_cache_[static_cast<std::size_t>(d)];
    return pow_si(alpha_, -d, prec_);
}

Real Base::pos_pow(long d) const { return pow_si(alpha_, d, prec_); }

Real Base::neg_pow_wide(long d) const { return pow_si(alpha_, -d, 2 * prec_); }

Real Base::pos_pow_wide(long d) const { return pow_si(alpha_, d, 2 * prec_); }

long digit_of(const Real& x, const Base& base, long digit_cap) {
    check_unit_interval_open(x);

    // Initial guess from binary exponents: x in [2^(e-1), 2^e) means
    // -log2(x) is within 1 of (1-e), so d is near (1-e)/log2(alpha) + 1.
    double neg_log2_x = 1.0 - static_cast<double>(x.exponent());
    long d = 1;
    if (base.log2_alpha() > 0 && neg_log2_x > 0) {
        double guess = neg_log2_x / base.log2_alpha() + 1.0;
        if (guess > static_cast<double>(digit_cap)) guess = static_cast<double>(digit_cap);
        d = std::max(1L, static_cast<long>(guess));
    }

    // The map j -> sign(x - alpha^{-j}) is nondecreasing in j; the digit is
    // the smallest j where it turns positive.
    if (cmp_boundary(x, d, base) <= 0) {
        do {
            ++d;
            if (d > digit_cap) {
                throw precision_exhausted("digit exceeds cap " + std::to_string(digit_cap) +
                                          "; x is indistinguishable from 0 at this precision");
            }
        } while (cmp_boundary(x, d, base) <= 0);
    } else {
        while (d > 1 && cmp_boundary(x, d - 1, base) > 0) --d;
    }
    if (d > digit_cap) {
        throw precision_exhausted("digit exceeds cap " + std::to_string(digit_cap) +
                                  "; x is indistinguishable from 0 at this precision");
    }
    return d;
}

StepResult expansion_step(const Real& x, const Base& base, long digit_cap) {
    const long d = digit_of(x, base, digit_cap);
    const mpfr_prec_t P = base.prec();
    const Real one(1L, 8);

    // t = alpha^d * x - 1 in a single rounding. When x sits next to the
    // cylinder boundary the true t is tiny and the rounding error of the
    // P-bit power can dominate it, so redo those cases with a 2P-bit power.
    Real t = fms(base.pos_pow(d), x, one, P);
    if (t.sign() <= 0 || t.exponent() < -static_cast<mpfr_exp_t>(P / 2)) {
        Real tw = fms(base.pos_pow_wide(d), x, one, 2 * P);
        if (tw.sign() <= 0) {
            throw precision_exhausted("shift remainder fell below resolution at digit " +
                                      std::to_string(d));
        }
        t = at_prec(tw, P);
    }

    Real r = t / base.alpha_minus_one();
    if (mpfr_cmp_ui(r.raw(), 1) > 0) r = Real(1L, P);  // clamp an ulp of overshoot
    return {d, std::move(r)};
}

Real shift_map(const Real& x, const Base& base, long digit_cap) {
    return expansion_step(x, base, digit_cap).remainder;
}

DigitSeq encode(const Real& x, const Base& base, std::size_t k, long digit_cap) {
    if (k < 1) throw validation_error("digit count must be >= 1");
    DigitSeq out;
    out.digits.reserve(k);
    out.tail = Tail::truncated;
    Real cur = x;
    for (std::size_t i = 0; i < k; ++i) {
        try {
            StepResult s = expansion_step(cur, base, digit_cap);
            out.digits.push_back(s.digit);
            cur = std::move(s.remainder);
        } catch (const precision_exhausted& e) {
            throw precision_exhausted(std::string(e.what()) + " (position " +
                                      std::to_string(i + 1) + ")");
        }
    }
    return out;
}

PartialValue decode(const DigitSeq& digits, const Base& base) {
    if (digits.digits.empty()) throw validation_error("digit sequence is empty");
    const mpfr_prec_t P = base.prec();

    Real sum(P);
    Real term(P);  // (alpha-1)^{i-1} * alpha^{-(d_1+...+d_i)}
    bool first = true;
    for (long d : digits.digits) {
        if (d < 1) throw validation_error("digits must be >= 1");
        if (first) {
            term = base.neg_pow(d);
            first = false;
        } else {
            term = term * base.alpha_minus_one() * base.neg_pow(d);
        }
        sum += term;
    }
    Real trailing = term * base.alpha_minus_one();
    if (digits.tail == Tail::all_ones) {
        // the all-ones continuation contributes exactly the trailing factor
        return {sum + trailing, Real(0L, P)};
    }
    return {std::move(sum), std::move(trailing)};
}

Real forward_map(long i, const Real& x, const Base& base) {
    if (i < 1) throw validation_error("branch index must be >= 1");
    if (x.sign() < 0 || mpfr_cmp_ui(x.raw(), 1) > 0 || mpfr_nan_p(x.raw())) {
        throw validation_error("x must lie in [0,1]");
    }
    // T_i(x) = alpha^{-i} * ((alpha-1)x + 1)
    const Real one(1L, 8);
    Real u = fma(base.alpha_minus_one(), x, one, base.prec());
    return u * base.neg_pow(i);
}

CylinderInterval cylinder_interval(const DigitSeq& digits, const Base& base) {
    DigitSeq prefix = digits;
    prefix.tail = Tail::truncated;
    PartialValue pv = decode(prefix, base);
    Real hi = pv.value + pv.error_bound;
    return {std::move(pv.value), std::move(hi)};
}

} // namespace alphax
