#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "alphax/errors.hpp"
#include "alphax/real.hpp"

namespace alphax {

// Hard stop for digit extraction: a digit beyond this means x is
// indistinguishable from 0 at the working precision.
inline constexpr long kDigitCap = 1000000;

// Default truncation length for digit sequences; ((alpha-1)/alpha)^64 is
// below 1e-19 already for alpha = 2.
inline constexpr std::size_t kDefaultDepth = 64;

// How a finite digit list is to be read: a truncated prefix of some longer
// expansion, or the exact point whose remaining digits are all 1 (the
// canonical completion: the all-ones tail sums to exactly the trailing
// factor).
enum class Tail { truncated, all_ones };

struct DigitSeq {
    std::vector<long> digits;
    Tail tail = Tail::truncated;
};

// Truncated series value plus an upper bound on what the discarded tail can
// contribute. The bound covers truncation only, not precision-P rounding
// (which is smaller by hundreds of orders of magnitude at default settings).
struct PartialValue {
    Real value;
    Real error_bound;
};

// Half-open interval (lo, hi].
struct CylinderInterval {
    Real lo;
    Real hi;

    bool contains(const Real& x) const { return lo < x && x <= hi; }
    Real length() const { return hi - lo; }
};

// A base alpha > 1 together with cached powers alpha^{-d}. Immutable after
// construction; concurrent reads are safe.
class Base {
public:
    explicit Base(Real alpha);
    Base(const std::string& alpha, mpfr_prec_t prec);

    const Real& alpha() const { return alpha_; }
    const Real& alpha_minus_one() const { return am1_; }
    mpfr_prec_t prec() const { return prec_; }
    double log2_alpha() const { return log2_alpha_; }

    // alpha^{-d} and alpha^{d} at working precision, correctly rounded
    // (cached for d up to kPowCache, computed on the fly beyond).
    Real neg_pow(long d) const;
    Real pos_pow(long d) const;
    // alpha^{-d} at 2P bits, for comparisons that land within one ulp of a
    // cylinder boundary.
    Real neg_pow_wide(long d) const;
    Real pos_pow_wide(long d) const;

private:
    static constexpr long kPowCache = 1024;

    Real alpha_;
    Real am1_;
    mpfr_prec_t prec_;
    double log2_alpha_;
    std::vector<Real> neg_cache_;
};

struct StepResult {
    long digit;
    Real remainder;  // T(x), in (0,1]
};

// The unique d with alpha^{-d} < x <= alpha^{-(d-1)}. Comparisons against
// the cached P-bit powers are re-evaluated at 2P bits whenever x lands
// within one ulp of a boundary, so the half-open convention is honored for
// the value x actually represents. Throws precision_exhausted if d would
// exceed digit_cap.
long digit_of(const Real& x, const Base& base, long digit_cap = kDigitCap);

// T(x) = (alpha^d x - 1)/(alpha - 1) where d = digit_of(x).
Real shift_map(const Real& x, const Base& base, long digit_cap = kDigitCap);

// digit_of and shift_map in one pass (they share the power lookup).
StepResult expansion_step(const Real& x, const Base& base, long digit_cap = kDigitCap);

// First k digits of the expansion of x.
DigitSeq encode(const Real& x, const Base& base, std::size_t k, long digit_cap = kDigitCap);

// value = sum over the prefix of (alpha-1)^{i-1} alpha^{-(d_1+...+d_i)};
// with an all-ones tail the closed-form completion is added and the error
// bound is 0; truncated sequences report the trailing factor as the bound.
PartialValue decode(const DigitSeq& digits, const Base& base);

// T_i(x) = (alpha-1)/alpha^i * x + 1/alpha^i.
Real forward_map(long i, const Real& x, const Base& base);

// The interval of points whose expansion starts with the given digits:
// (P_k, P_k + F_k] where P_k is the truncated decode value and F_k the
// trailing factor. Length is (alpha-1)^k alpha^{-(d_1+...+d_k)}.
CylinderInterval cylinder_interval(const DigitSeq& digits, const Base& base);

} // namespace alphax
