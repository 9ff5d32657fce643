#pragma once

#include <vector>

#include "alphax/base.hpp"
#include "alphax/real.hpp"

namespace alphax {

// Finite set of admissible digits, strictly sorted, all >= 1.
class DigitSet {
public:
    explicit DigitSet(std::vector<long> members);
    static DigitSet prefix(long n);  // {1, 2, ..., n}

    const std::vector<long>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }

private:
    std::vector<long> members_;
};

// Digit distribution (p_1, ..., p_n). Entries may be 0; an entry equal to 1
// (a point mass) is accepted as the degenerate limit. The total must be 1
// within 1e-12: inputs outside that are rejected, never renormalized.
class ProbDist {
public:
    explicit ProbDist(std::vector<Real> p);

    const std::vector<Real>& p() const { return p_; }
    std::size_t size() const { return p_.size(); }
    mpfr_prec_t prec() const { return prec_; }

private:
    std::vector<Real> p_;
    mpfr_prec_t prec_;
};

struct DimensionResult {
    Real h;
    Real residual;    // |Moran sum at h - 1|; 0 for closed forms
    int iterations = 0;
    bool degenerate = false;  // point-mass distribution: dimension 0
};

// Root of sum_{i in D} ((alpha-1)/alpha^i)^h = 1 on [0,1], by bisection.
// The sum is strictly decreasing in h, equals |D| at h = 0 and is < 1 at
// h = 1 for any proper finite D, so the root exists and is unique.
DimensionResult moran_dimension(const Base& base, const DigitSet& D, double tol = 1e-12);

// Full digit set N: the Moran sum at h = 1 is the geometric series
// sum (alpha-1)/alpha^i = 1 identically, so the dimension is 1.
DimensionResult moran_dimension_full(const Base& base);

// h(n) for D = {1..n} from the geometric-sum form
// (1 - alpha^{-hn}) (alpha-1)^h / (alpha^h - 1) = 1.
DimensionResult prefix_set_dimension(const Base& base, long n, double tol = 1e-12);

// Natural-log entropy -sum p_i log p_i; 0 log 0 := 0.
Real entropy(const ProbDist& p);

// sum i * p_i; always >= 1.
Real expected_value(const ProbDist& p);

// Dimension of the set of points whose digit-d frequency is p_d for every d:
// H(p) / (log(alpha) E(p) - log(alpha-1)). Degenerate H = 0 gives 0.
DimensionResult frequency_set_dimension(const Base& base, const ProbDist& p);

} // namespace alphax
