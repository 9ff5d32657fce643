#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "alphax/base.hpp"
#include "alphax/real.hpp"

namespace alphax {

// Ordered pair of bases for the digit-transcoding map f: digits of x in base
// alpha, reread in base beta.
struct BasePair {
    Base alpha;
    Base beta;
};

struct GraphSample {
    std::vector<std::pair<Real, Real>> points;  // (x, f(x)), x strictly increasing
    std::size_t depth = 0;                      // digit truncation used
};

// Closed-form difference quotients along the cylinders containing x,
// log10((f(y_n) - f(x_n)) / (y_n - x_n)) for n = 1..n_max. Kept in log space:
// the quotient spans hundreds of orders of magnitude.
struct QuotientProbe {
    Real x;
    std::vector<long> digits;
    std::vector<double> log10_quotients;
};

struct SelfAffineReport {
    Real max_deviation;   // |f(G_i x) - G_i y| at the worst sample point
    Real bound_at_max;    // allowed combined truncation bound there
    bool within_bounds = true;
    std::size_t worst_index = 0;
};

// f(x) to `depth` digits: error_bound is the beta-side trailing factor,
// at most ((beta-1)/beta)^depth. f(0) = 0 and f(1) = 1 exactly; an exact
// all-ones remainder is folded in closed form (error_bound 0).
PartialValue base_change(const Real& x, const BasePair& pair, std::size_t depth = kDefaultDepth,
                         long digit_cap = kDigitCap);

// |f(x/alpha) - f(x)/beta|; bounded by twice the truncation tail.
Real functional_equation_residual(const Real& x, const BasePair& pair,
                                  std::size_t depth = kDefaultDepth);

// Smallest depth with ((beta-1)/beta)^depth <= target_tail; rejects depths
// beyond 4096 (beta too large for the budget).
std::size_t auto_depth(const BasePair& pair, double target_tail = 1e-12);

// Evaluate f on the uniform grid j/resolution plus the cylinder right
// endpoints with digit sum up to ~log2(resolution), sorted, exact duplicates
// removed. The parallel version and the serial reference agree exactly.
GraphSample graph_sample(const BasePair& pair, std::size_t depth, std::size_t resolution,
                         int threads = 0);
GraphSample graph_sample_serial(const BasePair& pair, std::size_t depth, std::size_t resolution);

// Push every sample point through G_i(x,y) = (T_i^alpha x, T_i^beta y) and
// compare f at the mapped x against the mapped y; deviations must stay
// within the combined truncation bounds (graph self-affinity).
SelfAffineReport self_affine_check(const GraphSample& sample, const BasePair& pair, long i,
                                   std::size_t depth = kDefaultDepth);

// Difference quotients of f along the nested cylinders containing x, in the
// closed form ((beta-1)/(alpha-1))^n (alpha/beta)^{S_n} evaluated in log10.
QuotientProbe derivative_probe(const Real& x, const BasePair& pair, std::size_t n_max,
                               long digit_cap = kDigitCap);

// Least-squares slope of log(box count) vs log(1/eps) over eps = 2^-j,
// j = j_min..j_max. Estimates the box-counting dimension of the graph.
double box_count_slope(const GraphSample& sample, int j_min = 4, int j_max = 10);

} // namespace alphax
