#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "alphax/base.hpp"
#include "alphax/real.hpp"

namespace alphax {

// Digit tallies over one or more orbits, with the two means of interest.
// Means are derived from the integer tallies, so they are exactly
// reproducible for a fixed (seed, n, alpha, P) no matter how the orbits were
// scheduled across threads.
struct DigitStats {
    std::map<long, std::uint64_t> counts;
    std::uint64_t n = 0;
    std::uint64_t digit_sum = 0;
    Real arithmetic_mean;      // digit_sum / n
    Real log_geometric_mean;   // (1/n) * sum of log(d_i)
};

// Monte Carlo configuration. n_orbits = 0 lets the driver pick the split so
// that each orbit stays well inside its precision budget (a P-bit start
// supports about P/2 / (E[d]*log2(alpha)) generic digits; beyond that a
// dyadic alpha's exact orbit would collapse to the fixed point 1).
struct SimConfig {
    std::uint64_t seed = 1;
    std::uint64_t n_digits = 0;
    std::uint64_t n_orbits = 0;
    long digit_cap = kDigitCap;
};

// Series value with an upper bound on the truncated tail.
struct SeriesValue {
    Real value;
    Real tail_bound;
};

// Tally the first n digits of the orbit of x0.
DigitStats orbit_stats(const Real& x0, const Base& base, std::uint64_t n,
                       long digit_cap = kDigitCap);

// Aggregate digit statistics over seeded random orbits; the parallel version
// and the serial reference produce identical tallies for equal configs.
DigitStats sim_digit_stats(const Base& base, const SimConfig& cfg, int threads = 0);
DigitStats sim_digit_stats_serial(const Base& base, const SimConfig& cfg);

// Limit frequency of digit d: (alpha-1)/alpha^d.
Real theoretical_frequency(const Base& base, long d);

// Limit arithmetic mean of digits: alpha/(alpha-1).
Real theoretical_arithmetic_mean(const Base& base);

// G(x): the limit geometric mean of the digits in base x, via
// log G(x) = (x-1) * sum_{d>=2} log(d) / x^d, truncated once a term drops
// below 2^{-P} of the running sum.
SeriesValue somos(const Real& x);

// gamma(x) = sum_{i>=1} x^{i-1} (1/i - log((i+1)/i)) for x in (0,1].
// For x < 1 the series is summed until a term drops below 2^{-P} of the
// running sum. For x = 1 the partial sum telescopes to H_N - log(N+1); it is
// evaluated at N = x1_terms with tail bound 1/(2N).
struct EulerGammaOptions {
    std::uint64_t x1_terms = 125000000;
    int threads = 0;
};
SeriesValue euler_gamma_fn(const Real& x, const EulerGammaOptions& opt = {});

// |G(x) - (x/(x-1)) * exp(-gamma(1/x)/x)|.
Real somos_identity_check(const Real& x);

// (x, G(x)) pairs for plotting.
std::vector<std::pair<Real, Real>> figure1_data(const std::vector<Real>& grid);

// H_n = sum_{i=1..n} 1/i in double precision, Kahan-compensated over fixed
// 65536-element blocks combined in index order: bit-identical results for
// any thread count. Building block of euler_gamma_fn(1); exposed for the
// benchmark and the determinism tests.
double harmonic_sum_serial(std::uint64_t n);
double harmonic_sum(std::uint64_t n, int threads = 0);

} // namespace alphax
