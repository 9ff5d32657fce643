#include "alphax/stats.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "alphax/rng.hpp"

namespace alphax {

namespace {

// Digits per orbit an auto-split simulation uses: keep the accumulated digit
// sum at or below P/2 bits of alpha so the orbit stays generic.
std::uint64_t auto_orbit_length(const Base& base) {
    double a = base.alpha().to_double();
    double mean_digit = a / (a - 1.0);
    double bits_per_digit = mean_digit * base.log2_alpha();
    double len = static_cast<double>(base.prec()) / 2.0 / bits_per_digit;
    if (len < 16.0) return 16;
    if (len > 1e9) return 1000000000ULL;
    return static_cast<std::uint64_t>(len);
}

void finalize(DigitStats& s, const Base& base) {
    const mpfr_prec_t P = base.prec();
    s.arithmetic_mean = Real(P);
    s.log_geometric_mean = Real(P);
    if (s.n == 0) return;
    Real n(static_cast<unsigned long>(s.n), P);
    mpfr_set_ui(s.arithmetic_mean.raw(), 0, MPFR_RNDN);
    // exact integer sums, then one division each
    Real dsum(P);
    mpfr_set_uj(dsum.raw(), s.digit_sum, MPFR_RNDN);
    s.arithmetic_mean = dsum / n;
    Real logsum(P);
    for (const auto& [d, c] : s.counts) {
        if (d == 1) continue;  // log 1 = 0
        Real ld = log(Real(d, P));
        Real cnt(P);
        mpfr_set_uj(cnt.raw(), c, MPFR_RNDN);
        logsum += ld * cnt;
    }
    s.log_geometric_mean = logsum / n;
}

// Tally `len` digits of the orbit starting at x0 into counts/digit_sum.
void tally_orbit(const Real& x0, const Base& base, std::uint64_t len, long digit_cap,
                 std::map<long, std::uint64_t>& counts, std::uint64_t& digit_sum) {
    Real x = x0;
    for (std::uint64_t i = 0; i < len; ++i) {
        StepResult s = expansion_step(x, base, digit_cap);
        ++counts[s.digit];
        digit_sum += static_cast<std::uint64_t>(s.digit);
        x = std::move(s.remainder);
    }
}

void merge_counts(std::map<long, std::uint64_t>& into,
                  const std::map<long, std::uint64_t>& from) {
    for (const auto& [d, c] : from) into[d] += c;
}

struct OrbitPlan {
    std::uint64_t n_orbits;
    std::uint64_t base_len;   // orbit k gets base_len + (k < excess)
    std::uint64_t excess;
};

OrbitPlan plan_orbits(const Base& base, const SimConfig& cfg) {
    if (cfg.n_digits == 0) throw validation_error("n_digits must be >= 1");
    std::uint64_t m = cfg.n_orbits;
    if (m == 0) {
        std::uint64_t len = auto_orbit_length(base);
        m = (cfg.n_digits + len - 1) / len;
    }
    if (m > cfg.n_digits) m = cfg.n_digits;
    return {m, cfg.n_digits / m, cfg.n_digits % m};
}

} // namespace

DigitStats orbit_stats(const Real& x0, const Base& base, std::uint64_t n, long digit_cap) {
    if (n == 0) throw validation_error("n must be >= 1");
    DigitStats s;
    s.n = n;
    tally_orbit(x0, base, n, digit_cap, s.counts, s.digit_sum);
    finalize(s, base);
    return s;
}

DigitStats sim_digit_stats_serial(const Base& base, const SimConfig& cfg) {
    OrbitPlan plan = plan_orbits(base, cfg);
    const std::uint64_t W = words_per_draw(base.prec());
    DigitStats s;
    s.n = cfg.n_digits;
    for (std::uint64_t k = 0; k < plan.n_orbits; ++k) {
        std::uint64_t len = plan.base_len + (k < plan.excess ? 1 : 0);
        Real x0 = uniform_open_closed(cfg.seed, k * W, base.prec());
        tally_orbit(x0, base, len, cfg.digit_cap, s.counts, s.digit_sum);
    }
    finalize(s, base);
    return s;
}

DigitStats sim_digit_stats(const Base& base, const SimConfig& cfg, int threads) {
    OrbitPlan plan = plan_orbits(base, cfg);
    const std::uint64_t W = words_per_draw(base.prec());
    DigitStats s;
    s.n = cfg.n_digits;

#ifdef _OPENMP
    const long m = static_cast<long>(plan.n_orbits);
    const int nth = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nth)
    {
        // thread-local tallies; integer merges commute, so the merge order
        // cannot change the aggregate
        std::map<long, std::uint64_t> local_counts;
        std::uint64_t local_sum = 0;
#pragma omp for schedule(static)
        for (long k = 0; k < m; ++k) {
            std::uint64_t uk = static_cast<std::uint64_t>(k);
            std::uint64_t len = plan.base_len + (uk < plan.excess ? 1 : 0);
            Real x0 = uniform_open_closed(cfg.seed, uk * W, base.prec());
            tally_orbit(x0, base, len, cfg.digit_cap, local_counts, local_sum);
        }
#pragma omp critical
        {
            merge_counts(s.counts, local_counts);
            s.digit_sum += local_sum;
        }
    }
#else
    (void)threads;
    for (std::uint64_t k = 0; k < plan.n_orbits; ++k) {
        std::uint64_t len = plan.base_len + (k < plan.excess ? 1 : 0);
        Real x0 = uniform_open_closed(cfg.seed, k * W, base.prec());
        tally_orbit(x0, base, len, cfg.digit_cap, s.counts, s.digit_sum);
    }
#endif
    finalize(s, base);
    return s;
}

Real theoretical_frequency(const Base& base, long d) {
    if (d < 1) throw validation_error("digit must be >= 1");
    return base.alpha_minus_one() * base.neg_pow(d);
}

Real theoretical_arithmetic_mean(const Base& base) {
    return base.alpha() / base.alpha_minus_one();
}

SeriesValue somos(const Real& x) {
    if (mpfr_nan_p(x.raw()) || !(x > 1L)) throw validation_error("somos requires x > 1");
    const mpfr_prec_t P = x.prec();
    const long max_terms = 1000000;

    Real inv = 1L / x;
    Real xp = inv * inv;  // x^{-d}, starting at d = 2
    Real sum(P);
    long d = 2;
    Real term(P);
    for (;; ++d) {
        term = log(Real(d, P)) * xp;
        sum += term;
        // stop once the term cannot move the sum at precision P
        if (term.exponent() < sum.exponent() - static_cast<mpfr_exp_t>(P)) break;
        if (d > max_terms) {
            throw precision_exhausted("somos series did not converge within " +
                                      std::to_string(max_terms) + " terms (x too close to 1)");
        }
        xp *= inv;
    }
    // tail after the last added term: geometric envelope with a factor 2
    // absorbing the log(d) growth
    Real tail_s = term * (x / (x - 1L)) * 2L;

    Real logG = (x - 1L) * sum;
    Real value = exp(logG);
    // d(exp((x-1)S)) = G * (x-1) * dS
    Real bound = value * (x - 1L) * tail_s;
    return {std::move(value), std::move(bound)};
}

SeriesValue euler_gamma_fn(const Real& x, const EulerGammaOptions& opt) {
    if (mpfr_nan_p(x.raw()) || x.sign() <= 0 || mpfr_cmp_ui(x.raw(), 1) > 0) {
        throw validation_error("euler_gamma_fn requires x in (0,1]");
    }
    const mpfr_prec_t P = x.prec();

    if (mpfr_cmp_ui(x.raw(), 1) == 0) {
        // partial sum telescopes: sum_{i<=N} (1/i - log((i+1)/i)) = H_N - log(N+1)
        const std::uint64_t N = opt.x1_terms;
        if (N < 2) throw validation_error("x1_terms must be >= 2");
        double h = harmonic_sum(N, opt.threads);
        Real value(P);
        mpfr_set_d(value.raw(), h, MPFR_RNDN);  // exact
        Real np1(P);
        mpfr_set_uj(np1.raw(), N + 1, MPFR_RNDN);
        value -= log(np1);
        // true tail lies in (1/(2N+2), 1/(2N)); H_N itself carries ~1e-16
        // relative double noise
        Real bound = Real(1L, P) / ldexp2(Real(static_cast<unsigned long>(N), P), 1);
        Real noise("3e-15", P);
        return {std::move(value), bound + noise};
    }

    const long max_terms = 50000000;
    Real sum(P);
    Real xp(1L, P);  // x^{i-1}
    Real term(P);
    const Real one(1L, 8);
    for (long i = 1;; ++i) {
        Real ri(i, P);
        // c_i = 1/i - log(1 + 1/i), positive and ~ 1/(2 i^2)
        Real c = one / ri - log((ri + 1L) / ri);
        term = xp * c;
        sum += term;
        if (term.sign() == 0 ||
            term.exponent() < sum.exponent() - static_cast<mpfr_exp_t>(P)) {
            break;
        }
        if (i > max_terms) {
            throw precision_exhausted("gamma series did not converge within budget (x too close to 1)");
        }
        xp *= x;
    }
    // tail <= c_{I+1} * x^I / (1-x) <= last term * x/(1-x), as c decreases
    Real bound = term * (x / (one - x));
    return {std::move(sum), std::move(bound)};
}

Real somos_identity_check(const Real& x) {
    SeriesValue g = somos(x);
    SeriesValue eg = euler_gamma_fn(1L / x);
    Real rhs = (x / (x - 1L)) * exp(-(eg.value / x));
    return abs(g.value - rhs);
}

std::vector<std::pair<Real, Real>> figure1_data(const std::vector<Real>& grid) {
    std::vector<std::pair<Real, Real>> out;
    out.reserve(grid.size());
    for (const Real& x : grid) {
        out.emplace_back(x, somos(x).value);
    }
    return out;
}

namespace {

constexpr std::uint64_t kBlock = 65536;

// sum of 1/i over [lo, hi), Kahan-compensated
double harmonic_block(std::uint64_t lo, std::uint64_t hi) {
    double s = 0.0, c = 0.0;
    for (std::uint64_t i = lo; i < hi; ++i) {
        double y = 1.0 / static_cast<double>(i) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double combine_blocks(const std::vector<double>& part) {
    double s = 0.0, c = 0.0;
    for (double p : part) {
        double y = p - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

} // namespace

double harmonic_sum_serial(std::uint64_t n) {
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> part(nblocks);
    for (std::uint64_t j = 0; j < nblocks; ++j) {
        std::uint64_t lo = 1 + j * kBlock;
        std::uint64_t hi = std::min(n + 1, lo + kBlock);
        part[j] = harmonic_block(lo, hi);
    }
    return combine_blocks(part);
}

double harmonic_sum(std::uint64_t n, int threads) {
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> part(nblocks);
#ifdef _OPENMP
    const int nth = threads > 0 ? threads : omp_get_max_threads();
    const long m = static_cast<long>(nblocks);
#pragma omp parallel for schedule(static) num_threads(nth)
    for (long j = 0; j < m; ++j) {
        std::uint64_t lo = 1 + static_cast<std::uint64_t>(j) * kBlock;
        std::uint64_t hi = std::min(n + 1, lo + kBlock);
        part[static_cast<std::size_t>(j)] = harmonic_block(lo, hi);
    }
#else
    (void)threads;
    for (std::uint64_t j = 0; j < nblocks; ++j) {
        std::uint64_t lo = 1 + j * kBlock;
        std::uint64_t hi = std::min(n + 1, lo + kBlock);
        part[j] = harmonic_block(lo, hi);
    }
#endif
    // blocks combine in index order regardless of which thread produced them
    return combine_blocks(part);
}

} // namespace alphax
