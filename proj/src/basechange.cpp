#include "alphax/basechange.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alphax {

PartialValue base_change(const Real& x, const BasePair& pair, std::size_t depth,
                         long digit_cap) {
    if (depth < 1) throw validation_error("depth must be >= 1");
    if (mpfr_nan_p(x.raw()) || x.sign() < 0 || mpfr_cmp_ui(x.raw(), 1) > 0) {
        throw validation_error("x must lie in [0,1]");
    }
    const mpfr_prec_t P = pair.beta.prec();
    if (x.sign() == 0) return {Real(0L, P), Real(0L, P)};  // f(0) = 0

    // Stream digits out of alpha and the series terms into beta:
    // term_i = (beta-1)^{i-1} beta^{-S_i}, trailing factor F_i = term_i (beta-1).
    Real sum(P);
    Real trailing(1L, P);  // F_0 = 1
    Real cur = x;
    for (std::size_t i = 0; i < depth; ++i) {
        if (mpfr_cmp_ui(cur.raw(), 1) == 0) {
            // remaining digits are all 1: the tail contributes exactly F_i
            return {sum + trailing, Real(0L, P)};
        }
        StepResult s = expansion_step(cur, pair.alpha, digit_cap);
        Real term = trailing * pair.beta.neg_pow(s.digit);
        sum += term;
        trailing = term * pair.beta.alpha_minus_one();
        cur = std::move(s.remainder);
    }
    return {std::move(sum), std::move(trailing)};
}

Real functional_equation_residual(const Real& x, const BasePair& pair, std::size_t depth) {
    if (mpfr_nan_p(x.raw()) || x.sign() <= 0 || mpfr_cmp_ui(x.raw(), 1) > 0) {
        throw validation_error("x must lie in (0,1]");
    }
    Real lhs = base_change(x / pair.alpha.alpha(), pair, depth).value;
    Real rhs = base_change(x, pair, depth).value / pair.beta.alpha();
    return abs(lhs - rhs);
}

std::size_t auto_depth(const BasePair& pair, double target_tail) {
    if (!(target_tail > 0) || target_tail >= 1) {
        throw validation_error("target tail must lie in (0,1)");
    }
    const double b = pair.beta.alpha().to_double();
    const double log_ratio = std::log1p(-1.0 / b);  // log((b-1)/b), < 0
    const double needed = std::ceil(std::log(target_tail) / log_ratio);
    if (!(needed <= 4096.0)) {
        throw validation_error("required depth exceeds the 4096-digit cap for this beta");
    }
    return static_cast<std::size_t>(std::max(1.0, needed));
}

namespace {

// Right endpoints P_k + F_k (in base alpha) of every cylinder with digit sum
// <= budget. A string ending in 1 shares its parent's endpoint exactly, but
// recomputing it through the deeper recursion rounds differently and would
// leave ulp-level near-duplicates in the sample, so only strings ending in a
// digit >= 2 contribute a point (their endpoints are pairwise distinct).
void collect_endpoints(const Base& a, long budget, long sum_left, const Real& prefix_value,
                       const Real& trailing, std::vector<Real>& out) {
    for (long d = 1; d <= sum_left; ++d) {
        Real term = trailing * a.neg_pow(d);
        Real value = prefix_value + term;
        Real new_trailing = term * a.alpha_minus_one();
        if (d >= 2) out.push_back(value + new_trailing);  // decode(prefix + d, all-ones)
        collect_endpoints(a, budget, sum_left - d, value, new_trailing, out);
    }
}

std::vector<Real> sample_xs(const BasePair& pair, std::size_t resolution) {
    if (resolution < 2) throw validation_error("resolution must be >= 2");
    const mpfr_prec_t P = pair.alpha.prec();
    std::vector<Real> xs;
    const Real res(static_cast<long>(resolution), P);
    for (std::size_t j = 1; j <= resolution; ++j) {
        xs.push_back(Real(static_cast<long>(j), P) / res);
    }
    long budget = std::max(2L, static_cast<long>(std::floor(std::log2(static_cast<double>(resolution)))) - 1);
    budget = std::min(budget, 20L);
    collect_endpoints(pair.alpha, budget, budget, Real(0L, P), Real(1L, P), xs);

    // endpoint sums are <= 1 exactly, but their rounded evaluations can land
    // an ulp above; clamp so every sample stays inside the domain
    const Real one(1L, P);
    for (Real& v : xs) {
        if (v > one) v = one;
    }

    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](const Real& a, const Real& b) { return a == b; }),
             xs.end());
    return xs;
}

} // namespace

GraphSample graph_sample_serial(const BasePair& pair, std::size_t depth, std::size_t resolution) {
    std::vector<Real> xs = sample_xs(pair, resolution);
    GraphSample g;
    g.depth = depth;
    g.points.reserve(xs.size());
    for (const Real& x : xs) {
        g.points.emplace_back(x, base_change(x, pair, depth).value);
    }
    return g;
}

GraphSample graph_sample(const BasePair& pair, std::size_t depth, std::size_t resolution,
                         int threads) {
    std::vector<Real> xs = sample_xs(pair, resolution);
    std::vector<Real> ys(xs.size());
#ifdef _OPENMP
    const long n = static_cast<long>(xs.size());
    const int nth = threads > 0 ? threads : omp_get_max_threads();
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(nth)
    for (long i = 0; i < n; ++i) {
        try {
            ys[static_cast<std::size_t>(i)] =
                base_change(xs[static_cast<std::size_t>(i)], pair, depth).value;
        } catch (...) {
            // exceptions may not cross the parallel region; hand one over
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
#else
    (void)threads;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ys[i] = base_change(xs[i], pair, depth).value;
    }
#endif
    GraphSample g;
    g.depth = depth;
    g.points.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        g.points.emplace_back(std::move(xs[i]), std::move(ys[i]));
    }
    return g;
}

SelfAffineReport self_affine_check(const GraphSample& sample, const BasePair& pair, long i,
                                   std::size_t depth) {
    if (sample.points.empty()) throw validation_error("sample is empty");
    if (i < 1) throw validation_error("branch index must be >= 1");
    const mpfr_prec_t P = pair.beta.prec();

    // y-error carried by the sample points, mapped through the contraction
    const Real ratio = pair.beta.alpha_minus_one() * pair.beta.neg_pow(1);
    Real sample_tail = pow_si(ratio, static_cast<long>(sample.depth), P);
    Real mapped_tail = pair.beta.alpha_minus_one() * pair.beta.neg_pow(i) * sample_tail;
    // rounding slack: the re-evaluation works at precision P
    const Real slack = ldexp2(Real(1L, P), -static_cast<long>(P - 16));

    SelfAffineReport rep{Real(0L, P), Real(0L, P), true, 0};
    Real worst_margin(P);
    mpfr_set_si(worst_margin.raw(), -1, MPFR_RNDN);
    bool have = false;
    for (std::size_t k = 0; k < sample.points.size(); ++k) {
        const auto& [x, y] = sample.points[k];
        Real xi = forward_map(i, x, pair.alpha);
        Real yi = forward_map(i, y, pair.beta);
        PartialValue fv = base_change(xi, pair, depth);
        Real dev = abs(fv.value - yi);
        Real allowed = fv.error_bound + mapped_tail + slack;
        Real margin = dev - allowed;
        if (!have || margin > worst_margin) {
            have = true;
            worst_margin = margin;
            rep.max_deviation = dev;
            rep.bound_at_max = allowed;
            rep.worst_index = k;
        }
        if (dev > allowed) rep.within_bounds = false;
    }
    return rep;
}

QuotientProbe derivative_probe(const Real& x, const BasePair& pair, std::size_t n_max,
                               long digit_cap) {
    if (n_max < 1) throw validation_error("n_max must be >= 1");
    if (pair.alpha.alpha() == pair.beta.alpha()) {
        throw validation_error("derivative probe requires alpha != beta");
    }
    QuotientProbe probe;
    probe.x = x;
    DigitSeq seq = encode(x, pair.alpha, n_max, digit_cap);
    probe.digits = seq.digits;

    // log10 q_n = n log10((beta-1)/(alpha-1)) + S_n log10(alpha/beta)
    const mpfr_prec_t P = std::max(pair.alpha.prec(), pair.beta.prec());
    const double c1 =
        log10(pair.beta.alpha_minus_one() / pair.alpha.alpha_minus_one()).to_double();
    const double c2 = log10(at_prec(pair.alpha.alpha(), P) / pair.beta.alpha()).to_double();

    probe.log10_quotients.reserve(n_max);
    double s = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        s += static_cast<double>(probe.digits[n - 1]);
        probe.log10_quotients.push_back(static_cast<double>(n) * c1 + s * c2);
    }
    return probe;
}

double box_count_slope(const GraphSample& sample, int j_min, int j_max) {
    if (j_min < 1 || j_max <= j_min) throw validation_error("bad scale range");
    if (sample.points.size() < 2) throw validation_error("sample too small");

    std::vector<double> xs(sample.points.size()), ys(sample.points.size());
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        xs[i] = sample.points[i].first.to_double();
        ys[i] = sample.points[i].second.to_double();
    }

    std::vector<double> log_inv_eps, log_count;
    for (int j = j_min; j <= j_max; ++j) {
        const double eps = std::ldexp(1.0, -j);
        // walk the sorted points column by column; f is monotone, so the
        // boxes a column needs span from its first y to its last y
        long long boxes = 0;
        std::size_t i = 0;
        while (i < xs.size()) {
            const double col = std::floor(xs[i] / eps);
            const double y_enter = ys[i];
            std::size_t k = i;
            while (k + 1 < xs.size() && std::floor(xs[k + 1] / eps) == col) ++k;
            const double y_exit = ys[k];
            boxes += static_cast<long long>(std::floor(y_exit / eps) -
                                            std::floor(y_enter / eps)) + 1;
            i = k + 1;
        }
        log_inv_eps.push_back(static_cast<double>(j) * std::log(2.0));
        log_count.push_back(std::log(static_cast<double>(boxes)));
    }

    // least squares slope
    const std::size_t m = log_inv_eps.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += log_inv_eps[i];
        my += log_count[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < m; ++i) {
        num += (log_inv_eps[i] - mx) * (log_count[i] - my);
        den += (log_inv_eps[i] - mx) * (log_inv_eps[i] - mx);
    }
    return num / den;
}

} // namespace alphax
