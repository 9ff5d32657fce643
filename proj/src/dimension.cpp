#include "alphax/dimension.hpp"

#include <functional>
#include <utility>

namespace alphax {

DigitSet::DigitSet(std::vector<long> members) : members_(std::move(members)) {
    if (members_.empty()) throw validation_error("digit set is empty");
    long prev = 0;
    for (long m : members_) {
        if (m < 1) throw validation_error("digit set members must be >= 1");
        if (m <= prev) throw validation_error("digit set must be strictly sorted");
        prev = m;
    }
}

DigitSet DigitSet::prefix(long n) {
    if (n < 1) throw validation_error("prefix length must be >= 1");
    std::vector<long> m;
    m.reserve(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i) m.push_back(i);
    return DigitSet(std::move(m));
}

ProbDist::ProbDist(std::vector<Real> p) : p_(std::move(p)), prec_(kDefaultPrec) {
    if (p_.empty()) throw validation_error("distribution is empty");
    for (const Real& v : p_) prec_ = std::max(prec_, v.prec());
    Real sum(prec_);
    for (const Real& v : p_) {
        if (mpfr_nan_p(v.raw()) || v.sign() < 0 || v > 1L) {
            throw validation_error("probabilities must lie in [0,1]");
        }
        sum += v;
    }
    Real dev = abs(sum - 1L);
    if (dev > Real("1e-12", prec_)) {
        throw validation_error("probabilities must sum to 1 (deviation " + dev.str(3) + ")");
    }
}

namespace {

// Bisect the strictly decreasing phi on [0,1] for phi(h) = 1. phi(0) >= 1
// and phi(1) < 1 are the caller's responsibility. Stops when the bracket is
// narrower than tol AND the residual is within tol, with hard stops at 200
// iterations and at bracket width 2^-(P-8).
DimensionResult bisect_unit_root(const std::function<Real(const Real&)>& phi,
                                 mpfr_prec_t P, double tol) {
    if (!(tol > 0)) throw validation_error("tolerance must be > 0");
    Real lo(0L, P), hi(1L, P);
    Real tol_r(P);
    mpfr_set_d(tol_r.raw(), tol, MPFR_RNDN);
    const Real width_floor = ldexp2(Real(1L, P), -static_cast<long>(P - 8));

    Real mid(P), residual(P);
    int iters = 0;
    for (;;) {
        ++iters;
        mid = ldexp2(lo + hi, -1);
        Real val = phi(mid);
        residual = abs(val - 1L);
        if (val > 1L) {
            lo = mid;  // phi decreasing: too much mass, root lies right
        } else {
            hi = mid;
        }
        Real width = hi - lo;
        if ((width <= tol_r && residual <= tol_r) || iters >= 200 || width < width_floor) {
            break;
        }
    }
    return {std::move(mid), std::move(residual), iters, false};
}

} // namespace

DimensionResult moran_dimension(const Base& base, const DigitSet& D, double tol) {
    const mpfr_prec_t P = base.prec();
    if (D.size() == 1) {
        // single contraction: the Moran sum is r^h = 1 only at h = 0
        return {Real(0L, P), Real(0L, P), 0, false};
    }
    // log r_i = log(alpha-1) - i log(alpha), all < 0
    const Real la = log(base.alpha());
    const Real lam1 = log(base.alpha_minus_one());
    std::vector<Real> lr;
    lr.reserve(D.size());
    for (long i : D.members()) lr.push_back(lam1 - Real(i, P) * la);

    auto phi = [&lr, P](const Real& h) {
        Real sum(P);
        for (const Real& l : lr) sum += exp(h * l);
        return sum;
    };
    return bisect_unit_root(phi, P, tol);
}

DimensionResult moran_dimension_full(const Base& base) {
    const mpfr_prec_t P = base.prec();
    return {Real(1L, P), Real(0L, P), 0, false};
}

DimensionResult prefix_set_dimension(const Base& base, long n, double tol) {
    if (n < 1) throw validation_error("prefix length must be >= 1");
    const mpfr_prec_t P = base.prec();
    if (n == 1) {
        return {Real(0L, P), Real(0L, P), 0, false};
    }
    const Real la = log(base.alpha());
    const Real lam1 = log(base.alpha_minus_one());
    const Real nr(n, P);

    // phi(h) = (1 - alpha^{-hn}) (alpha-1)^h / (alpha^h - 1), written with
    // expm1 so small h costs no cancellation
    auto phi = [&](const Real& h) {
        Real t = h * la;
        Real num(P), den(P);
        mpfr_expm1(num.raw(), (-(t * nr)).raw(), MPFR_RNDN);  // exp(-hn la) - 1
        mpfr_expm1(den.raw(), t.raw(), MPFR_RNDN);            // exp(h la) - 1
        return -num * exp(h * lam1) / den;
    };
    return bisect_unit_root(phi, P, tol);
}

Real entropy(const ProbDist& p) {
    const mpfr_prec_t P = p.prec();
    Real h(P);
    for (const Real& v : p.p()) {
        if (v.sign() == 0) continue;  // 0 log 0 := 0
        h -= v * log(v);
    }
    return h;
}

Real expected_value(const ProbDist& p) {
    const mpfr_prec_t P = p.prec();
    Real e(P);
    long i = 1;
    for (const Real& v : p.p()) {
        e += Real(i, P) * v;
        ++i;
    }
    return e;
}

DimensionResult frequency_set_dimension(const Base& base, const ProbDist& p) {
    const mpfr_prec_t P = base.prec();
    Real H = entropy(p);
    Real E = expected_value(p);
    Real denom = log(base.alpha()) * E - log(base.alpha_minus_one());
    if (denom.sign() <= 0) {
        // cannot happen for alpha > 1 and E >= 1; guard anyway
        throw validation_error("frequency-set denominator is not positive");
    }
    if (H.sign() == 0) {
        return {Real(0L, P), Real(0L, P), 0, true};
    }
    return {H / denom, Real(0L, P), 0, false};
}

} // namespace alphax
