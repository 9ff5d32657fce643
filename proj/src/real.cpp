#include "alphax/real.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace alphax {

mpfr_prec_t default_precision() {
    if (const char* env = std::getenv("ALPHAX_PRECISION")) {
        char* end = nullptr;
        long bits = std::strtol(env, &end, 10);
        if (end && *end == '\0' && bits >= 64 && bits <= (1L << 24)) {
            return static_cast<mpfr_prec_t>(bits);
        }
    }
    return kDefaultPrec;
}

int sig_digits_for(mpfr_prec_t prec) {
    return static_cast<int>(std::ceil(static_cast<double>(prec) * 0.30102999566398120));
}

Real::Real(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (decimal.empty()) {
        mpfr_clear(v_);
        throw validation_error("empty numeric literal");
    }
    char* end = nullptr;
    int rc = mpfr_strtofr(v_, decimal.c_str(), &end, 10, MPFR_RNDN);
    (void)rc;
    if (end != decimal.c_str() + decimal.size() || mpfr_nan_p(v_)) {
        mpfr_clear(v_);
        throw validation_error("cannot parse number: '" + decimal + "'");
    }
}

std::string Real::str(int sig) const {
    if (sig <= 0) sig = sig_digits_for(prec());
    // First call sizes the buffer, second fills it.
    int need = mpfr_snprintf(nullptr, 0, "%.*RNg", sig, v_);
    std::vector<char> buf(static_cast<size_t>(need) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*RNg", sig, v_);
    return std::string(buf.data());
}

bool within_one_ulp(const Real& x, const Real& y) {
    if (mpfr_equal_p(x.raw(), y.raw())) return true;
    if (mpfr_zero_p(y.raw())) return false;
    // diff at enough precision that it cannot round to zero spuriously
    Real diff(std::max(x.prec(), y.prec()) + 8);
    mpfr_sub(diff.raw(), x.raw(), y.raw(), MPFR_RNDN);
    if (diff.is_zero()) return true;
    // ulp(y) = 2^(exp(y) - prec(y)); |diff| <= ulp iff its exponent is small
    return diff.exponent() <= y.exponent() - y.prec() + 1;
}

} // namespace alphax
