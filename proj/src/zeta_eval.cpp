#include "zetabound/zeta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetabound/errors.hpp"

namespace zetabound {

namespace {

struct CDD {
    DD re;
    DD im;
};

CDD cadd(const CDD& a, const CDD& b) { return {a.re + b.re, a.im + b.im}; }

CDD cmul(const CDD& a, const CDD& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CDD cscale(const CDD& a, DD s) { return {a.re * s, a.im * s}; }

DD cabs(const CDD& a) { return dd_sqrt(dd_sqr(a.re) + dd_sqr(a.im)); }

CDD cinv(const CDD& a) {
    DD n = dd_sqr(a.re) + dd_sqr(a.im);
    return {a.re / n, -(a.im / n)};
}

// Walks log n over consecutive n.  Small n and every 4096th n restart from a
// direct logarithm so the incremental error stays at the chunk scale.
struct LogWalker {
    long n = 1;
    DD value;

    void advance() {
        ++n;
        if (n < 64 || n % 4096 == 0)
            value = dd_log(DD(static_cast<double>(n)));
        else
            value = value + dd_log1p(DD(1.0) / static_cast<double>(n - 1));
    }
};

double per_term_rounding() { return 1.1e-15 + std::ldexp(1.0, -98); }

// cos/sin of 2*pi*cycles, with the mod-1 reduction done in two-term
// arithmetic so large phases keep full direction accuracy.
void unit_dir(DD cycles, double& c, double& s) {
    double ang = 6.283185307179586476925287 * static_cast<double>(dd_frac(cycles));
    c = std::cos(ang);
    s = std::sin(ang);
}

} // namespace

long n1_of(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("n1_of: t must be positive and finite");
    return static_cast<long>(dd_floor(dd_sqrt(DD(t) / dd_two_pi)).hi);
}

DD sum_inv_sqrt(long n) {
    if (n < 0)
        throw std::domain_error("sum_inv_sqrt: negative length");
    DD acc;
    for (long k = 1; k <= n; ++k)
        acc += dd_sqrt(DD(1.0) / static_cast<double>(k));
    return acc;
}

ComplexSum rs_main_sum(double t) {
    if (!(t >= 200.0))
        throw std::domain_error("rs_main_sum: t must be at least 200");
    long n1 = n1_of(t);
    ComplexSum out;
    out.terms = n1;
    DD tc = DD(t) / dd_two_pi;
    LogWalker lw;
    for (long n = 1; n <= n1; ++n) {
        double c, s;
        unit_dir(tc * lw.value, c, s);
        DD mag = dd_sqrt(DD(1.0) / static_cast<double>(n));
        out.re += mag * c;
        out.im += mag * s;
        lw.advance();
    }
    return out;
}

DD gabcke_remainder_bound(double t) {
    if (!(t >= 200.0))
        throw std::domain_error("gabcke_remainder_bound: t must be at least 200");
    static const DD c1 = dd_from_string("1.48");
    static const DD c3 = dd_from_string("0.127");
    DD q = dd_sqrt(dd_sqrt(DD(t)));
    return c1 / q + c3 / (DD(t) / q);
}

DD rs_zeta_upper(double t) {
    ComplexSum main = rs_main_sum(t);
    DD rounding = sum_inv_sqrt(main.terms) * per_term_rounding();
    return mul_pwr2(main.abs() + rounding, 2.0) + gabcke_remainder_bound(t);
}

DD rsl_bound(double t) {
    if (!(t >= 200.0))
        throw std::domain_error("rsl_bound: t must be at least 200");
    static const DD c = dd_from_string("2.08");
    DD q = dd_sqrt(dd_sqrt(DD(t)));
    DD tp = dd_sqrt(dd_sqrt(dd_two_pi));
    return DD(4.0) * q / tp - c;
}

ZetaPoint reference_zeta(double t, long oracle_cap, bool doubled) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("reference_zeta: t must be positive and finite");
    if (t > 1e9)
        throw OracleRefusal("reference_zeta: t above the 1e9 reference cap");
    const double mult = doubled ? 6.0 : 3.0;
    const long p = doubled ? 6 : 5;
    long N = std::max(10L, static_cast<long>(std::ceil(mult * t)));
    if (N > oracle_cap)
        throw OracleRefusal("reference_zeta: needs " + std::to_string(N) +
                            " series terms, above the oracle cap of " +
                            std::to_string(oracle_cap) +
                            " (raise --oracle-cap to allow)");

    // Bernoulli numbers over factorials: B_{2k} / (2k)! for k = 1..7.
    static const DD bern[8] = {DD(0.0),
                               DD(1.0) / 12.0,
                               DD(-1.0) / 720.0,
                               DD(1.0) / 30240.0,
                               DD(-1.0) / 1209600.0,
                               DD(1.0) / 47900160.0,
                               DD(-691.0) / 1307674368000.0,
                               DD(7.0) / 523069747200.0};

    DD tc = DD(t) / dd_two_pi;
    CDD acc;
    double mass = 0.0;
    LogWalker lw;
    for (long n = 1; n < N; ++n) {
        double c, s;
        unit_dir(tc * lw.value, c, s);
        DD mag = dd_sqrt(DD(1.0) / static_cast<double>(n));
        acc.re += mag * c;
        acc.im -= mag * s;
        mass += static_cast<double>(mag);
        lw.advance();
    }

    DD logN = dd_log(DD(static_cast<double>(N)));
    double c, s;
    unit_dir(tc * logN, c, s);
    DD magN = dd_sqrt(DD(1.0) / static_cast<double>(N));
    CDD n_pow_ms = {magN * c, -(magN * s)};

    CDD sm1 = {DD(-0.5), DD(t)};
    CDD tail = cmul(cscale(n_pow_ms, DD(static_cast<double>(N))), cinv(sm1));
    acc = cadd(acc, tail);
    mass += static_cast<double>(cabs(tail));

    CDD half = cscale(n_pow_ms, DD(0.5));
    acc = cadd(acc, half);
    mass += static_cast<double>(cabs(half));

    const CDD s_val = {DD(0.5), DD(t)};
    DD inv_n2 = DD(1.0) / dd_sqr(DD(static_cast<double>(N)));
    // npow = N^{1-s-2k}, poch = s(s+1)...(s+2k-2), both advanced with k.
    CDD npow = cscale(n_pow_ms, DD(static_cast<double>(N)));
    CDD poch = s_val;
    for (long k = 1; k <= p; ++k) {
        npow = cscale(npow, inv_n2);
        if (k > 1) {
            CDD f1 = {DD(0.5) + static_cast<double>(2 * k - 3), DD(t)};
            CDD f2 = {DD(0.5) + static_cast<double>(2 * k - 2), DD(t)};
            poch = cmul(poch, cmul(f1, f2));
        }
        CDD term = cscale(cmul(npow, poch), bern[k]);
        acc = cadd(acc, term);
        mass += static_cast<double>(cabs(term));
    }

    npow = cscale(npow, inv_n2);
    CDD f1 = {DD(0.5) + static_cast<double>(2 * p - 1), DD(t)};
    CDD f2 = {DD(0.5) + static_cast<double>(2 * p), DD(t)};
    poch = cmul(poch, cmul(f1, f2));
    DD omitted = dd_abs(bern[p + 1]) * cabs(npow) * cabs(poch);
    double sigma_shift = 0.5 + static_cast<double>(2 * p + 1);
    double amplifier =
        std::sqrt(sigma_shift * sigma_shift + t * t) / sigma_shift;
    double est = amplifier * static_cast<double>(omitted) +
                 mass * per_term_rounding();

    if (!(est < 1e-6))
        throw OracleRefusal("reference_zeta: estimated error " +
                            std::to_string(est) +
                            " is too large; the point is rejected");

    ZetaPoint out;
    out.t = t;
    out.re = acc.re;
    out.im = acc.im;
    out.abs_value = cabs(acc);
    out.method = ZetaMethod::euler_maclaurin;
    out.est_error = est;
    out.terms = N;
    return out;
}

} // namespace zetabound
