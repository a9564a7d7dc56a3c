#include "zetabound/bound_pipeline.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zetabound/derivative_tests.hpp"
#include "zetabound/errors.hpp"
#include "zetabound/zeta_eval.hpp"

namespace zetabound {

namespace {

const DD& pi_sixth() {
    static const DD v = dd_sqrt(dd_cbrt(dd_pi));
    return v;
}

const DD& log_sqrt_two_pi() {
    static const DD v = mul_pwr2(dd_log(dd_two_pi), 0.5);
    return v;
}

const DD& c618() {
    static const DD v = dd_from_string("0.618");
    return v;
}

DD remainder_cap_terms(double t0) {
    static const DD c1 = dd_from_string("1.48");
    static const DD c3 = dd_from_string("0.127");
    DD q = dd_sqrt(dd_sqrt(DD(t0)));
    return c1 / q + c3 / (DD(t0) / q);
}

long ceil_to_long(DD x) { return static_cast<long>(dd_ceil(x).hi); }

long derive_R0(double t0, DD K0) {
    DD n1ish = dd_sqrt(DD(t0) / dd_two_pi);
    return ceil_to_long((n1ish - 1.0) / (K0 + 1.0) - 1.0);
}

DD derive_rho0(long R0) {
    return (DD(1.0) + DD(1.0) / static_cast<double>(R0)) /
           (dd_sqrt(DD(2.0)) * pi_sixth());
}

DD block_tail_sum(long r0, DD K0) {
    long nc = ceil_to_long(DD(static_cast<double>(r0)) * K0);
    DD limit(static_cast<double>(nc - 1));
    return mul_pwr2(sum_inv_sqrt(nc - 1), 2.0) - DD(4.0) * dd_sqrt(limit);
}

void require_common(const RegionParams& p) {
    if (p.r0 < 2)
        throw std::domain_error("coefficient pipeline: r0 must be >= 2");
    if (!(p.t0 >= 5.5e7) || !std::isfinite(p.t0))
        throw std::domain_error("coefficient pipeline: t0 must be >= 5.5e7 and finite");
    if (!(p.eta > DD(0.0)))
        throw std::domain_error("coefficient pipeline: eta must be positive");
}

} // namespace

const char* region_name(Region r) {
    switch (r) {
    case Region::small_interval: return "small_interval";
    case Region::rsl_region: return "rsl_region";
    case Region::chain_region: return "chain_region";
    case Region::medium_window_1: return "medium_window_1";
    case Region::medium_window_2: return "medium_window_2";
    case Region::medium_window_3: return "medium_window_3";
    case Region::large_region: return "large_region";
    }
    return "unknown";
}

DD CoefficientTuple::bound_at(DD t) const {
    DD logt = dd_log(t);
    DD acc;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        DD term = coeffs[i];
        if (!(exponents[i].hi == 0.0 && exponents[i].lo == 0.0))
            term = term * dd_pow(t, exponents[i]);
        if (with_log[i])
            term = term * logt;
        acc += term;
    }
    return acc;
}

CoefficientTuple compute_medium_coefficients(const RegionParams& params) {
    require_common(params);
    static const DD third = DD(1.0) / 3.0;
    static const DD sixth = DD(1.0) / 6.0;
    if (!(params.phi > third) || !(params.phi < DD(0.5)))
        throw std::domain_error(
            "compute_medium_coefficients: phi must lie in (1/3, 1/2)");

    DerivedRegionConstants d;
    DD t0(params.t0);
    d.K0 = dd_pow(t0, params.phi);
    d.R0 = derive_R0(params.t0, d.K0);
    if (params.r0 > d.R0)
        throw HypothesisError("compute_medium_coefficients: r0 exceeds R0 = " +
                              std::to_string(d.R0));
    d.rho0 = derive_rho0(d.R0);
    DD R0dd(static_cast<double>(d.R0));
    d.J_R0 = dd_log1p(mul_pwr2(DD(1.0) / R0dd, 0.5)) +
             mul_pwr2(dd_log1p(dd_sqrt(DD(1.0) + DD(1.0) / (R0dd + 0.5))), 2.0);
    d.I_phi = block_tail_sum(params.r0, d.K0);
    d.W0 = dd_pi * dd_pow_int(DD(static_cast<double>(params.r0 + 1)), 3) *
           dd_pow_int(dd_ceil(d.K0), 3) / t0;
    d.mu = mu_from(params.r0, d.K0);
    d.alpha0 = alpha_from(d.mu, d.W0, params.eta);
    d.beta0 = beta_from(d.W0, params.eta);

    DD tmphi = DD(1.0) / d.K0;
    DD p16 = dd_pow(t0, params.phi - sixth);
    DD p13 = dd_pow(t0, params.phi - third);
    DD p12 = dd_pow(t0, mul_pwr2(params.phi, 2.0) - DD(0.5));
    auto kappa_of = [&](DD alpha, DD beta) {
        return dd_sqrt(alpha + params.eta * alpha * d.rho0 / p16 +
                       beta * dd_sqr(d.rho0) * (DD(1.0) + tmphi) / p13 +
                       params.eta * beta * dd_sqr(d.rho0) * d.rho0 *
                           dd_sqr(DD(1.0) + tmphi) / p12);
    };
    d.kappa = kappa_of(d.alpha0, d.beta0);
    DD mu_alt = mu_from(params.r0, dd_ceil(d.K0));
    d.kappa_alt = kappa_of(alpha_from(mu_alt, d.W0, params.eta), d.beta0);

    DD r0dd(static_cast<double>(params.r0));
    CoefficientTuple out;
    out.kind = TupleKind::medium;
    out.phi = params.phi;
    out.derived = d;
    out.valid_from = params.t0;
    out.valid_to = std::numeric_limits<double>::infinity();
    out.coeffs = {
        (DD(1.0) - mul_pwr2(params.phi, 2.0)) * d.kappa / pi_sixth(),
        -(mul_pwr2(DD(1.0) / pi_sixth(), 2.0)) *
            (log_sqrt_two_pi() - d.J_R0 +
             mul_pwr2(dd_asinh(dd_sqrt(r0dd - 0.5)), 2.0)) *
            d.kappa,
        DD(4.0) * dd_sqrt(r0dd * (DD(1.0) + tmphi)),
        d.I_phi + remainder_cap_terms(params.t0)};
    out.exponents = {sixth, sixth, mul_pwr2(params.phi, 0.5), DD(0.0)};
    out.with_log = {true, false, false, false};
    return out;
}

CoefficientTuple compute_large_coefficients(const RegionParams& params) {
    require_common(params);
    static const DD third = DD(1.0) / 3.0;
    static const DD sixth = DD(1.0) / 6.0;
    if (std::abs(static_cast<double>(params.phi - third)) > 1e-30)
        throw std::domain_error("compute_large_coefficients: phi must be 1/3");
    if (!(params.t0 >= 1e12))
        throw std::domain_error("compute_large_coefficients: t0 must be >= 1e12");

    DerivedRegionConstants d;
    DD t0(params.t0);
    d.K0 = dd_cbrt(t0);
    d.R0 = derive_R0(params.t0, d.K0);
    if (params.r0 > d.R0)
        throw HypothesisError("compute_large_coefficients: r0 exceeds R0 = " +
                              std::to_string(d.R0));
    d.rho0 = derive_rho0(d.R0);
    DD r0dd(static_cast<double>(params.r0));
    static const DD c1412 = dd_from_string("1.412");
    d.omega0 = -log_sqrt_two_pi() + c1412 -
               mul_pwr2(dd_asinh(dd_sqrt(r0dd - 0.5)), 2.0);
    d.I_phi = block_tail_sum(params.r0, d.K0);
    d.W0 = dd_pi * dd_pow_int(DD(static_cast<double>(params.r0 + 1)), 3);
    d.mu = mu_from(params.r0, d.K0);
    d.alpha0 = alpha_from(d.mu, d.W0, params.eta);
    d.beta0 = beta_from(d.W0, params.eta);

    DD tm13 = DD(1.0) / d.K0;
    DD p16 = dd_sqrt(d.K0);
    d.kappa = dd_sqrt(d.alpha0 + params.eta * d.alpha0 * d.rho0 / p16 +
                      params.eta * d.beta0 * dd_sqr(d.rho0) * d.rho0 *
                          dd_sqr(DD(1.0) + tm13) / p16);
    d.kappa_alt = d.kappa;

    CoefficientTuple out;
    out.kind = TupleKind::large;
    out.phi = third;
    out.derived = d;
    out.valid_from = params.t0;
    out.valid_to = std::numeric_limits<double>::infinity();
    out.coeffs = {
        d.kappa / (pi_sixth() * 3.0),
        DD(4.0) * dd_sqrt(r0dd * (DD(1.0) + tm13)) +
            mul_pwr2(DD(1.0) / pi_sixth(), 2.0) * d.omega0 * d.kappa +
            dd_sqrt(DD(2.0)) / dd_cbrt(dd_pi) *
                dd_sqrt(d.beta0 * (DD(1.0) + DD(1.0) / r0dd) * (DD(1.0) + tm13)),
        d.I_phi + remainder_cap_terms(params.t0)};
    out.exponents = {sixth, sixth, DD(0.0)};
    out.with_log = {true, false, false};
    return out;
}

DD theorem_line(DD t, DD c) { return c * dd_sqrt(dd_cbrt(t)) * dd_log(t); }

DD chain_32_bound(double t) {
    if (!(t >= 200.0))
        throw std::domain_error("chain_32_bound: t must be at least 200");
    static const DD c = dd_from_string("2.807");
    DD q = dd_sqrt(dd_sqrt(DD(t)));
    DD tp = dd_sqrt(dd_sqrt(dd_two_pi));
    return DD(4.0) * q / tp - c;
}

DD growth_condition_margin(const CoefficientTuple& large_tuple) {
    if (large_tuple.kind != TupleKind::large)
        throw std::domain_error("growth_condition_margin: needs a large tuple");
    DD b1 = large_tuple.coeffs[0];
    DD b2 = large_tuple.coeffs[1];
    return (c618() - b1) * (dd_log(DD(large_tuple.valid_from)) + 6.0) - b2;
}

CrossingRecord crossing_check(const BoundFn& lhs, const BoundFn& rhs,
                              double t_lo, double t_hi, CrossingShape shape) {
    if (!(t_lo < t_hi) || !(t_lo > 0.0))
        throw std::domain_error("crossing_check: need 0 < t_lo < t_hi");
    const int n = 10000;
    CrossingRecord rec;
    rec.t_lo = t_lo;
    rec.t_hi = t_hi;

    const double ulo = std::log(t_lo);
    const double uhi = std::log(t_hi);
    auto grid_t = [&](int i) {
        if (i == 0)
            return t_lo;
        if (i == n)
            return t_hi;
        return std::exp(ulo + (uhi - ulo) * static_cast<double>(i) /
                                  static_cast<double>(n));
    };

    std::vector<DD> diff(n + 1);
    double max_abs = 0.0;
    int min_at = 0;
    for (int i = 0; i <= n; ++i) {
        diff[i] = rhs(grid_t(i)) - lhs(grid_t(i));
        max_abs = std::max(max_abs, std::abs(static_cast<double>(diff[i])));
        if (diff[i] < diff[min_at])
            min_at = i;
    }
    rec.margin_lo = diff[0];
    rec.margin_hi = diff[n];
    rec.min_grid_margin = diff[min_at];
    rec.t_at_min = grid_t(min_at);

    const double dead_zone = 1e-12 * max_abs;
    int last_sign = 0;
    int changes = 0;
    for (int i = 1; i < n; ++i) {
        double d = static_cast<double>(diff[i + 1] - diff[i - 1]);
        int sign = std::abs(d) <= dead_zone ? 0 : (d > 0.0 ? 1 : -1);
        if (sign == 0)
            continue;
        if (last_sign != 0 && sign != last_sign)
            ++changes;
        last_sign = sign;
    }
    rec.sign_changes = changes;
    rec.shape_ok = shape == CrossingShape::monotone_difference ? changes == 0
                                                               : changes <= 1;
    rec.endpoints_ok = rec.margin_lo > DD(0.0) && rec.margin_hi > DD(0.0);
    rec.pass = rec.endpoints_ok && rec.shape_ok && rec.min_grid_margin > DD(0.0);
    return rec;
}

std::vector<CoefficientTuple> published_tuples() {
    static const DD phi = dd_from_string("0.3414");
    static const DD eta_medium = dd_from_string("1.8");
    static const DD eta_large = dd_from_string("1.6");
    static const DD third = DD(1.0) / 3.0;
    const double windows[4][2] = {{5.5e7, 1e8},
                                  {1e8, 8.5e10},
                                  {8.5e10, 1e12},
                                  {1e12, std::numeric_limits<double>::infinity()}};
    std::vector<CoefficientTuple> out;
    for (int i = 0; i < 3; ++i) {
        RegionParams p{phi, eta_medium, 4, windows[i][0]};
        CoefficientTuple tup = compute_medium_coefficients(p);
        tup.valid_to = windows[i][1];
        out.push_back(tup);
    }
    RegionParams p{third, eta_large, 4, windows[3][0]};
    CoefficientTuple tup = compute_large_coefficients(p);
    tup.valid_to = windows[3][1];
    out.push_back(tup);
    return out;
}

TheoremBound theorem_bound(double t) {
    if (!(t >= 3.0) || !std::isfinite(t))
        throw std::domain_error("theorem_bound: t must be >= 3 and finite");
    TheoremBound out;
    out.bound = theorem_line(DD(t), c618());
    if (t < 200.0) {
        out.region = Region::small_interval;
        out.certificate = {"regions/small-grid-0595"};
    } else if (t < 1e7) {
        out.region = Region::rsl_region;
        out.certificate = {"regions/crossing-rsl-0592"};
    } else if (t < 5.5e7) {
        out.region = Region::chain_region;
        out.certificate = {"regions/partial-summation-chain",
                           "regions/crossing-chain-0618"};
    } else if (t < 1e8) {
        out.region = Region::medium_window_1;
        out.certificate = {"regions/crossing-tuple1-0618",
                           "regions/tuple1-coefficients"};
    } else if (t < 8.5e10) {
        out.region = Region::medium_window_2;
        out.certificate = {"regions/crossing-tuple2-0618",
                           "regions/tuple2-coefficients"};
    } else if (t < 1e12) {
        out.region = Region::medium_window_3;
        out.certificate = {"regions/crossing-tuple3-0618",
                           "regions/tuple3-coefficients"};
    } else {
        out.region = Region::large_region;
        out.certificate = {"regions/crossing-large-0618", "regions/large-growth",
                           "regions/large-coefficients"};
    }
    return out;
}

} // namespace zetabound
