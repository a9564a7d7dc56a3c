#include "zetabound/exp_sum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zetabound {

namespace {

constexpr long kChunk = 4096;

DD inv_two_pi() {
    static const DD v = DD(1.0) / dd_two_pi;
    return v;
}

} // namespace

void PhaseSpec::validate() const {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("PhaseSpec: t must be positive and finite");
    if (r < 1)
        throw std::domain_error("PhaseSpec: r must be >= 1");
    if (K < 2)
        throw std::domain_error("PhaseSpec: K must be >= 2");
    if (L < 1 || L > K)
        throw std::domain_error("PhaseSpec: L must satisfy 1 <= L <= K");
    if (m < 1 || m >= K)
        throw std::domain_error("PhaseSpec: m must satisfy 1 <= m < K");
}

DD nearest_int_dist(DD x) {
    if (!dd_isfinite(x))
        throw std::domain_error("nearest_int_dist: non-finite input");
    DD f = dd_frac(x);
    DD c = DD(1.0) - f;
    return f <= c ? f : c;
}

double nearest_int_dist(double x) {
    return static_cast<double>(nearest_int_dist(DD(x)));
}

DD phase_f(const PhaseSpec& spec, long x) {
    DD arg = DD(static_cast<double>(spec.r) * static_cast<double>(spec.K)) +
             static_cast<double>(x);
    return DD(spec.t) * inv_two_pi() * dd_log(arg);
}

DD phase_g(const PhaseSpec& spec, long x) {
    DD denom = DD(static_cast<double>(spec.r) * static_cast<double>(spec.K)) +
               static_cast<double>(x);
    return DD(spec.t) * inv_two_pi() * dd_log1p(DD(static_cast<double>(spec.m)) / denom);
}

DD phase_g_first_derivative(const PhaseSpec& spec, DD x) {
    DD rk = DD(static_cast<double>(spec.r) * static_cast<double>(spec.K));
    DD u = rk + x;
    DD v = u + static_cast<double>(spec.m);
    return DD(spec.t) * inv_two_pi() * (DD(1.0) / v - DD(1.0) / u);
}

DD phase_g_second_derivative(const PhaseSpec& spec, DD x) {
    DD rk = DD(static_cast<double>(spec.r) * static_cast<double>(spec.K));
    DD u = rk + x;
    DD v = u + static_cast<double>(spec.m);
    return DD(spec.t) * inv_two_pi() * (DD(1.0) / dd_sqr(u) - DD(1.0) / dd_sqr(v));
}

DD phase_f_third_derivative(const PhaseSpec& spec, DD x) {
    DD rk = DD(static_cast<double>(spec.r) * static_cast<double>(spec.K));
    DD u = rk + x;
    return DD(spec.t) / (dd_pi * u * dd_sqr(u));
}

namespace {

struct TermRange {
    long first;
    long count;
};

TermRange integer_range(double a, double b, long length_cap) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw std::domain_error("eval_exp_sum: non-finite range");
    double first_d = std::ceil(a);
    double last_d = std::ceil(b) - 1.0;
    if (last_d < first_d)
        return {0, 0};
    double count_d = last_d - first_d + 1.0;
    if (count_d > static_cast<double>(length_cap))
        throw OracleRefusal("eval_exp_sum: span of " + std::to_string(count_d) +
                            " terms exceeds the length cap of " +
                            std::to_string(length_cap));
    return {static_cast<long>(first_d), static_cast<long>(count_d)};
}

// Accumulates e(phase(n)) over one chunk with Neumaier compensation.
struct ChunkAccum {
    double re = 0.0, re_c = 0.0;
    double im = 0.0, im_c = 0.0;

    void add(double x, double y) {
        double s = re + x;
        re_c += std::abs(re) >= std::abs(x) ? (re - s) + x : (x - s) + re;
        re = s;
        s = im + y;
        im_c += std::abs(im) >= std::abs(y) ? (im - s) + y : (y - s) + im;
        im = s;
    }

    // Adds sum and compensation as separate doubles so the two-term
    // accumulator keeps the partial beyond double rounding.
    void flush_into(DD& out_re, DD& out_im) {
        out_re += re;
        out_re += re_c;
        out_im += im;
        out_im += im_c;
        *this = ChunkAccum{};
    }
};

} // namespace

ComplexSum eval_exp_sum(const PhaseFn& phase, double a, double b, long length_cap) {
    TermRange range = integer_range(a, b, length_cap);
    ComplexSum out;
    out.terms = range.count;
    for (long base = 0; base < range.count; base += kChunk) {
        long stop = std::min(base + kChunk, range.count);
        ChunkAccum acc;
        for (long i = base; i < stop; ++i) {
            DD p = phase(range.first + i);
            double frac = static_cast<double>(dd_frac(p));
            double ang = 6.283185307179586476925287 * frac;
            acc.add(std::cos(ang), std::sin(ang));
        }
        acc.flush_into(out.re, out.im);
    }
    return out;
}

std::vector<DD> eval_exp_sum_prefix_abs(const PhaseFn& phase, double a, double b,
                                        const std::vector<long>& prefix_lengths,
                                        long length_cap) {
    for (std::size_t i = 1; i < prefix_lengths.size(); ++i)
        if (prefix_lengths[i] < prefix_lengths[i - 1])
            throw std::domain_error("eval_exp_sum_prefix_abs: prefix lengths must be nondecreasing");
    TermRange range = integer_range(a, b, length_cap);
    std::vector<DD> out;
    out.reserve(prefix_lengths.size());
    DD re, im;
    ChunkAccum acc;
    long chunk_start = 0;
    std::size_t next = 0;
    for (long i = 0; i <= range.count; ++i) {
        while (next < prefix_lengths.size() && prefix_lengths[next] == i) {
            acc.flush_into(re, im);
            chunk_start = i;
            out.push_back(dd_sqrt(dd_sqr(re) + dd_sqr(im)));
            ++next;
        }
        if (i == range.count)
            break;
        if (i - chunk_start == kChunk) {
            acc.flush_into(re, im);
            chunk_start = i;
        }
        DD p = phase(range.first + i);
        double frac = static_cast<double>(dd_frac(p));
        double ang = 6.283185307179586476925287 * frac;
        acc.add(std::cos(ang), std::sin(ang));
    }
    while (next < prefix_lengths.size()) {
        if (prefix_lengths[next] > range.count)
            throw std::domain_error("eval_exp_sum_prefix_abs: prefix length exceeds span");
        acc.flush_into(re, im);
        out.push_back(dd_sqrt(dd_sqr(re) + dd_sqr(im)));
        ++next;
    }
    return out;
}

DD kusmin_landau_bound(DD U, DD V) {
    if (!(U > DD(1.0)))
        throw std::domain_error("kusmin_landau_bound: U must exceed 1");
    if (!(V > DD(1.0)))
        throw std::domain_error("kusmin_landau_bound: V must exceed 1");
    if (DD(1.0) / U > DD(1.0) - DD(1.0) / V)
        throw HypothesisError("kusmin_landau_bound: 1/U > 1 - 1/V leaves no room for f'");
    return (U + V) / dd_pi;
}

KusminLandauFit kusmin_landau_from_derivative_range(DD d_lo, DD d_hi) {
    if (d_hi < d_lo)
        std::swap(d_lo, d_hi);
    DD fl = dd_floor(d_lo);
    DD theta_lo = d_lo - fl;
    DD theta_hi = d_hi - fl;
    if (theta_lo.hi == 0.0 && theta_lo.lo == 0.0)
        throw HypothesisError("kusmin_landau_from_derivative_range: f' touches an integer");
    if (theta_hi >= DD(1.0))
        throw HypothesisError("kusmin_landau_from_derivative_range: f' range spans an integer");
    KusminLandauFit fit;
    fit.l = static_cast<long>(fl.hi);
    fit.U = DD(1.0) / theta_lo;
    fit.V = DD(1.0) / (DD(1.0) - theta_hi);
    fit.bound = kusmin_landau_bound(fit.U, fit.V);
    return fit;
}

DD weyl_difference_bound(long L, long M, const std::vector<DD>& abs_s) {
    if (L < 1 || M < 1)
        throw std::domain_error("weyl_difference_bound: L and M must be positive");
    if (static_cast<long>(abs_s.size()) != M)
        throw std::domain_error("weyl_difference_bound: abs_s must have length M");
    DD inner(static_cast<double>(L));
    for (long m = 1; m <= M; ++m) {
        DD v = abs_s[static_cast<std::size_t>(m - 1)];
        if (v < DD(0.0))
            throw std::domain_error("weyl_difference_bound: negative |s'_m| entry");
        DD weight = DD(1.0) - DD(static_cast<double>(m)) / static_cast<double>(M);
        inner += mul_pwr2(weight * v, 2.0);
    }
    DD front = DD(static_cast<double>(L) + static_cast<double>(M) - 1.0) /
               static_cast<double>(M);
    return front * inner;
}

} // namespace zetabound
