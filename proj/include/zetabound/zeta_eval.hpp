#pragma once

#include "zetabound/dd.hpp"
#include "zetabound/exp_sum.hpp"

namespace zetabound {

enum class ZetaMethod { euler_maclaurin, riemann_siegel };

// One reference evaluation of zeta(1/2 + it).  est_error is a computed
// bound: the Euler-Maclaurin tail estimate plus tracked rounding, never a
// guess.  Points whose est_error reaches 1e-6 are rejected instead of
// returned.
struct ZetaPoint {
    double t = 0.0;
    DD re;
    DD im;
    DD abs_value;
    ZetaMethod method = ZetaMethod::euler_maclaurin;
    double est_error = 0.0;
    long terms = 0;
};

// floor(sqrt(t / 2pi)), the main-sum cutoff.
long n1_of(double t);

// sum_{k=1}^{n} k^{-1/2} in two-term arithmetic.
DD sum_inv_sqrt(long n);

// sum_{n=1}^{n1} n^{-1/2+it} with the phase t*log n reduced mod 2pi in
// two-term arithmetic.  Requires t >= 200.
ComplexSum rs_main_sum(double t);

// Explicit remainder cap 1.48 t^{-1/4} + 0.127 t^{-3/4}.  Requires t >= 200.
DD gabcke_remainder_bound(double t);

// 2|rs_main_sum(t)| + gabcke_remainder_bound(t) + tracked rounding: an upper
// bound for |zeta(1/2+it)|.
DD rs_zeta_upper(double t);

// Smoothed main-sum cap 4 t^{1/4} / (2pi)^{1/4} - 2.08.  Requires t >= 200.
DD rsl_bound(double t);

// Euler-Maclaurin reference value.  Cuts the Dirichlet series at 3t (6t when
// doubled, which also takes one more correction term) and applies Bernoulli
// corrections.  Refuses t above 1e9, series lengths above oracle_cap, and
// points whose est_error reaches 1e-6.
ZetaPoint reference_zeta(double t, long oracle_cap = 10000000, bool doubled = false);

} // namespace zetabound
