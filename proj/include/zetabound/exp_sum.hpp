#pragma once

#include <functional>
#include <vector>

#include "zetabound/dd.hpp"
#include "zetabound/errors.hpp"

namespace zetabound {

// Parameters of the logarithmic phases
//   f(x) = (t/2pi) log(rK + x)          (third-derivative test)
//   g(x) = (t/2pi) log(1 + m/(rK + x))  (second-derivative test)
struct PhaseSpec {
    double t = 0.0;  // height
    long r = 0;      // block index
    long K = 0;      // block length
    long m = 0;      // difference shift
    long N = 0;      // sum offset
    long L = 0;      // sum length

    // Enforces K >= 2, 1 <= L <= K, 1 <= m < K, r >= 1, t > 0.
    void validate() const;
};

struct ComplexSum {
    DD re;
    DD im;
    long terms = 0;

    DD abs() const { return dd_sqrt(dd_sqr(re) + dd_sqr(im)); }
};

// Distance from x to the nearest integer, in [0, 1/2].
DD nearest_int_dist(DD x);
double nearest_int_dist(double x);

// Phase values at integer arguments, in DD.
DD phase_f(const PhaseSpec& spec, long x);
DD phase_g(const PhaseSpec& spec, long x);

// Closed-form derivatives used by the sandwich checks.
DD phase_g_second_derivative(const PhaseSpec& spec, DD x);
DD phase_f_third_derivative(const PhaseSpec& spec, DD x);
// g'(x) = (t/2pi) [1/(rK+x+m) - 1/(rK+x)], needed by hypothesis helpers.
DD phase_g_first_derivative(const PhaseSpec& spec, DD x);

using PhaseFn = std::function<DD(long)>;

// Literal evaluation of sum_{a <= n < b} e(phase(n)), e(x) = exp(2 pi i x).
// Refuses spans longer than length_cap.
ComplexSum eval_exp_sum(const PhaseFn& phase, double a, double b,
                        long length_cap = 10000000L);

// Same sum, recording |prefix| at each requested prefix length (number of
// leading terms); lengths must be nondecreasing. One pass over the terms.
std::vector<DD> eval_exp_sum_prefix_abs(const PhaseFn& phase, double a, double b,
                                        const std::vector<long>& prefix_lengths,
                                        long length_cap = 10000000L);

// (U + V)/pi, the generalized Kusmin-Landau bound. The analytic hypothesis
// l + 1/U <= f' <= l + 1 - 1/V is the caller's burden.
DD kusmin_landau_bound(DD U, DD V);

// Derives (U, V) from the endpoint values of a monotone continuous f' and
// returns the bound; throws HypothesisError when no integer l fits the range.
struct KusminLandauFit {
    DD U;
    DD V;
    long l = 0;
    DD bound;
};
KusminLandauFit kusmin_landau_from_derivative_range(DD d_lo, DD d_hi);

// ((L+M-1)/M) (L + 2 sum_{m=1}^{M} (1 - m/M) abs_s[m-1]), an upper bound for
// |sum e(f(n))|^2 given upper bounds abs_s[m-1] >= |s'_m(L)|.
DD weyl_difference_bound(long L, long M, const std::vector<DD>& abs_s);

} // namespace zetabound
