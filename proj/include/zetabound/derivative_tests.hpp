#pragma once

#include "zetabound/dd.hpp"
#include "zetabound/exp_sum.hpp"

namespace zetabound {

// Quantities shared by the curvature-based sum bounds.  All derive from the
// spec plus the subdivision parameter K0 (and, for the third-derivative
// route, the tuning parameter eta).
struct DerivedConstants {
    DD W;
    DD lambda;
    DD mu;
    DD K0;
    bool has_eta = false;
    DD eta;
    DD alpha;
    DD beta;
};

// Requires 1 < K0 <= K.  The eta overload additionally fills alpha and beta.
DerivedConstants derive_constants(const PhaseSpec& spec, DD K0);
DerivedConstants derive_constants(const PhaseSpec& spec, DD K0, DD eta);

// The same three displays with the curvature window W supplied directly, for
// callers that fix W by an inequality instead of deriving it from a spec.
// lambda^(1/3) stays the exact ratio (1+r)/r throughout.
DD mu_from(long r, DD K0);
DD alpha_from(DD mu, DD W, DD eta);
DD beta_from(DD W, DD eta);

// Upper bound on |sum of e(g(x)) for 0 <= x < L - m|, uniform over L <= K.
DD second_derivative_test_bound(const PhaseSpec& spec, DD K0);

// Same bound with the shift replaced; returns 0 when the shift wipes out the
// sum (shift >= K).
DD shifted_sum_bound(const PhaseSpec& spec, DD K0, long shift);

// Upper bound on |sum of e(f(x)) for N <= x < N + L| squared, uniform over
// L <= K and N with N + L <= K.
DD third_derivative_test_bound(const PhaseSpec& spec, DD K0, DD eta);

// The same quantity bounded by combining shifted-sum bounds through the
// shift-difference inequality with M = ceil(eta * W^(1/3)) shifts.  The
// third-derivative bound must dominate this; the suites check that it does.
DD weyl_chain_bound(const PhaseSpec& spec, DD K0, DD eta);

// One subdivision audit: re-derives the stationary-phase bookkeeping that
// the shifted-sum bound relies on and checks each closed-form cap against a
// dense grid.  Skipped (rather than failed) when delta >= 1/2, where the
// subdivision never fires.
struct AuditRecord {
    bool skipped = false;
    DD delta;
    DD k_bound;
    DD H_max;
    DD H_cap;
    double identity_rel_residual = 0.0;
    DD h_delta_margin;
    DD case3_margin;
    bool pass = false;
};

AuditRecord subdivision_audit(const PhaseSpec& spec, DD K0);

} // namespace zetabound
