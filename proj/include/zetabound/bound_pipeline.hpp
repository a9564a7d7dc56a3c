#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zetabound/dd.hpp"

namespace zetabound {

// Half-open t-ranges the final bound is assembled from.
enum class Region {
    small_interval,   // [3, 200)
    rsl_region,       // [200, 1e7)
    chain_region,     // [1e7, 5.5e7)
    medium_window_1,  // [5.5e7, 1e8)
    medium_window_2,  // [1e8, 8.5e10)
    medium_window_3,  // [8.5e10, 1e12)
    large_region      // [1e12, inf)
};

const char* region_name(Region r);

enum class TupleKind { medium, large };

// Inputs of one coefficient derivation.  phi lies in (1/3, 1/2) for the
// medium pipeline and is exactly 1/3 for the large one.
struct RegionParams {
    DD phi;
    DD eta;
    long r0 = 0;
    double t0 = 0.0;
};

struct DerivedRegionConstants {
    DD K0;
    long R0 = 0;
    DD rho0;
    DD J_R0;
    DD I_phi;
    DD omega0;
    DD W0;
    DD mu;
    DD alpha0;
    DD beta0;
    DD kappa;
    // kappa recomputed with the ceiling of K0 inside mu; logged because the
    // source display leaves that reading open.
    DD kappa_alt;
};

struct CoefficientTuple {
    TupleKind kind = TupleKind::medium;
    std::vector<DD> coeffs;
    std::vector<DD> exponents;
    std::vector<bool> with_log;
    DD phi;
    double valid_from = 0.0;
    double valid_to = 0.0;
    DerivedRegionConstants derived;

    DD bound_at(DD t) const;
    DD bound_at(double t) const { return bound_at(DD(t)); }
};

// (a1, a2, a3, a4) for a medium window.  Requires phi in (1/3, 1/2),
// r0 >= 2, t0 >= 5.5e7, and r0 <= R0.
CoefficientTuple compute_medium_coefficients(const RegionParams& params);

// (b1, b2, b3) for the large region.  Requires phi = 1/3, r0 >= 2,
// t0 >= 1e12, and r0 <= R0.
CoefficientTuple compute_large_coefficients(const RegionParams& params);

// c * t^(1/6) * log t.  Pass c through dd_from_string when it stands for a
// decimal constant like 0.618, so the line matches its printed value exactly.
DD theorem_line(DD t, DD c);

// 4 t^(1/4) / (2 pi)^(1/4) - 2.807: the strengthened smoothed cap used to
// carry the main-sum bound from 1e7 up to 5.5e7.
DD chain_32_bound(double t);

// The large-region growth condition (0.618 - b1) * (log t0 + 6) >= b2; its
// left-minus-right value, which must be nonnegative.
DD growth_condition_margin(const CoefficientTuple& large_tuple);

enum class CrossingShape { unimodal_difference, monotone_difference };

// Endpoint-positivity check for rhs - lhs on [t_lo, t_hi], plus an empirical
// scan of the difference's derivative sign pattern on a 1e4-point log-t grid
// (at most one change for unimodal, none for monotone).  Failures come back
// as a failed record, never an exception.
struct CrossingRecord {
    double t_lo = 0.0;
    double t_hi = 0.0;
    DD margin_lo;
    DD margin_hi;
    DD min_grid_margin;
    double t_at_min = 0.0;
    int sign_changes = 0;
    bool endpoints_ok = false;
    bool shape_ok = false;
    bool pass = false;
};

using BoundFn = std::function<DD(double)>;

CrossingRecord crossing_check(const BoundFn& lhs, const BoundFn& rhs,
                              double t_lo, double t_hi, CrossingShape shape);

// The final dispatch: 0.618 t^(1/6) log t for any t >= 3, labeled with the
// region and the identifiers of the checks that justify it there.
struct TheoremBound {
    DD bound;
    Region region = Region::small_interval;
    std::vector<std::string> certificate;
};

TheoremBound theorem_bound(double t);

// The three published medium parameter sets and the large one, in window
// order.  Windows are attached.
std::vector<CoefficientTuple> published_tuples();

} // namespace zetabound
