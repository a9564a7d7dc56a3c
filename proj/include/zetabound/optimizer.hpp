#pragma once

#include <optional>
#include <vector>

#include "zetabound/bound_pipeline.hpp"
#include "zetabound/dd.hpp"

namespace zetabound {

enum class Objective { minimize_a1, minimize_bound_at_t };

// Exhaustive rectangular grid over (phi, eta, r0) at a fixed window start t0.
// For large searches the phi range is ignored and phi is pinned to 1/3.
// window_points, when non-empty, adds the constraint that a candidate's bound
// stays at or below the 0.618 line at each listed t; require_growth adds the
// large-region increasing-difference condition.
struct SearchSpace {
    TupleKind kind = TupleKind::medium;
    DD phi_lo;
    DD phi_hi;
    DD phi_step;
    DD eta_lo;
    DD eta_hi;
    DD eta_step;
    std::vector<long> r0_set;
    double t0 = 0.0;
    Objective objective = Objective::minimize_a1;
    double t_eval = 0.0;
    std::vector<double> window_points;
    bool require_growth = false;

    void validate() const;
};

enum class PointStatus { ok, infeasible_r0, infeasible_window };

struct Candidate {
    RegionParams params;
    CoefficientTuple tuple;
    DD objective;
};

// One grid point, feasible or not, in deterministic grid order.  objective
// is meaningful only when status == ok.
struct GridRow {
    RegionParams params;
    PointStatus status = PointStatus::ok;
    DD objective;
};

struct GridResult {
    std::vector<Candidate> ranked;
    std::vector<GridRow> rows;
    long evaluated = 0;
    long infeasible_r0 = 0;
    long infeasible_window = 0;
};

// Evaluates every lattice point, skips and counts infeasible ones, and
// returns the feasible candidates sorted by objective with a lexicographic
// (phi, eta, r0) tie-break.  The same space always yields the same output.
GridResult grid_search(const SearchSpace& space);

// Scalar objective for a single parameter point.  The family is inferred
// from phi: exactly 1/3 selects the large pipeline, anything else the
// medium one.  Returns nullopt when r0 exceeds the block-count cap R0;
// t_eval is consulted only by minimize_bound_at_t.
std::optional<DD> objective_at(const RegionParams& params, Objective objective,
                               double t_eval = 0.0);

} // namespace zetabound
