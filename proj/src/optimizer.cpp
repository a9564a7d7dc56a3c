#include "zetabound/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zetabound/errors.hpp"

namespace zetabound {

namespace {

const DD kThird = DD(1.0) / 3.0;

long axis_count(DD lo, DD hi, DD step) {
    if (!(step > DD(0.0)))
        throw std::domain_error("grid step must be positive");
    if (hi < lo)
        throw std::domain_error("grid range is empty");
    double span = static_cast<double>((hi - lo) / step);
    return static_cast<long>(std::floor(span + 1e-9)) + 1;
}

bool lex_before(const Candidate& a, const Candidate& b) {
    if (a.objective != b.objective)
        return a.objective < b.objective;
    if (a.params.phi != b.params.phi)
        return a.params.phi < b.params.phi;
    if (a.params.eta != b.params.eta)
        return a.params.eta < b.params.eta;
    return a.params.r0 < b.params.r0;
}

DD objective_of(const CoefficientTuple& tuple, Objective objective,
                double t_eval) {
    if (objective == Objective::minimize_a1)
        return tuple.coeffs.at(0);
    return tuple.bound_at(t_eval);
}

bool window_feasible(const CoefficientTuple& tuple,
                     const std::vector<double>& window_points) {
    static const DD line_const = dd_from_string("0.618");
    for (double w : window_points) {
        DD margin = theorem_line(DD(w), line_const) - tuple.bound_at(w);
        if (margin < DD(0.0))
            return false;
    }
    return true;
}

} // namespace

void SearchSpace::validate() const {
    if (kind == TupleKind::medium) {
        axis_count(phi_lo, phi_hi, phi_step);
        if (!(phi_lo > kThird) || !(phi_hi < DD(0.5)))
            throw std::domain_error("phi range must lie inside (1/3, 1/2)");
    }
    axis_count(eta_lo, eta_hi, eta_step);
    if (!(eta_lo > DD(0.0)))
        throw std::domain_error("eta must be positive");
    if (r0_set.empty())
        throw std::domain_error("r0_set must be non-empty");
    for (long r0 : r0_set)
        if (r0 < 2)
            throw std::domain_error("every r0 must be an integer >= 2");
    if (objective == Objective::minimize_bound_at_t && !(t_eval > 0.0))
        throw std::domain_error("minimize_bound_at_t needs a positive t_eval");
}

GridResult grid_search(const SearchSpace& space) {
    space.validate();

    std::vector<DD> phis;
    if (space.kind == TupleKind::large) {
        phis.push_back(kThird);
    } else {
        long n_phi = axis_count(space.phi_lo, space.phi_hi, space.phi_step);
        phis.reserve(static_cast<std::size_t>(n_phi));
        for (long i = 0; i < n_phi; ++i)
            phis.push_back(space.phi_lo + space.phi_step * DD(static_cast<double>(i)));
    }

    long n_eta = axis_count(space.eta_lo, space.eta_hi, space.eta_step);
    std::vector<DD> etas;
    etas.reserve(static_cast<std::size_t>(n_eta));
    for (long j = 0; j < n_eta; ++j)
        etas.push_back(space.eta_lo + space.eta_step * DD(static_cast<double>(j)));

    GridResult result;
    for (const DD& phi : phis) {
        for (const DD& eta : etas) {
            for (long r0 : space.r0_set) {
                ++result.evaluated;
                RegionParams params{phi, eta, r0, space.t0};
                GridRow row;
                row.params = params;
                CoefficientTuple tuple;
                try {
                    tuple = space.kind == TupleKind::large
                                ? compute_large_coefficients(params)
                                : compute_medium_coefficients(params);
                } catch (const HypothesisError&) {
                    ++result.infeasible_r0;
                    row.status = PointStatus::infeasible_r0;
                    result.rows.push_back(row);
                    continue;
                }
                bool ok = window_feasible(tuple, space.window_points);
                if (ok && space.require_growth)
                    ok = !(growth_condition_margin(tuple) < DD(0.0));
                if (!ok) {
                    ++result.infeasible_window;
                    row.status = PointStatus::infeasible_window;
                    result.rows.push_back(row);
                    continue;
                }
                DD value = objective_of(tuple, space.objective, space.t_eval);
                row.objective = value;
                result.rows.push_back(row);
                result.ranked.push_back({params, std::move(tuple), value});
            }
        }
    }

    std::sort(result.ranked.begin(), result.ranked.end(), lex_before);
    return result;
}

std::optional<DD> objective_at(const RegionParams& params, Objective objective,
                               double t_eval) {
    if (objective == Objective::minimize_bound_at_t && !(t_eval > 0.0))
        throw std::domain_error("minimize_bound_at_t needs a positive t_eval");
    bool large = params.phi == kThird;
    try {
        CoefficientTuple tuple = large ? compute_large_coefficients(params)
                                       : compute_medium_coefficients(params);
        return objective_of(tuple, objective, t_eval);
    } catch (const HypothesisError&) {
        return std::nullopt;
    }
}

} // namespace zetabound
