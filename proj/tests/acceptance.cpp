// Acceptance gate: one line per criterion, nonzero exit when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetabound/bound_pipeline.hpp"
#include "zetabound/dd.hpp"
#include "zetabound/optimizer.hpp"
#include "zetabound/report.hpp"
#include "zetabound/suites.hpp"
#include "zetabound/zeta_eval.hpp"

using namespace zetabound;

namespace {

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<std::string()> run; // returns "" on success, else reason
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

std::string check_tuple(const CoefficientTuple& tuple,
                        const std::vector<const char*>& printed) {
    for (std::size_t c = 0; c < printed.size(); ++c) {
        double tol = c == 0 ? 1e-3 : 1e-2;
        double delta = std::abs(static_cast<double>(
            tuple.coeffs[c] - dd_from_string(printed[c])));
        if (delta > tol)
            return std::string("coefficient ") + std::to_string(c) +
                   " off by " + fmt_double(delta) + " vs printed " +
                   printed[c];
    }
    return "";
}

std::string criterion_coefficient_tables() {
    struct Case {
        RegionParams params;
        bool large;
        std::vector<const char*> printed;
    };
    std::vector<Case> cases;
    RegionParams medium;
    medium.phi = dd_from_string("0.3414");
    medium.eta = dd_from_string("1.8");
    medium.r0 = 4;
    medium.t0 = 5.5e7;
    cases.push_back(
        {medium, false, {"0.59289", "-8.0314", "8.0092", "-2.8796"}});
    medium.t0 = 1e8;
    cases.push_back(
        {medium, false, {"0.58589", "-8.0115", "8.0075", "-2.8843"}});
    medium.t0 = 8.5e10;
    cases.push_back(
        {medium, false, {"0.55305", "-7.8629", "8.0008", "-2.9111"}});
    RegionParams large;
    large.phi = DD(1.0) / 3.0;
    large.eta = dd_from_string("1.6");
    large.r0 = 4;
    large.t0 = 1e12;
    cases.push_back({large, true, {"0.478013", "3.853165", "-2.914229"}});

    for (const Case& c : cases) {
        auto start = std::chrono::steady_clock::now();
        CoefficientTuple tuple = c.large
                                     ? compute_large_coefficients(c.params)
                                     : compute_medium_coefficients(c.params);
        double elapsed = seconds_since(start);
        if (elapsed >= 1.0)
            return "tuple at t0=" + fmt_double(c.params.t0) + " took " +
                   fmt_double(elapsed) + " s";
        std::string bad = check_tuple(tuple, c.printed);
        if (!bad.empty())
            return "t0=" + fmt_double(c.params.t0) + ": " + bad;
    }
    return "";
}

std::string criterion_theorem_samples() {
    const DD line618 = dd_from_string("0.618");
    const long points = 1000;
    double llo = std::log(3.0), lhi = std::log(1e6);
    double worst = 1e300;
    double worst_t = 0.0;
    for (long i = 0; i < points; ++i) {
        double t = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                      static_cast<double>(points - 1));
        ZetaPoint point = reference_zeta(t);
        double margin = static_cast<double>(theorem_line(DD(t), line618) -
                                            point.abs_value);
        if (margin < worst) {
            worst = margin;
            worst_t = t;
        }
        if (margin <= 0.0)
            return "0.618 line violated at t=" + fmt_double(t) +
                   " margin=" + fmt_double(margin);
    }
    const DD line595 = dd_from_string("0.595");
    for (long i = 0; i <= 1970; ++i) {
        double t = (30.0 + static_cast<double>(i)) / 10.0;
        ZetaPoint point = reference_zeta(t);
        double margin = static_cast<double>(theorem_line(DD(t), line595) -
                                            point.abs_value);
        if (margin <= 0.0)
            return "0.595 line violated at t=" + fmt_double(t) +
                   " margin=" + fmt_double(margin);
    }
    std::fprintf(stderr, "  (theorem sweep min margin %s at t=%s)\n",
                 fmt_double(worst).c_str(), fmt_double(worst_t).c_str());
    return "";
}

std::string criterion_dominance() {
    RunConfig config; // defaults: 200 + 500 + 200 randomized specs
    std::vector<VerificationRecord> records = suite_lemmas(config);
    long kl = 0, sdt = 0, tdt = 0;
    for (const VerificationRecord& rec : records) {
        bool counted = false;
        if (rec.check_id.rfind("lemmas/kusmin-landau/", 0) == 0) {
            ++kl;
            counted = true;
        } else if (rec.check_id.rfind("lemmas/second-derivative/", 0) == 0) {
            ++sdt;
            counted = true;
        } else if (rec.check_id.rfind("lemmas/third-derivative/", 0) == 0) {
            ++tdt;
            counted = true;
        }
        if (counted && (rec.skipped || !rec.pass))
            return rec.check_id + " violated (margin " +
                   fmt_double(rec.margin) + ")";
    }
    if (kl != 200 || sdt != 500 || tdt != 200)
        return "sample counts off: " + std::to_string(kl) + "/" +
               std::to_string(sdt) + "/" + std::to_string(tdt);
    return "";
}

std::string criterion_crossings() {
    std::vector<CoefficientTuple> tuples = published_tuples();
    const DD c592 = dd_from_string("0.592");
    const DD c618 = dd_from_string("0.618");
    struct Entry {
        const char* name;
        BoundFn lhs;
        DD line;
        double t_lo;
        double t_hi;
    };
    std::vector<Entry> entries;
    entries.push_back({"rsl", [](double t) { return rsl_bound(t); }, c592,
                       200.0, 1e7});
    entries.push_back({"chain", [](double t) { return chain_32_bound(t); },
                       c618, 1e7, 5.5e7});
    const char* names[4] = {"tuple1", "tuple2", "tuple3", "large"};
    for (int k = 0; k < 4; ++k) {
        const CoefficientTuple tuple = tuples[static_cast<std::size_t>(k)];
        double hi = k == 3 ? 1e20 : tuple.valid_to;
        entries.push_back({names[k],
                           [tuple](double t) { return tuple.bound_at(t); },
                           c618, tuple.valid_from, hi});
    }
    for (const Entry& entry : entries) {
        DD line = entry.line;
        CrossingRecord rec = crossing_check(
            entry.lhs,
            [line](double t) { return theorem_line(DD(t), line); },
            entry.t_lo, entry.t_hi, CrossingShape::unimodal_difference);
        if (!rec.endpoints_ok || rec.margin_lo <= DD(0.0) ||
            rec.margin_hi <= DD(0.0))
            return std::string(entry.name) + ": endpoint margin not positive";
        if (rec.sign_changes > 1)
            return std::string(entry.name) + ": difference changes sign " +
                   std::to_string(rec.sign_changes) + " times";
        if (!rec.pass)
            return std::string(entry.name) + ": crossing check failed";
    }
    return "";
}

std::string criterion_audits() {
    RunConfig config; // default: 100 audit samples
    std::vector<VerificationRecord> records = suite_lemmas(config);
    long audits = 0;
    for (const VerificationRecord& rec : records) {
        if (rec.check_id.rfind("lemmas/audit/", 0) != 0)
            continue;
        ++audits;
        if (rec.skipped)
            return rec.check_id + " skipped";
        if (!rec.pass)
            return rec.check_id + " failed (margin " +
                   fmt_double(rec.margin) + ")";
    }
    if (audits != 100)
        return "expected 100 audits, got " + std::to_string(audits);

    RegionParams params;
    params.phi = dd_from_string("0.3414");
    params.eta = dd_from_string("1.8");
    params.r0 = 4;
    params.t0 = 5.5e7;
    CoefficientTuple tuple = compute_medium_coefficients(params);
    if (tuple.derived.R0 < 4)
        return "R0 at (5.5e7, 0.3414) is " + std::to_string(tuple.derived.R0);
    return "";
}

std::string criterion_optimizer() {
    SearchSpace medium;
    medium.kind = TupleKind::medium;
    medium.phi_lo = dd_from_string("0.3364");
    medium.phi_hi = dd_from_string("0.3414");
    medium.phi_step = dd_from_string("0.0005");
    medium.eta_lo = dd_from_string("1.5");
    medium.eta_hi = dd_from_string("2.1");
    medium.eta_step = dd_from_string("0.05");
    medium.r0_set = {3, 4, 5};
    medium.t0 = 5.5e7;
    medium.objective = Objective::minimize_a1;
    medium.window_points = {5.5e7, 1e8};
    GridResult medium_result = grid_search(medium);
    if (medium_result.ranked.empty())
        return "medium grid found no feasible tuple";
    double a1 =
        static_cast<double>(medium_result.ranked.front().tuple.coeffs[0]);
    if (std::abs(a1 - 0.59289) > 1e-3)
        return "medium top leading coefficient " + fmt_double(a1) +
               " not within 1e-3 of 0.59289";

    SearchSpace large;
    large.kind = TupleKind::large;
    large.eta_lo = dd_from_string("1.2");
    large.eta_hi = dd_from_string("2.0");
    large.eta_step = dd_from_string("0.05");
    large.r0_set = {3, 4, 5};
    large.t0 = 1e12;
    large.objective = Objective::minimize_bound_at_t;
    large.t_eval = 1e12;
    large.window_points = {1e12};
    large.require_growth = true;
    GridResult large_result = grid_search(large);
    if (large_result.ranked.empty())
        return "large grid found no feasible tuple";
    double b1 =
        static_cast<double>(large_result.ranked.front().tuple.coeffs[0]);
    if (std::abs(b1 - 0.478013) > 1e-3)
        return "large top leading coefficient " + fmt_double(b1) +
               " not within 1e-3 of 0.478013";
    return "";
}

std::string criterion_reproducibility() {
    RunConfig config;
    config.seed = 7;
    auto normalize = [&](std::vector<VerificationRecord> records) {
        nlohmann::json j =
            nlohmann::json::parse(render_report(config, std::move(records)));
        for (auto& rec : j.at("records"))
            rec["runtime_ms"] = 0;
        return j.dump();
    };
    std::string first = normalize(run_suites({"all"}, config));
    std::string second = normalize(run_suites({"all"}, config));
    if (first != second)
        return "same-seed reports differ outside timing fields";
    return "";
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"criterion-1-coefficient-tables", 5.0, criterion_coefficient_tables},
        {"criterion-2-theorem-samples", 300.0, criterion_theorem_samples},
        {"criterion-3-dominance-sweeps", 300.0, criterion_dominance},
        {"criterion-4-crossings", 30.0, criterion_crossings},
        {"criterion-5-subdivision-audits", 30.0, criterion_audits},
        {"criterion-6-optimizer", 120.0, criterion_optimizer},
        {"criterion-7-reproducibility", 600.0, criterion_reproducibility},
    };
    int failures = 0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string reason;
        try {
            reason = criterion.run();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        double elapsed = seconds_since(start);
        if (reason.empty() && elapsed > criterion.budget_seconds)
            reason = "over time budget (" + fmt_double(elapsed) + " s of " +
                     fmt_double(criterion.budget_seconds) + " s)";
        if (reason.empty()) {
            std::printf("PASS %s (%.1f s)\n", criterion.name, elapsed);
        } else {
            std::printf("FAIL %s (%.1f s): %s\n", criterion.name, elapsed,
                        reason.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria hold\n", criteria.size());
    else
        std::printf("%d acceptance criteria failing\n", failures);
    return failures == 0 ? 0 : 1;
}
