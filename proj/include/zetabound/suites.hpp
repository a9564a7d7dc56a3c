#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetabound/report.hpp"

namespace zetabound {

// When only is set, suites still assign the same check ids in the same
// order but execute just the matching check; the counter-based generator
// makes the replayed record identical to the original run's.
struct SuiteFilter {
    const std::string* only = nullptr;

    bool matches(const std::string& id) const { return !only || *only == id; }
};

// Randomized dominance families: generalized Kusmin-Landau, second- and
// third-derivative tests, the shift-difference chain, and the subdivision
// audit.
std::vector<VerificationRecord> suite_lemmas(const RunConfig& config,
                                             const SuiteFilter& filter = {});

// Region-by-region evidence for the 0.618 line: coefficient matches,
// crossing scans, the partial-summation chain, envelope and tail-sum
// inequalities, derivative sandwiches, and the 0.595 small-t grid.
std::vector<VerificationRecord> suite_regions(const RunConfig& config,
                                              const SuiteFilter& filter = {});

// Direct samples: reference zeta values against the 0.618 line.
std::vector<VerificationRecord> suite_theorem(const RunConfig& config,
                                              const SuiteFilter& filter = {});

// Runs the named suites ("lemmas", "regions", "theorem", or "all") and
// returns the combined records.  Unknown names throw std::domain_error.
std::vector<VerificationRecord> run_suites(const std::vector<std::string>& names,
                                           const RunConfig& config);

// Regenerates exactly one record by id; nullopt when no suite owns the id.
std::optional<VerificationRecord> replay_check(const std::string& check_id,
                                               const RunConfig& config);

} // namespace zetabound
