#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace zetabound {

enum class CheckKind {
    lemma_dominance,
    coefficient_match,
    crossing,
    theorem_sample,
    audit,
};

const char* check_kind_name(CheckKind kind);

// One executed check.  pass holds exactly when margin >= 0; oracle refusals
// come back with skipped = true and carry no bound, oracle, or margin.
struct VerificationRecord {
    std::string check_id;
    CheckKind kind = CheckKind::lemma_dominance;
    std::vector<std::pair<std::string, std::string>> inputs;
    double bound = 0.0;
    std::optional<double> oracle;
    double margin = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
    std::int64_t runtime_ms = 0;
};

// Per-family record counts for the randomized suites.  Fixed-size families
// (crossings, coefficient tuples, the 0.1-step small-t grid) ignore these.
struct SampleCounts {
    long kusmin_landau = 200;
    long second_derivative = 500;
    long third_derivative = 200;
    long weyl_chain = 100;
    long audit = 100;
    long rs_upper = 1000;
    long envelope = 200;
    long jensen = 100;
    long tail_sum = 100;
    long sandwich = 100;
    long theorem = 1000;

    void override_all(long n);
    void validate() const;
};

struct RunConfig {
    int precision_digits = 32;
    double oracle_cap = 1e7;
    std::uint64_t seed = 0;
    SampleCounts samples;
    std::string output_format = "json";
    double theorem_tmax = 1e6;

    void validate() const;
};

struct ReportSummary {
    long pass = 0;
    long fail = 0;
    long skip = 0;
};

ReportSummary summarize(const std::vector<VerificationRecord>& records);

// Shortest text that round-trips the double.
std::string fmt_double(double v);

nlohmann::ordered_json record_json(const VerificationRecord& record);
nlohmann::ordered_json config_json(const RunConfig& config);

// Full report object {config, records, summary}; records are sorted by
// check_id first.
nlohmann::ordered_json report_json(const RunConfig& config,
                                   std::vector<VerificationRecord> records);

std::string report_csv(std::vector<VerificationRecord> records);
std::string report_text(const RunConfig& config,
                        std::vector<VerificationRecord> records);

// Dispatch on config.output_format (json, csv, text).
std::string render_report(const RunConfig& config,
                          std::vector<VerificationRecord> records);

} // namespace zetabound
