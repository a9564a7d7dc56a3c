#include "zetabound/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace zetabound {

namespace {

void sort_by_id(std::vector<VerificationRecord>& records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const VerificationRecord& a, const VerificationRecord& b) {
                         return a.check_id < b.check_id;
                     });
}

} // namespace

const char* check_kind_name(CheckKind kind) {
    switch (kind) {
    case CheckKind::lemma_dominance: return "lemma_dominance";
    case CheckKind::coefficient_match: return "coefficient_match";
    case CheckKind::crossing: return "crossing";
    case CheckKind::theorem_sample: return "theorem_sample";
    case CheckKind::audit: return "audit";
    }
    return "unknown";
}

void SampleCounts::override_all(long n) {
    kusmin_landau = second_derivative = third_derivative = weyl_chain = n;
    audit = rs_upper = envelope = jensen = tail_sum = sandwich = theorem = n;
}

void SampleCounts::validate() const {
    for (long n : {kusmin_landau, second_derivative, third_derivative,
                   weyl_chain, audit, rs_upper, envelope, jensen, tail_sum,
                   sandwich, theorem}) {
        if (n < 1 || n > 9999)
            throw std::domain_error("sample counts must lie in [1, 9999]");
    }
}

void RunConfig::validate() const {
    if (precision_digits < 30)
        throw std::domain_error("precision_digits must be at least 30");
    if (precision_digits > 32)
        throw std::domain_error(
            "precision_digits above 32 is not available: the numeric backend "
            "is fixed two-term double arithmetic (~32 digits)");
    if (!(oracle_cap >= 1000.0))
        throw std::domain_error("oracle_cap must be at least 1000");
    if (output_format != "json" && output_format != "csv" &&
        output_format != "text")
        throw std::domain_error("output_format must be json, csv, or text");
    if (!(theorem_tmax >= 3.0))
        throw std::domain_error("theorem_tmax must be at least 3");
    samples.validate();
}

ReportSummary summarize(const std::vector<VerificationRecord>& records) {
    ReportSummary summary;
    for (const VerificationRecord& record : records) {
        if (record.skipped)
            ++summary.skip;
        else if (record.pass)
            ++summary.pass;
        else
            ++summary.fail;
    }
    return summary;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        for (int digits = 1; digits < 17; ++digits) {
            char probe[40];
            std::snprintf(probe, sizeof probe, "%.*g", digits, v);
            std::sscanf(probe, "%lf", &back);
            if (back == v)
                return probe;
        }
    }
    return buf;
}

nlohmann::ordered_json record_json(const VerificationRecord& record) {
    nlohmann::ordered_json j;
    j["check_id"] = record.check_id;
    j["kind"] = check_kind_name(record.kind);
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [key, value] : record.inputs)
        inputs[key] = value;
    j["inputs"] = inputs;
    if (record.skipped) {
        j["bound"] = nullptr;
        j["oracle"] = nullptr;
        j["margin"] = nullptr;
        j["pass"] = nullptr;
    } else {
        j["bound"] = record.bound;
        if (record.oracle)
            j["oracle"] = *record.oracle;
        else
            j["oracle"] = nullptr;
        j["margin"] = record.margin;
        j["pass"] = record.pass;
    }
    j["skipped"] = record.skipped;
    j["note"] = record.note;
    j["runtime_ms"] = record.runtime_ms;
    return j;
}

nlohmann::ordered_json config_json(const RunConfig& config) {
    nlohmann::ordered_json samples;
    samples["kusmin_landau"] = config.samples.kusmin_landau;
    samples["second_derivative"] = config.samples.second_derivative;
    samples["third_derivative"] = config.samples.third_derivative;
    samples["weyl_chain"] = config.samples.weyl_chain;
    samples["audit"] = config.samples.audit;
    samples["rs_upper"] = config.samples.rs_upper;
    samples["envelope"] = config.samples.envelope;
    samples["jensen"] = config.samples.jensen;
    samples["tail_sum"] = config.samples.tail_sum;
    samples["sandwich"] = config.samples.sandwich;
    samples["theorem"] = config.samples.theorem;

    nlohmann::ordered_json j;
    j["precision_digits"] = config.precision_digits;
    j["oracle_cap"] = config.oracle_cap;
    j["seed"] = config.seed;
    j["samples"] = samples;
    j["output_format"] = config.output_format;
    j["theorem_tmax"] = config.theorem_tmax;
    return j;
}

nlohmann::ordered_json report_json(const RunConfig& config,
                                   std::vector<VerificationRecord> records) {
    sort_by_id(records);
    nlohmann::ordered_json j;
    j["config"] = config_json(config);
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const VerificationRecord& record : records)
        array.push_back(record_json(record));
    j["records"] = array;
    ReportSummary summary = summarize(records);
    j["summary"] = {{"pass", summary.pass},
                    {"fail", summary.fail},
                    {"skip", summary.skip}};
    return j;
}

std::string report_csv(std::vector<VerificationRecord> records) {
    sort_by_id(records);
    std::ostringstream out;
    out << "check_id,kind,bound,oracle,margin,pass\n";
    for (const VerificationRecord& record : records) {
        out << record.check_id << ',' << check_kind_name(record.kind) << ',';
        if (record.skipped) {
            out << ",,,skip\n";
            continue;
        }
        out << fmt_double(record.bound) << ',';
        if (record.oracle)
            out << fmt_double(*record.oracle);
        out << ',' << fmt_double(record.margin) << ','
            << (record.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string report_text(const RunConfig& config,
                        std::vector<VerificationRecord> records) {
    sort_by_id(records);
    std::ostringstream out;
    for (const VerificationRecord& record : records) {
        if (record.skipped) {
            out << "[skip] " << record.check_id;
            if (!record.note.empty())
                out << "  (" << record.note << ')';
            out << '\n';
            continue;
        }
        out << (record.pass ? "[pass] " : "[FAIL] ") << record.check_id
            << "  margin=" << fmt_double(record.margin);
        if (record.oracle)
            out << "  bound=" << fmt_double(record.bound)
                << "  oracle=" << fmt_double(*record.oracle);
        if (!record.note.empty())
            out << "  (" << record.note << ')';
        out << '\n';
    }
    ReportSummary summary = summarize(records);
    out << "seed=" << config.seed << "  pass=" << summary.pass
        << "  fail=" << summary.fail << "  skip=" << summary.skip << '\n';
    return out.str();
}

std::string render_report(const RunConfig& config,
                          std::vector<VerificationRecord> records) {
    if (config.output_format == "csv")
        return report_csv(std::move(records));
    if (config.output_format == "text")
        return report_text(config, std::move(records));
    return report_json(config, std::move(records)).dump(2) + "\n";
}

} // namespace zetabound
