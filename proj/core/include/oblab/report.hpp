#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oblab/family_params.hpp"

namespace oblab {

// One reproducible batch run: an experiment id, a parameter profile, trial
// counts and a master seed. Every non-timing byte of the report is a
// function of this struct.
struct ExperimentConfig {
    std::string experiment;  // pprf-tests | io-tests | we-tests | thm1 | thm2 | hybrids | lemma-equiv
    std::string profile = "tiny";
    std::optional<FamilyParams> params;  // overrides the profile when set
    size_t trials = 10000;
    double delta = 0.01;
    std::string rng_seed_hex = "c0ffee01";
    uint64_t oracle_query_budget = 4096;
    uint64_t table_budget_bits = uint64_t{1} << 28;
    std::optional<uint64_t> fixed_member_key;  // worst-case runs pin the member
    uint16_t pprf_domain_bits = 10;
    uint32_t pprf_keys = 20;

    FamilyParams resolved_params() const;
    void validate() const;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
    std::string detail;
    bool budget_failure = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<CheckResult> checks;
    nlohmann::json counters = nlohmann::json::object();
    uint64_t timing_ms = 0;

    bool pass() const;
    bool has_budget_failure() const;
    nlohmann::json to_json() const;
};

// Known ids in dispatch order.
const std::vector<std::string>& experiment_ids();

ExperimentReport run_experiment(const ExperimentConfig& config);

// Canonical JSON text: sorted keys, two-space indent, trailing newline.
std::string report_to_canonical_json(const ExperimentReport& report);
void emit_report(const ExperimentReport& report, const std::string& path);

// The reproducibility comparison ignores wall-clock fields.
nlohmann::json report_without_timing(const nlohmann::json& report_doc);

nlohmann::json params_to_json(const FamilyParams& p);
FamilyParams params_from_json(const nlohmann::json& j);

}  // namespace oblab
