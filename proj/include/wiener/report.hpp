#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace wiener {

enum class CellStatus {
    Pass,
    Fail,                // deterministic identity failed
    StatFail,            // statistical criterion missed (3/4 sigma)
    HypothesisViolated,  // the identity's hypothesis does not hold for the cell
};

std::string_view to_string(CellStatus s);

/// One verification cell. `params` carries the exact tuple needed to
/// reproduce the cell (q values, chains, lambda, rep index, ...).
struct ReportEntry {
    std::string identity;   // e.g. "thm3.6", "eq6.2", "mc.closed-form"
    std::string family;     // "-" when not family specific
    nlohmann::ordered_json params;
    CellStatus status = CellStatus::Pass;
    double measure_discrepancy = 0.0;
    double pointwise_discrepancy = 0.0;
    double mc_std_error = 0.0;  // 0 unless a Monte Carlo cell
    std::uint64_t seed = 0;
    double runtime_ms = 0.0;
    std::string note;
};

/// Report of a full suite run. Entries are sorted before emission so output
/// does not depend on execution order.
struct VerificationReport {
    static constexpr int kSchemaVersion = 1;

    nlohmann::ordered_json config;
    std::vector<ReportEntry> entries;
    /// The measure comparison is an atom-pairing surrogate for s-a.e.
    /// equality, and Monte Carlo checks equality in expectation only: stated
    /// once per report.
    std::string comparison_note;
    std::string created_utc;

    void sort_entries();

    int total() const;
    int count(CellStatus s) const;
    /// Fraction of statistical cells (identity prefix "mc.") within bounds.
    double statistical_pass_rate() const;

    /// 0 all pass; 1 deterministic failure or hypothesis violation;
    /// 2 only statistical criteria failed.
    int exit_code() const;

    /// `volatile_fields` = false omits timestamps and runtimes, leaving only
    /// content that is byte-reproducible for a fixed config and seed.
    nlohmann::ordered_json to_json(bool volatile_fields = true) const;
    std::string to_text() const;

    static VerificationReport from_json(const nlohmann::ordered_json& j);
};

} // namespace wiener
