#include "wiener/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <iomanip>

namespace wiener {

namespace {

bool is_statistical(const ReportEntry& e) { return e.identity.rfind("mc.", 0) == 0; }

CellStatus status_from_string(std::string_view s) {
    if (s == "pass") return CellStatus::Pass;
    if (s == "fail") return CellStatus::Fail;
    if (s == "stat-fail") return CellStatus::StatFail;
    if (s == "hypothesis-violated") return CellStatus::HypothesisViolated;
    throw std::invalid_argument("unknown cell status: " + std::string(s));
}

} // namespace

std::string_view to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Pass: return "pass";
        case CellStatus::Fail: return "fail";
        case CellStatus::StatFail: return "stat-fail";
        case CellStatus::HypothesisViolated: return "hypothesis-violated";
    }
    return "unknown";
}

void VerificationReport::sort_entries() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) {
                         if (a.identity != b.identity) return a.identity < b.identity;
                         if (a.family != b.family) return a.family < b.family;
                         return a.params.dump() < b.params.dump();
                     });
}

int VerificationReport::total() const { return static_cast<int>(entries.size()); }

int VerificationReport::count(CellStatus s) const {
    return static_cast<int>(
        std::count_if(entries.begin(), entries.end(),
                      [s](const ReportEntry& e) { return e.status == s; }));
}

double VerificationReport::statistical_pass_rate() const {
    int stat_total = 0, stat_pass = 0;
    for (const ReportEntry& e : entries) {
        if (!is_statistical(e)) continue;
        ++stat_total;
        if (e.status == CellStatus::Pass) ++stat_pass;
    }
    if (stat_total == 0) return 1.0;
    return static_cast<double>(stat_pass) / stat_total;
}

int VerificationReport::exit_code() const {
    bool stat_failed = false;
    for (const ReportEntry& e : entries) {
        if (e.status == CellStatus::Fail || e.status == CellStatus::HypothesisViolated) {
            return 1;
        }
        if (e.status == CellStatus::StatFail) stat_failed = true;
    }
    // Monte Carlo closed-form cells pass as a population (>= 95%); variance
    // cells and any other statistical cells must pass individually.
    int cf_total = 0, cf_pass = 0;
    bool other_stat_failed = false;
    for (const ReportEntry& e : entries) {
        if (!is_statistical(e)) continue;
        if (e.identity == "mc.closed-form") {
            ++cf_total;
            if (e.status == CellStatus::Pass) ++cf_pass;
        } else if (e.status != CellStatus::Pass) {
            other_stat_failed = true;
        }
    }
    if (cf_total > 0 && static_cast<double>(cf_pass) / cf_total < 0.95) return 2;
    if (other_stat_failed) return 2;
    (void)stat_failed;
    return 0;
}

nlohmann::ordered_json VerificationReport::to_json(bool volatile_fields) const {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "gfft";
    if (volatile_fields && !created_utc.empty()) j["created_utc"] = created_utc;
    j["config"] = config;
    if (!comparison_note.empty()) j["comparison_note"] = comparison_note;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportEntry& e : entries) {
        nlohmann::ordered_json row;
        row["identity"] = e.identity;
        row["family"] = e.family;
        row["params"] = e.params;
        row["status"] = to_string(e.status);
        row["measure_discrepancy"] = e.measure_discrepancy;
        row["pointwise_discrepancy"] = e.pointwise_discrepancy;
        if (e.mc_std_error != 0.0) row["mc_std_error"] = e.mc_std_error;
        row["seed"] = e.seed;
        if (volatile_fields) row["runtime_ms"] = e.runtime_ms;
        if (!e.note.empty()) row["note"] = e.note;
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);

    nlohmann::ordered_json summary;
    summary["total"] = total();
    summary["pass"] = count(CellStatus::Pass);
    summary["fail"] = count(CellStatus::Fail);
    summary["stat_fail"] = count(CellStatus::StatFail);
    summary["hypothesis_violated"] = count(CellStatus::HypothesisViolated);
    summary["statistical_pass_rate"] = statistical_pass_rate();
    summary["exit_code"] = exit_code();
    j["summary"] = std::move(summary);
    return j;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "identity        family           status                "
          "measure-disc   pointwise-disc  params\n";
    for (const ReportEntry& e : entries) {
        os << std::left << std::setw(16) << e.identity << std::setw(17) << e.family
           << std::setw(22) << to_string(e.status) << std::scientific
           << std::setprecision(3) << std::setw(15) << e.measure_discrepancy
           << std::setw(16) << e.pointwise_discrepancy << std::defaultfloat << " "
           << e.params.dump() << "\n";
    }
    os << "\n"
       << "total " << total() << ", pass " << count(CellStatus::Pass) << ", fail "
       << count(CellStatus::Fail) << ", stat-fail " << count(CellStatus::StatFail)
       << ", hypothesis-violated " << count(CellStatus::HypothesisViolated) << "\n";
    os << "statistical pass rate " << std::fixed << std::setprecision(4)
       << statistical_pass_rate() << std::defaultfloat << "\n";
    if (!comparison_note.empty()) os << "note: " << comparison_note << "\n";
    os << "exit code " << exit_code() << "\n";
    return os.str();
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
    VerificationReport rep;
    if (j.value("schema_version", 0) != kSchemaVersion) {
        throw std::invalid_argument("unsupported report schema version");
    }
    rep.config = j.value("config", nlohmann::ordered_json::object());
    rep.comparison_note = j.value("comparison_note", std::string{});
    rep.created_utc = j.value("created_utc", std::string{});
    for (const auto& row : j.at("entries")) {
        ReportEntry e;
        e.identity = row.at("identity").get<std::string>();
        e.family = row.at("family").get<std::string>();
        e.params = row.value("params", nlohmann::ordered_json::object());
        e.status = status_from_string(row.at("status").get<std::string>());
        e.measure_discrepancy = row.value("measure_discrepancy", 0.0);
        e.pointwise_discrepancy = row.value("pointwise_discrepancy", 0.0);
        e.mc_std_error = row.value("mc_std_error", 0.0);
        e.seed = row.value("seed", std::uint64_t{0});
        e.runtime_ms = row.value("runtime_ms", 0.0);
        e.note = row.value("note", std::string{});
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

} // namespace wiener
