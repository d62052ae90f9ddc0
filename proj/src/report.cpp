#include "stitlab/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "stitlab/io.hpp"

namespace stitlab::cli {

using nlohmann::json;

std::string to_string(Check c) {
    switch (c) {
        case Check::ZScore: return "z";
        case Check::PValue: return "pvalue";
        case Check::AtMost: return "at-most";
        case Check::AtLeast: return "at-least";
        case Check::RelativeTo: return "relative";
        case Check::Info: return "info";
    }
    return "info";
}

std::string to_string(TargetSource s) {
    switch (s) {
        case TargetSource::Analytic: return "analytic";
        case TargetSource::LiteratureConstant: return "literature-constant";
        case TargetSource::Mc: return "mc";
    }
    return "analytic";
}

TargetSource source_of(formulas::Provenance p) {
    return p == formulas::Provenance::LiteratureConstant ? TargetSource::LiteratureConstant : TargetSource::Analytic;
}

bool StatReport::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

ReportRow& StatReport::z_row(std::string statistic, std::string parameters, const stats::EstimateWithError& e,
                             TargetSource source) {
    ReportRow r;
    r.statistic = std::move(statistic);
    r.parameters = std::move(parameters);
    r.estimate = e.estimate;
    r.se = e.se;
    r.n = e.n;
    r.target = e.target;
    r.provenance = source;
    if (e.target) {
        r.z = e.z();
        r.check = Check::ZScore;
        r.threshold = config.z_max;
        r.pass = std::fabs(*r.z) <= config.z_max;
    }
    rows.push_back(std::move(r));
    return rows.back();
}

ReportRow& StatReport::pvalue_row(std::string statistic, std::string parameters, double estimate, double pvalue,
                                  double alpha, std::size_t n, std::optional<double> target, TargetSource source) {
    ReportRow r;
    r.statistic = std::move(statistic);
    r.parameters = std::move(parameters);
    r.estimate = estimate;
    r.n = n;
    r.target = target;
    r.pvalue = pvalue;
    r.check = Check::PValue;
    r.threshold = alpha;
    r.provenance = source;
    r.pass = pvalue >= alpha;
    rows.push_back(std::move(r));
    return rows.back();
}

ReportRow& StatReport::bound_row(std::string statistic, std::string parameters, double estimate, Check check,
                                 double threshold, std::size_t n) {
    ReportRow r;
    r.statistic = std::move(statistic);
    r.parameters = std::move(parameters);
    r.estimate = estimate;
    r.n = n;
    r.check = check;
    r.threshold = threshold;
    r.pass = check == Check::AtMost ? estimate <= threshold : estimate >= threshold;
    rows.push_back(std::move(r));
    return rows.back();
}

ReportRow& StatReport::relative_row(std::string statistic, std::string parameters, double estimate, double se,
                                    double target, double tolerance, std::size_t n, TargetSource source) {
    ReportRow r;
    r.statistic = std::move(statistic);
    r.parameters = std::move(parameters);
    r.estimate = estimate;
    r.se = se;
    r.n = n;
    r.target = target;
    if (se > 0) r.z = (estimate - target) / se;
    r.check = Check::RelativeTo;
    r.threshold = tolerance;
    r.provenance = source;
    r.pass = std::fabs(estimate - target) <= tolerance * std::fabs(target);
    rows.push_back(std::move(r));
    return rows.back();
}

ReportRow& StatReport::info_row(std::string statistic, std::string parameters, double estimate, double se,
                                std::size_t n, std::optional<double> target, TargetSource source) {
    ReportRow r;
    r.statistic = std::move(statistic);
    r.parameters = std::move(parameters);
    r.estimate = estimate;
    r.se = se;
    r.n = n;
    r.target = target;
    if (target && se > 0) r.z = (estimate - *target) / se;
    r.provenance = source;
    rows.push_back(std::move(r));
    return rows.back();
}

namespace {

std::string cell(const std::optional<double>& x) { return x ? io::format_double(*x) : ""; }

// Parameters may contain commas; quote them for CSV.
std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

std::string report_csv(const StatReport& r) {
    std::ostringstream s;
    s << "statistic,parameters,estimate,se,n,target,z,pvalue,check,threshold,pass,provenance\n";
    for (const auto& row : r.rows) {
        s << row.statistic << ',' << quoted(row.parameters) << ',' << io::format_double(row.estimate) << ','
          << io::format_double(row.se) << ',' << row.n << ',' << cell(row.target) << ',' << cell(row.z) << ','
          << cell(row.pvalue) << ',' << to_string(row.check) << ','
          << (row.check == Check::Info ? "" : io::format_double(row.threshold)) << ','
          << (row.pass ? "true" : "false") << ',' << to_string(row.provenance) << '\n';
    }
    return s.str();
}

std::string curves_csv(const StatReport& r) {
    std::ostringstream s;
    s << "model,curve,r,value,se,target\n";
    for (const auto& c : r.curves)
        s << c.model << ',' << c.curve << ',' << io::format_double(c.r) << ',' << io::format_double(c.value) << ','
          << io::format_double(c.se) << ',' << cell(c.target) << '\n';
    return s.str();
}

std::string report_json(const StatReport& r) {
    json j;
    j["config"] = json::parse(serialize_config(r.config));
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"statistic", row.statistic},
                        {"parameters", row.parameters},
                        {"estimate", row.estimate},
                        {"se", row.se},
                        {"n", row.n},
                        {"target", optional_json(row.target)},
                        {"z", optional_json(row.z)},
                        {"pvalue", optional_json(row.pvalue)},
                        {"check", to_string(row.check)},
                        {"threshold", row.check == Check::Info ? json(nullptr) : json(row.threshold)},
                        {"pass", row.pass},
                        {"provenance", to_string(row.provenance)}});
    j["rows"] = std::move(rows);
    json curves = json::array();
    for (const auto& c : r.curves)
        curves.push_back({{"model", c.model},
                          {"curve", c.curve},
                          {"r", c.r},
                          {"value", c.value},
                          {"se", c.se},
                          {"target", optional_json(c.target)}});
    j["curves"] = std::move(curves);
    j["files"] = r.files;
    j["pass"] = r.all_pass();
    return j.dump(2) + "\n";
}

std::string metrics_json(const StatReport& r) {
    json j = {{"wall_seconds", r.metrics.wall_seconds},
              {"threads", r.metrics.threads},
              {"replicates", r.metrics.replicates},
              {"mean_cells", r.metrics.mean_cells},
              {"max_cells", r.metrics.max_cells}};
    return j.dump(2) + "\n";
}

std::string summary_text(const StatReport& r) {
    std::ostringstream s;
    std::size_t failed = 0;
    for (const auto& row : r.rows) {
        if (row.check == Check::Info) continue;
        s << (row.pass ? "PASS " : "FAIL ") << row.statistic;
        if (!row.parameters.empty()) s << " [" << row.parameters << "]";
        s << " estimate=" << row.estimate;
        if (row.target) s << " target=" << *row.target;
        if (row.z) s << " z=" << *row.z;
        if (row.pvalue) s << " p=" << *row.pvalue;
        s << '\n';
        if (!row.pass) ++failed;
    }
    s << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << '\n';
    return s.str();
}

std::vector<std::filesystem::path> write_report(const StatReport& r, const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    std::string prefix = r.config.prefix();
    auto put = [&](const std::string& name, const std::string& text) {
        auto p = dir / name;
        io::write_text(p, text);
        out.push_back(p);
    };
    put(prefix + ".csv", report_csv(r));
    put(prefix + ".json", report_json(r));
    if (!r.curves.empty()) put(prefix + "-curves.csv", curves_csv(r));
    put(prefix + "-metrics.json", metrics_json(r));
    return out;
}

}  // namespace stitlab::cli
