#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stitlab/config.hpp"
#include "stitlab/formulas.hpp"
#include "stitlab/stats.hpp"

namespace stitlab::cli {

// How a row is judged.
//   ZScore:     |z| <= threshold (z_max)
//   PValue:     p >= threshold
//   AtMost:     estimate <= threshold
//   AtLeast:    estimate >= threshold
//   RelativeTo: |estimate - target| <= threshold · |target|
//   Info:       always passes
enum class Check { ZScore, PValue, AtMost, AtLeast, RelativeTo, Info };
std::string to_string(Check c);

// Where the target of a row comes from. Mc marks targets that are
// themselves Monte Carlo estimates (two-sample comparisons).
enum class TargetSource { Analytic, LiteratureConstant, Mc };
std::string to_string(TargetSource s);
TargetSource source_of(formulas::Provenance p);

struct ReportRow {
    std::string statistic;
    std::string parameters;
    double estimate = 0;
    double se = 0;
    std::size_t n = 0;
    std::optional<double> target;
    std::optional<double> z;
    std::optional<double> pvalue;
    Check check = Check::Info;
    double threshold = 0;
    TargetSource provenance = TargetSource::Analytic;
    bool pass = true;
};

struct CurveRow {
    std::string model;
    std::string curve;  // "K" or "g"
    double r = 0;
    double value = 0;
    double se = 0;
    std::optional<double> target;
};

struct Metrics {
    double wall_seconds = 0;
    unsigned threads = 1;
    std::size_t replicates = 0;
    double mean_cells = 0;
    std::size_t max_cells = 0;
};

struct StatReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::vector<CurveRow> curves;
    std::vector<std::string> files;  // artifacts written besides the report
    Metrics metrics;

    bool all_pass() const;

    // Row builders; each evaluates its verdict immediately.
    ReportRow& z_row(std::string statistic, std::string parameters, const stats::EstimateWithError& e,
                     TargetSource source = TargetSource::Analytic);
    ReportRow& pvalue_row(std::string statistic, std::string parameters, double estimate, double pvalue,
                          double alpha, std::size_t n, std::optional<double> target = std::nullopt,
                          TargetSource source = TargetSource::Analytic);
    ReportRow& bound_row(std::string statistic, std::string parameters, double estimate, Check check,
                         double threshold, std::size_t n);
    ReportRow& relative_row(std::string statistic, std::string parameters, double estimate, double se, double target,
                            double tolerance, std::size_t n, TargetSource source = TargetSource::Analytic);
    ReportRow& info_row(std::string statistic, std::string parameters, double estimate, double se = 0,
                        std::size_t n = 0, std::optional<double> target = std::nullopt,
                        TargetSource source = TargetSource::Analytic);
};

// Fixed column order, 17 significant digits, empty cells for absent values.
std::string report_csv(const StatReport& r);
std::string curves_csv(const StatReport& r);
std::string report_json(const StatReport& r);
std::string metrics_json(const StatReport& r);
std::string summary_text(const StatReport& r);

// Writes <prefix>.csv, <prefix>.json, <prefix>-curves.csv (when curves
// exist) and <prefix>-metrics.json into dir. Returns the paths written.
std::vector<std::filesystem::path> write_report(const StatReport& r, const std::filesystem::path& dir);

}  // namespace stitlab::cli
