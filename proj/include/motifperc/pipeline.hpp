#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motifperc/report.hpp"

namespace motifperc {

struct PipelineConfig {
    int window_size = 80;
    int k = 5;
    std::uint64_t min_cascade = 300;  // minimum activations for inclusion
    double alpha = 0.01;
    int restarts = 1;
    std::vector<double> theta_grid;  // empty -> default_theta_grid()
    double quiescence = 0.05;
    int smooth_width = 5;
    int grid_resolution = 512;
    std::uint64_t seed = 1729;
    bool strict_pseudocode = false;
    bool absent_as_zero = true;
    int threads = 0;  // 0 -> hardware concurrency
    std::optional<int> steep_window_override;
    std::optional<int> inhib_window_override;

    std::string cascades_path;
    std::string social_path;  // optional; empty -> no historical edges
    std::string input_format = "auto";

    void validate() const;  // throws std::invalid_argument
};

std::vector<double> default_theta_grid();

// ingest -> filter -> segment -> detect phases -> window graphs -> motif
// coverage per pattern -> per-pattern Welch tests. Deterministic for a fixed
// config, independent of thread count.
CorpusReport run_pipeline(const PipelineConfig& config);

// Rebuilds the per-pattern tests from previously written coverage rows
// (steep/inhib rows only).
std::vector<TTestRow> tests_from_coverage(std::span<const CoverageRow> rows, double alpha,
                                          bool absent_as_zero = true);

// Writes phases.jsonl, coverage.csv, tests.csv, plot_mean_nc.csv and
// metadata.json into `out_dir` (created if missing).
void emit_report(const CorpusReport& report, const std::string& out_dir);

}  // namespace motifperc
