#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "motifperc/intensity.hpp"
#include "motifperc/stats.hpp"

namespace motifperc {

struct CoverageRow {
    std::string cascade_id;
    int window = 0;
    std::string phase;  // "steep" | "inhib" | "none"
    int catalog_index = -1;
    std::uint64_t instances = 0;
    std::uint64_t covered_edges = 0;
    std::uint64_t total_edges = 0;
    double nc = 0.0;
    int iterations = 0;
    int restart_id = 0;
};

struct PhaseRow {
    std::string cascade_id;
    PhaseDetection detection;
    int n_windows = 0;
    double theta = 0.0;
};

struct RunMetadata {
    std::map<std::string, std::string> config;  // key -> value, key order
    std::string config_hash;
    std::map<std::string, std::uint64_t> counts;
    std::map<std::string, double> timings_ms;
};

struct CorpusReport {
    std::vector<PhaseRow> phases;
    std::vector<CoverageRow> coverage;
    std::vector<TTestRow> tests;
    RunMetadata meta;
};

}  // namespace motifperc
