#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "motifperc/esu.hpp"
#include "motifperc/motif.hpp"
#include "motifperc/window.hpp"

namespace motifperc {

struct PercolateOptions {
    // Literal pseudocode mode admits only instances sharing exactly k-1
    // covered vertices. The default additionally folds in the edges of
    // instances whose vertices are already fully covered, which is what
    // makes complete graphs reach full coverage.
    bool strict_pseudocode = false;
    bool record_admissions = false;
};

struct Admission {
    std::size_t instance = 0;  // index into the instance list
    int pass = 0;              // 1-based
    int k_cov = 0;             // covered-vertex overlap at admission
};

struct CoverageResult {
    int pattern = -1;                          // catalog index
    std::vector<std::uint32_t> covered_vertices;  // dense ids, sorted
    std::vector<std::uint32_t> covered_edges;     // dense edge ids, sorted
    double nc = 0.0;                           // |covered_edges| / |E|
    MotifInstance seed{};
    int iterations = 0;                        // passes executed
    int restart_id = 0;
    bool no_instances = false;
    std::vector<Admission> admissions;         // when record_admissions
};

// Instance with the highest window-graph degree sum; ties broken uniformly
// at random.
std::size_t select_seed_index(std::span<const MotifInstance> instances,
                              const WindowGraph& graph, std::mt19937_64& rng);
MotifInstance select_seed(std::span<const MotifInstance> instances,
                          const WindowGraph& graph, std::uint64_t rng_seed);

// One percolation from `seed`: passes over all instances admit those sharing
// exactly k-1 vertices with the covered set (tested against the pass-start
// state; merges happen after the pass) until a pass adds no new edge.
CoverageResult percolate(const WindowGraph& graph,
                         std::span<const MotifInstance> instances,
                         const MotifInstance& seed, const PercolateOptions& opts = {});

// Heuristic-seeded percolation plus `restarts - 1` runs from random distinct
// seeds; returns the run covering the most edges (earliest restart on ties).
CoverageResult coverage(const WindowGraph& graph, int pattern,
                        std::span<const MotifInstance> instances, int restarts,
                        std::uint64_t rng_seed, const PercolateOptions& opts = {});

// coverage() for every pattern present in the graph, keyed by catalog index.
std::map<int, CoverageResult> coverage_table(const WindowGraph& graph,
                                             const PatternClassifier& classifier, int k,
                                             int restarts, std::uint64_t rng_seed,
                                             const PercolateOptions& opts = {});

}  // namespace motifperc
