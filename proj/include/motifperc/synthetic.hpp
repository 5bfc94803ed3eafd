#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace motifperc {

// Desk-scale corpus generator. Each cascade is a random recursive tree over
// the activation order with window-dependent event rates (one burst window,
// then a slowing tail), plus "historical" edges planted among same-window
// nodes with per-window density, closing triads preferentially.
struct SyntheticConfig {
    int n_cascades = 200;
    int nodes_per_cascade = 320;
    int window_size = 80;
    int burst_window = 1;
    // events/second per window; the last value repeats for longer cascades
    std::vector<double> window_rates = {1.0, 10.0, 1.0, 0.3};
    // planted-edge density per window as a fraction of the complete graph;
    // the last value repeats
    std::vector<double> window_density = {0.01, 0.01, 0.01, 0.03};
    double within_window_parent_prob = 0.8;
    double triad_fraction = 0.7;     // planted edges that close a tree triangle
    double density_jitter = 0.3;     // per-cascade density multiplier U[1-j, 1+j]
    std::uint64_t seed = 1;
};

struct RawCascadeRecord {
    std::string id;
    std::vector<std::tuple<std::string, std::string, double>> events;  // src, dst, t
};

struct SyntheticCorpus {
    std::vector<RawCascadeRecord> cascades;
    std::vector<std::pair<std::string, std::string>> social_edges;
};

SyntheticCorpus generate_synthetic(const SyntheticConfig& config);

// cascades as `id,src,dst,t` CSV; social as `u v` lines.
void write_corpus(const SyntheticCorpus& corpus, const std::string& cascades_csv_path,
                  const std::string& social_path);

}  // namespace motifperc
