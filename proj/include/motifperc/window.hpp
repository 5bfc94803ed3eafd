#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "motifperc/cascade.hpp"

namespace motifperc {

// A consecutive block of exactly `window_size` newly activated users.
struct Window {
    int index = 0;
    std::vector<UserId> nodes;  // activation order
    double start_time = 0.0;    // activation time of the first member
    double end_time = 0.0;      // activation time of the last member
};

// Partitions the activation sequence (root first) into blocks of exactly
// `window_size`; a trailing partial block is discarded.
std::vector<Window> segment(const Cascade& cascade, int window_size);

// Undirected simple graph over one window's users: in-window reshare edges
// plus historical edges among window members. Vertices are dense indices
// 0..n-1 in ascending user-id order.
class WindowGraph {
  public:
    WindowGraph() = default;

    // `vertex_ids` sorted ascending and unique; edges as dense index pairs.
    WindowGraph(Window meta, std::vector<UserId> vertex_ids,
                std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    // Convenience for tests and tools: vertices 0..n-1, duplicate edges
    // collapse, self loops rejected.
    static WindowGraph from_edges(std::uint32_t n,
                                  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    std::uint32_t vertex_count() const { return n_; }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }
    std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return adj_[v]; }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    // Dense edge id in [0, edge_count), or -1 if absent.
    std::int32_t edge_id(std::uint32_t u, std::uint32_t v) const;
    std::pair<std::uint32_t, std::uint32_t> edge(std::uint32_t id) const { return edges_[id]; }
    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges() const { return edges_; }

    UserId user_id(std::uint32_t v) const { return vertex_ids_[v]; }
    std::span<const UserId> vertex_ids() const { return vertex_ids_; }
    const Window& window() const { return window_; }

  private:
    void build_index();
    std::size_t tri_index(std::uint32_t u, std::uint32_t v) const;

    Window window_;
    std::vector<UserId> vertex_ids_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;  // u < v, sorted
    std::vector<std::vector<std::uint32_t>> adj_;                 // sorted
    std::uint32_t n_ = 0;
    // edge -> id lookup: triangular table for small n, hash map otherwise
    std::vector<std::int32_t> tri_;
    std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

WindowGraph build_window_graph(const Cascade& cascade, const Window& window,
                               const SocialNetwork& social);

}  // namespace motifperc
