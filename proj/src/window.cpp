#include "motifperc/window.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "motifperc/errors.hpp"

namespace motifperc {

namespace {
constexpr std::uint32_t kTriCap = 1024;  // dense edge-id table up to this order
}

std::vector<Window> segment(const Cascade& cascade, int window_size) {
    if (window_size < 1) throw std::invalid_argument("window_size must be >= 1");
    const auto acts = cascade.activations();
    const std::size_t w = static_cast<std::size_t>(window_size);
    if (acts.size() < w)
        throw DataError("cascade '" + cascade.id + "': " + std::to_string(acts.size()) +
                        " activations < window size " + std::to_string(window_size));

    const std::size_t q = acts.size() / w;  // trailing partial block discarded
    std::vector<Window> windows(q);
    for (std::size_t i = 0; i < q; ++i) {
        Window& win = windows[i];
        win.index = static_cast<int>(i);
        win.nodes.reserve(w);
        for (std::size_t j = i * w; j < (i + 1) * w; ++j) win.nodes.push_back(acts[j].first);
        win.start_time = acts[i * w].second;
        win.end_time = acts[(i + 1) * w - 1].second;
    }
    return windows;
}

WindowGraph::WindowGraph(Window meta, std::vector<UserId> vertex_ids,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : window_(std::move(meta)), vertex_ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
    n_ = static_cast<std::uint32_t>(vertex_ids_.size());
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("self loop in window graph");
        if (u > v) std::swap(u, v);
        if (v >= n_) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    build_index();
}

WindowGraph WindowGraph::from_edges(std::uint32_t n,
                                    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<UserId> ids(n);
    for (std::uint32_t i = 0; i < n; ++i) ids[i] = i;
    Window meta;
    meta.index = -1;
    return WindowGraph(meta, std::move(ids), std::move(edges));
}

void WindowGraph::build_index() {
    adj_.assign(n_, {});
    if (n_ >= 2 && n_ <= kTriCap)
        tri_.assign(static_cast<std::size_t>(n_) * (n_ - 1) / 2, -1);
    for (std::size_t id = 0; id < edges_.size(); ++id) {
        auto [u, v] = edges_[id];
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        if (!tri_.empty())
            tri_[tri_index(u, v)] = static_cast<std::int32_t>(id);
        else
            sparse_[(static_cast<std::uint64_t>(u) << 32) | v] = static_cast<std::int32_t>(id);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

std::size_t WindowGraph::tri_index(std::uint32_t u, std::uint32_t v) const {
    // u < v; row-major upper triangle
    return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
}

bool WindowGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    return edge_id(u, v) >= 0;
}

std::int32_t WindowGraph::edge_id(std::uint32_t u, std::uint32_t v) const {
    if (u == v) return -1;
    if (u > v) std::swap(u, v);
    if (!tri_.empty()) return tri_[tri_index(u, v)];
    auto it = sparse_.find((static_cast<std::uint64_t>(u) << 32) | v);
    return it == sparse_.end() ? -1 : it->second;
}

WindowGraph build_window_graph(const Cascade& cascade, const Window& window,
                               const SocialNetwork& social) {
    std::vector<UserId> verts = window.nodes;
    std::sort(verts.begin(), verts.end());

    std::unordered_map<UserId, std::uint32_t> dense;
    dense.reserve(verts.size());
    for (std::uint32_t i = 0; i < verts.size(); ++i) dense.emplace(verts[i], i);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    // Reshare edges: both endpoints must have activated in this window.
    for (const auto& e : cascade.events) {
        auto su = dense.find(e.source);
        auto sv = dense.find(e.target);
        if (su != dense.end() && sv != dense.end()) edges.emplace_back(su->second, sv->second);
    }
    // Historical edges among window members.
    if (!social.empty()) {
        for (std::uint32_t i = 0; i < verts.size(); ++i)
            for (std::uint32_t j = i + 1; j < verts.size(); ++j)
                if (social.has_edge(verts[i], verts[j])) edges.emplace_back(i, j);
    }
    return WindowGraph(window, std::move(verts), std::move(edges));
}

}  // namespace motifperc
