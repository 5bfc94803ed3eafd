#include "motifperc/percolation.hpp"

#include <algorithm>
#include <stdexcept>

namespace motifperc {

namespace {

void cover_vertices(const MotifInstance& m, std::vector<std::uint8_t>& covered,
                    std::size_t& count) {
    for (std::uint32_t v : m.vertices()) {
        if (!covered[v]) {
            covered[v] = 1;
            ++count;
        }
    }
}

void cover_edges(const WindowGraph& g, const MotifInstance& m,
                 std::vector<std::uint8_t>& covered, std::size_t& count) {
    const int k = m.k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (!(m.mask >> SmallGraph::pair_index(i, j, k) & 1u)) continue;
            const std::int32_t id = g.edge_id(m.verts[i], m.verts[j]);
            if (!covered[id]) {
                covered[id] = 1;
                ++count;
            }
        }
}

}  // namespace

std::size_t select_seed_index(std::span<const MotifInstance> instances,
                              const WindowGraph& graph, std::mt19937_64& rng) {
    if (instances.empty()) throw std::invalid_argument("select_seed: no instances");
    std::uint64_t best = 0;
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        std::uint64_t sum = 0;
        for (std::uint32_t v : instances[i].vertices()) sum += graph.degree(v);
        if (ties.empty() || sum > best) {
            best = sum;
            ties.assign(1, i);
        } else if (sum == best) {
            ties.push_back(i);
        }
    }
    return ties[uniform_index(rng, ties.size())];
}

MotifInstance select_seed(std::span<const MotifInstance> instances,
                          const WindowGraph& graph, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    return instances[select_seed_index(instances, graph, rng)];
}

CoverageResult percolate(const WindowGraph& graph,
                         std::span<const MotifInstance> instances,
                         const MotifInstance& seed, const PercolateOptions& opts) {
    if (instances.empty()) throw std::invalid_argument("percolate: no instances");
    const int k = instances.front().k;
    bool seed_present = false;
    for (const auto& m : instances) {
        if (m.pattern != seed.pattern || m.k != seed.k)
            throw std::invalid_argument("percolate: mixed-pattern instance list");
        if (m == seed) seed_present = true;
    }
    if (!seed_present) throw std::invalid_argument("percolate: seed not in instance list");

    std::vector<std::uint8_t> cov_v(graph.vertex_count(), 0);
    std::vector<std::uint8_t> cov_e(graph.edge_count(), 0);
    std::size_t nv = 0, ne = 0;
    cover_vertices(seed, cov_v, nv);
    cover_edges(graph, seed, cov_e, ne);

    CoverageResult res;
    res.pattern = seed.pattern;
    res.seed = seed;

    // Instances become dead once their overlap reaches k-1 (admitted) or k
    // (nothing left to contribute after their edges are folded in); the
    // covered set only grows, so dead instances can never match again.
    std::vector<std::uint8_t> alive(instances.size(), 1);
    std::vector<std::uint32_t> batch_v;
    std::vector<std::uint32_t> batch_e;

    int pass = 0;
    std::size_t edges_added;
    do {
        ++pass;
        batch_v.clear();
        batch_e.clear();
        for (std::size_t idx = 0; idx < instances.size(); ++idx) {
            if (!alive[idx]) continue;
            const MotifInstance& m = instances[idx];
            int k_cov = 0;
            for (std::uint32_t v : m.vertices()) k_cov += cov_v[v];
            if (k_cov == k - 1) {
                alive[idx] = 0;
                for (std::uint32_t v : m.vertices()) batch_v.push_back(v);
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j)
                        if (m.mask >> SmallGraph::pair_index(i, j, k) & 1u)
                            batch_e.push_back(
                                static_cast<std::uint32_t>(graph.edge_id(m.verts[i], m.verts[j])));
                if (opts.record_admissions) res.admissions.push_back({idx, pass, k_cov});
            } else if (k_cov == k) {
                alive[idx] = 0;
                if (!opts.strict_pseudocode) {
                    for (int i = 0; i < k; ++i)
                        for (int j = i + 1; j < k; ++j)
                            if (m.mask >> SmallGraph::pair_index(i, j, k) & 1u)
                                batch_e.push_back(static_cast<std::uint32_t>(
                                    graph.edge_id(m.verts[i], m.verts[j])));
                    if (opts.record_admissions) res.admissions.push_back({idx, pass, k_cov});
                }
            }
        }
        // Batch merge after the pass, per the do-while structure.
        edges_added = 0;
        for (std::uint32_t e : batch_e) {
            if (!cov_e[e]) {
                cov_e[e] = 1;
                ++ne;
                ++edges_added;
            }
        }
        for (std::uint32_t v : batch_v) {
            if (!cov_v[v]) {
                cov_v[v] = 1;
                ++nv;
            }
        }
    } while (edges_added > 0);

    res.iterations = pass;
    res.covered_vertices.reserve(nv);
    for (std::uint32_t v = 0; v < graph.vertex_count(); ++v)
        if (cov_v[v]) res.covered_vertices.push_back(v);
    res.covered_edges.reserve(ne);
    for (std::uint32_t e = 0; e < graph.edge_count(); ++e)
        if (cov_e[e]) res.covered_edges.push_back(e);
    res.nc = graph.edge_count() == 0
                 ? 0.0
                 : static_cast<double>(ne) / static_cast<double>(graph.edge_count());
    return res;
}

CoverageResult coverage(const WindowGraph& graph, int pattern,
                        std::span<const MotifInstance> instances, int restarts,
                        std::uint64_t rng_seed, const PercolateOptions& opts) {
    if (restarts < 1) throw std::invalid_argument("coverage: restarts must be >= 1");
    if (instances.empty()) {
        CoverageResult res;
        res.pattern = pattern;
        res.no_instances = true;
        return res;
    }

    std::mt19937_64 rng(rng_seed);
    const std::size_t heuristic = select_seed_index(instances, graph, rng);

    CoverageResult best = percolate(graph, instances, instances[heuristic], opts);
    best.restart_id = 0;

    if (restarts > 1) {
        std::vector<std::size_t> pool;
        pool.reserve(instances.size() - 1);
        for (std::size_t i = 0; i < instances.size(); ++i)
            if (i != heuristic) pool.push_back(i);
        shuffle_indices(pool, rng);
        const std::size_t extra = std::min<std::size_t>(restarts - 1, pool.size());
        for (std::size_t r = 0; r < extra; ++r) {
            CoverageResult cand = percolate(graph, instances, instances[pool[r]], opts);
            cand.restart_id = static_cast<int>(r + 1);
            if (cand.covered_edges.size() > best.covered_edges.size()) best = std::move(cand);
        }
    }
    return best;
}

std::map<int, CoverageResult> coverage_table(const WindowGraph& graph,
                                             const PatternClassifier& classifier, int k,
                                             int restarts, std::uint64_t rng_seed,
                                             const PercolateOptions& opts) {
    std::map<int, CoverageResult> out;
    auto grouped = instances_by_pattern(graph, classifier, k);
    for (auto& [pattern, instances] : grouped) {
        out.emplace(pattern, coverage(graph, pattern, instances, restarts,
                                      mix_seed(rng_seed, static_cast<std::uint64_t>(pattern)),
                                      opts));
    }
    return out;
}

}  // namespace motifperc
