#include "motifperc/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "motifperc/errors.hpp"
#include "motifperc/rng.hpp"

namespace motifperc {

namespace {

std::string node_name(int cascade, int node) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "c%04d_n%04d", cascade, node);
    return buf;
}

double at_or_last(const std::vector<double>& v, std::size_t i) {
    if (v.empty()) throw std::invalid_argument("synthetic: empty per-window list");
    return i < v.size() ? v[i] : v.back();
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticConfig& cfg) {
    const int w = cfg.window_size;
    if (w < 2) throw std::invalid_argument("synthetic: window size must be >= 2");
    if (cfg.nodes_per_cascade < 2 * w)
        throw std::invalid_argument("synthetic: nodes_per_cascade must be >= 2 * window size");
    if (cfg.triad_fraction < 0.0 || cfg.triad_fraction > 1.0)
        throw std::invalid_argument("synthetic: triad_fraction must be in [0,1]");
    for (double r : cfg.window_rates)
        if (r <= 0.0) throw std::invalid_argument("synthetic: rates must be positive");

    SyntheticCorpus corpus;
    corpus.cascades.reserve(cfg.n_cascades);

    for (int c = 0; c < cfg.n_cascades; ++c) {
        RawCascadeRecord rec;
        rec.id = [&] {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "c%04d", c);
            return std::string(buf);
        }();
        std::mt19937_64 rng(mix_seed(cfg.seed, fnv1a64(rec.id)));

        const int n = cfg.nodes_per_cascade;
        const int windows = n / w;

        // Recursive tree over activation order. Parents come from the same
        // window with probability within_window_parent_prob so window graphs
        // keep enough in-window structure to plant triads on.
        std::vector<int> parent(n, -1);
        double t = 0.0;
        std::vector<double> activation_time(n, 0.0);
        for (int i = 1; i < n; ++i) {
            const int win = i / w;
            const int win_first = win * w;
            int p;
            if (i > win_first && bernoulli(rng, cfg.within_window_parent_prob))
                p = win_first + static_cast<int>(uniform_index(rng, i - win_first));
            else
                p = static_cast<int>(uniform_index(rng, i));
            parent[i] = p;
            t += exponential(rng, at_or_last(cfg.window_rates, win));
            activation_time[i] = t;
            rec.events.emplace_back(node_name(c, p), node_name(c, i), t);
        }

        // Planted historical edges, per window.
        const double jitter =
            1.0 + cfg.density_jitter * (2.0 * uniform_double(rng) - 1.0);
        for (int win = 0; win < windows; ++win) {
            const int lo = win * w;
            // within-window tree adjacency
            std::vector<std::vector<int>> tree_adj(w);
            std::set<std::pair<int, int>> present;
            for (int i = lo; i < lo + w; ++i) {
                const int p = parent[i];
                if (i == 0 || p < lo || p >= lo + w) continue;
                tree_adj[i - lo].push_back(p - lo);
                tree_adj[p - lo].push_back(i - lo);
                present.emplace(std::min(i - lo, p - lo), std::max(i - lo, p - lo));
            }
            std::vector<int> branchy;  // local ids with >= 2 in-window neighbors
            for (int v = 0; v < w; ++v)
                if (tree_adj[v].size() >= 2) branchy.push_back(v);

            const std::size_t max_pairs = static_cast<std::size_t>(w) * (w - 1) / 2;
            const double density =
                std::clamp(at_or_last(cfg.window_density, win) * jitter, 0.0, 1.0);
            std::size_t target =
                static_cast<std::size_t>(density * static_cast<double>(max_pairs) + 0.5);
            target = std::min(target, max_pairs - present.size());

            std::size_t planted = 0, attempts = 0;
            const std::size_t max_attempts = 20 * target + 100;
            while (planted < target && attempts < max_attempts) {
                ++attempts;
                int a = -1, b = -1;
                if (!branchy.empty() && bernoulli(rng, cfg.triad_fraction)) {
                    // close a triangle over a tree wedge a - v - b
                    const int v = branchy[uniform_index(rng, branchy.size())];
                    const auto& nb = tree_adj[v];
                    const std::size_t i1 = uniform_index(rng, nb.size());
                    std::size_t i2 = uniform_index(rng, nb.size() - 1);
                    if (i2 >= i1) ++i2;
                    a = nb[i1];
                    b = nb[i2];
                } else {
                    a = static_cast<int>(uniform_index(rng, w));
                    b = static_cast<int>(uniform_index(rng, w - 1));
                    if (b >= a) ++b;
                }
                const auto key = std::pair(std::min(a, b), std::max(a, b));
                if (!present.insert(key).second) continue;
                ++planted;
                corpus.social_edges.emplace_back(node_name(c, lo + key.first),
                                                 node_name(c, lo + key.second));
            }
            if (planted < target) {
                // rejection sampling stalled (near-complete window); fill from
                // the remaining absent pairs directly
                std::vector<std::pair<int, int>> absent;
                for (int a = 0; a < w; ++a)
                    for (int b = a + 1; b < w; ++b)
                        if (!present.count({a, b})) absent.emplace_back(a, b);
                shuffle_indices(absent, rng);
                for (std::size_t i = 0; planted < target && i < absent.size(); ++i) {
                    present.insert(absent[i]);
                    ++planted;
                    corpus.social_edges.emplace_back(node_name(c, lo + absent[i].first),
                                                     node_name(c, lo + absent[i].second));
                }
            }
        }
        corpus.cascades.push_back(std::move(rec));
    }
    return corpus;
}

void write_corpus(const SyntheticCorpus& corpus, const std::string& cascades_csv_path,
                  const std::string& social_path) {
    std::ofstream cf(cascades_csv_path);
    if (!cf) throw DataError("cannot write " + cascades_csv_path);
    cf << "cascade_id,source,target,time\n";
    char buf[64];
    for (const auto& rec : corpus.cascades) {
        for (const auto& [src, dst, t] : rec.events) {
            std::snprintf(buf, sizeof(buf), "%.9f", t);
            cf << rec.id << ',' << src << ',' << dst << ',' << buf << '\n';
        }
    }
    std::ofstream sf(social_path);
    if (!sf) throw DataError("cannot write " + social_path);
    for (const auto& [u, v] : corpus.social_edges) sf << u << ' ' << v << '\n';
}

}  // namespace motifperc
