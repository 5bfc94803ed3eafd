#include "motifperc/motif.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace motifperc {

namespace {

// For permutation sigma, posmap[p(i,j)] = p(sigma(i), sigma(j)): the bit
// position each original pair lands on after relabeling.
struct PermTable {
    int k = 0;
    int pairs = 0;
    std::vector<std::array<std::uint8_t, 28>> maps;
};

PermTable make_perm_table(int k) {
    PermTable t;
    t.k = k;
    t.pairs = SmallGraph::pair_count(k);
    std::array<int, 8> perm{};
    std::iota(perm.begin(), perm.begin() + k, 0);
    do {
        std::array<std::uint8_t, 28> map{};
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                int a = perm[i], b = perm[j];
                if (a > b) std::swap(a, b);
                map[SmallGraph::pair_index(i, j, k)] =
                    static_cast<std::uint8_t>(SmallGraph::pair_index(a, b, k));
            }
        t.maps.push_back(map);
    } while (std::next_permutation(perm.begin(), perm.begin() + k));
    return t;
}

const PermTable& perm_table(int k) {
    static const std::array<PermTable, 9> tables = [] {
        std::array<PermTable, 9> out;
        for (int k = 2; k <= 8; ++k) out[k] = make_perm_table(k);
        return out;
    }();
    return tables[k];
}

}  // namespace

int SmallGraph::edge_count() const { return std::popcount(bits); }

bool SmallGraph::connected() const {
    if (k <= 1) return true;
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier) {
        std::uint32_t next = 0;
        for (int i = 0; i < k; ++i) {
            if (!(frontier >> i & 1u)) continue;
            for (int j = 0; j < k; ++j)
                if (j != i && has_edge(i, j)) next |= 1u << j;
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << k) - 1u;
}

std::vector<std::pair<int, int>> SmallGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
}

bool has_triangle(const SmallGraph& g) {
    for (int a = 0; a < g.k; ++a)
        for (int b = a + 1; b < g.k; ++b) {
            if (!g.has_edge(a, b)) continue;
            for (int c = b + 1; c < g.k; ++c)
                if (g.has_edge(a, c) && g.has_edge(b, c)) return true;
        }
    return false;
}

std::uint32_t canonical_code(std::uint32_t bits, int k) {
    if (k < 2 || k > 8) throw std::invalid_argument("canonical_code: order must be in [2,8]");
    const PermTable& t = perm_table(k);
    std::uint32_t best = ~0u;
    for (const auto& map : t.maps) {
        std::uint32_t img = 0;
        std::uint32_t rest = bits;
        while (rest) {
            const int p = std::countr_zero(rest);
            rest &= rest - 1;
            img |= 1u << map[p];
        }
        best = std::min(best, img);
    }
    return best;
}

std::uint32_t canonical_code(const SmallGraph& g) { return canonical_code(g.bits, g.k); }

MotifCatalog MotifCatalog::build(int k) {
    if (k < 2 || k > 8) throw std::invalid_argument("catalog order must be in [2,8]");

    // Grow connected classes one vertex at a time: every connected graph has
    // a vertex whose removal leaves it connected, so attaching a new vertex
    // to each nonempty subset of a (k-1)-class representative reaches every
    // class on k vertices.
    std::vector<std::uint32_t> codes = {1u};  // k = 2: the single edge
    for (int order = 3; order <= k; ++order) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t parent : codes) {
            for (std::uint32_t attach = 1; attach < (1u << (order - 1)); ++attach) {
                SmallGraph g{order, 0};
                const SmallGraph p{order - 1, parent};
                for (int i = 0; i < order - 1; ++i)
                    for (int j = i + 1; j < order - 1; ++j)
                        if (p.has_edge(i, j)) g.set_edge(i, j);
                for (int i = 0; i < order - 1; ++i)
                    if (attach >> i & 1u) g.set_edge(i, order - 1);
                next.push_back(canonical_code(g));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        codes = std::move(next);
    }

    MotifCatalog cat;
    cat.k_ = k;
    for (std::uint32_t code : codes) {
        MotifPattern pat;
        pat.code = code;
        pat.k = k;
        pat.edge_count = std::popcount(code);
        cat.patterns_.push_back(pat);
    }
    std::sort(cat.patterns_.begin(), cat.patterns_.end(),
              [](const MotifPattern& a, const MotifPattern& b) {
                  return std::pair(a.edge_count, a.code) < std::pair(b.edge_count, b.code);
              });
    for (std::size_t i = 0; i < cat.patterns_.size(); ++i) {
        cat.patterns_[i].catalog_index = static_cast<int>(i);
        cat.by_code_.emplace(cat.patterns_[i].code, static_cast<int>(i));
    }
    return cat;
}

MotifCatalog build_catalog(int k) { return MotifCatalog::build(k); }

int MotifCatalog::index_of_code(std::uint32_t code) const {
    auto it = by_code_.find(code);
    return it == by_code_.end() ? -1 : it->second;
}

PatternClassifier::PatternClassifier(const MotifCatalog& catalog) : catalog_(&catalog) {
    const int k = catalog.order();
    if (k > 6) return;  // locked cache path
    const std::uint32_t masks = 1u << SmallGraph::pair_count(k);
    table_.assign(masks, -1);
    for (std::uint32_t m = 0; m < masks; ++m) {
        if (!SmallGraph{k, m}.connected()) continue;
        const int idx = catalog.index_of_code(canonical_code(m, k));
        if (idx < 0) throw std::logic_error("connected mask missing from catalog");
        table_[m] = static_cast<std::int16_t>(idx);
    }
}

int PatternClassifier::classify(std::uint32_t mask) const {
    if (!table_.empty()) {
        const int idx = table_[mask];
        if (idx < 0) throw std::invalid_argument("classify: mask not connected");
        return idx;
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(mask);
        if (it != cache_.end()) return it->second;
    }
    const int idx = catalog_->index_of_code(canonical_code(mask, catalog_->order()));
    if (idx < 0) throw std::invalid_argument("classify: mask not connected");
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(mask, idx);
    return idx;
}

}  // namespace motifperc
