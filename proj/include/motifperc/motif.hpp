#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace motifperc {

// Undirected graph on k <= 8 labeled vertices, adjacency packed into the
// upper triangle: bit pair_index(i,j) set iff {i,j} is an edge.
struct SmallGraph {
    int k = 0;
    std::uint32_t bits = 0;

    static constexpr int pair_count(int k) { return k * (k - 1) / 2; }
    // i < j required.
    static constexpr int pair_index(int i, int j, int k) {
        return i * (2 * k - i - 1) / 2 + (j - i - 1);
    }

    bool has_edge(int i, int j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return bits >> pair_index(i, j, k) & 1u;
    }
    void set_edge(int i, int j) {
        if (i > j) std::swap(i, j);
        bits |= 1u << pair_index(i, j, k);
    }
    int edge_count() const;
    bool connected() const;
    std::vector<std::pair<int, int>> edges() const;
};

// Minimum over all k! vertex relabelings of the adjacency bit-string read as
// an integer. Isomorphic graphs share a code; distinct classes never do.
std::uint32_t canonical_code(const SmallGraph& g);
std::uint32_t canonical_code(std::uint32_t bits, int k);

bool has_triangle(const SmallGraph& g);

struct MotifPattern {
    std::uint32_t code = 0;  // canonical bits; also the canonical representative
    int k = 0;
    int edge_count = 0;
    int catalog_index = 0;

    SmallGraph representative() const { return SmallGraph{k, code}; }
};

// All connected isomorphism classes on k nodes, ordered by
// (edge_count, code). Built by vertex extension from the (k-1) catalog.
class MotifCatalog {
  public:
    static MotifCatalog build(int k);

    int order() const { return k_; }
    std::size_t size() const { return patterns_.size(); }
    std::span<const MotifPattern> patterns() const { return patterns_; }
    const MotifPattern& operator[](std::size_t i) const { return patterns_[i]; }
    // -1 when the code is not a connected k-pattern.
    int index_of_code(std::uint32_t code) const;

  private:
    int k_ = 0;
    std::vector<MotifPattern> patterns_;
    std::unordered_map<std::uint32_t, int> by_code_;
};

MotifCatalog build_catalog(int k);

// Adjacency mask -> catalog index, for classifying induced subgraphs during
// enumeration. Fully precomputed for k <= 6 (read-only afterwards, safe to
// share across threads); larger k fall back to a locked cache.
class PatternClassifier {
  public:
    explicit PatternClassifier(const MotifCatalog& catalog);

    const MotifCatalog& catalog() const { return *catalog_; }
    // `mask` must describe a connected graph on catalog().order() vertices.
    int classify(std::uint32_t mask) const;

  private:
    const MotifCatalog* catalog_;
    std::vector<std::int16_t> table_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint32_t, int> cache_;
};

}  // namespace motifperc
