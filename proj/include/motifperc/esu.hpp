#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "motifperc/motif.hpp"
#include "motifperc/rng.hpp"
#include "motifperc/window.hpp"

namespace motifperc {

// One induced connected k-subgraph occurrence. `verts` are dense graph
// indices, sorted ascending; `mask` is the induced adjacency over that order
// (see SmallGraph::pair_index).
struct MotifInstance {
    std::array<std::uint32_t, 8> verts{};
    std::uint8_t k = 0;
    std::uint32_t mask = 0;
    std::int16_t pattern = -1;  // catalog index

    std::span<const std::uint32_t> vertices() const { return {verts.data(), k}; }

    friend bool operator==(const MotifInstance& a, const MotifInstance& b) {
        return a.k == b.k && a.pattern == b.pattern &&
               std::equal(a.verts.begin(), a.verts.begin() + a.k, b.verts.begin());
    }
};

namespace detail {

// ESU (the exact enumerator RAND-ESU samples): grow subgraphs from each root
// vertex using only exclusive neighbors with id greater than the root, so
// every connected k-set is emitted exactly once. `probs` (size k) gates each
// tree extension at depth d with probability probs[d-1]; null means exact.
template <class Visitor>
class EsuEngine {
  public:
    EsuEngine(const WindowGraph& g, const PatternClassifier& classifier, int k,
              const double* probs, std::mt19937_64* rng, Visitor& visit)
        : g_(g), classifier_(classifier), k_(k), probs_(probs), rng_(rng), visit_(visit) {
        if (k_ < 3) throw std::invalid_argument("motif order must be >= 3");
        if (k_ > 8) throw std::invalid_argument("motif order must be <= 8");
        if (classifier_.catalog().order() != k_)
            throw std::invalid_argument("classifier order does not match k");
        in_hood_.assign(g_.vertex_count(), 0);
        sub_.reserve(k_);
        ext_pool_.resize(k_);
    }

    void run() {
        const std::uint32_t n = g_.vertex_count();
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!take(1)) continue;
            auto& ext = ext_pool_[0];
            ext.clear();
            std::size_t marked = 0;
            for (std::uint32_t u : g_.neighbors(v)) {
                if (u <= v) continue;
                ext.push_back(u);
                in_hood_[u] = 1;
                marks_.push_back(u);
                ++marked;
            }
            root_ = v;
            sub_.push_back(v);
            extend(1, ext);
            sub_.pop_back();
            for (std::size_t i = 0; i < marked; ++i) {
                in_hood_[marks_.back()] = 0;
                marks_.pop_back();
            }
        }
    }

  private:
    bool take(int depth) {
        if (!probs_) return true;
        const double p = probs_[depth - 1];
        if (p >= 1.0) return true;
        return bernoulli(*rng_, p);
    }

    void extend(int depth, std::vector<std::uint32_t>& ext) {
        if (depth == k_) {
            emit();
            return;
        }
        auto& child = ext_pool_[depth];
        while (!ext.empty()) {
            const std::uint32_t w = ext.back();
            ext.pop_back();
            if (!take(depth + 1)) continue;
            // exclusive neighbors of w: adjacent to no current subgraph vertex
            std::size_t marked = 0;
            for (std::uint32_t u : g_.neighbors(w)) {
                if (u <= root_ || in_hood_[u]) continue;
                in_hood_[u] = 1;
                marks_.push_back(u);
                ++marked;
            }
            child = ext;
            child.insert(child.end(), marks_.end() - marked, marks_.end());
            sub_.push_back(w);
            extend(depth + 1, child);
            sub_.pop_back();
            for (std::size_t i = 0; i < marked; ++i) {
                in_hood_[marks_.back()] = 0;
                marks_.pop_back();
            }
        }
    }

    void emit() {
        MotifInstance inst;
        inst.k = static_cast<std::uint8_t>(k_);
        std::copy(sub_.begin(), sub_.end(), inst.verts.begin());
        std::sort(inst.verts.begin(), inst.verts.begin() + k_);
        std::uint32_t mask = 0;
        for (int i = 0; i < k_; ++i)
            for (int j = i + 1; j < k_; ++j)
                if (g_.has_edge(inst.verts[i], inst.verts[j]))
                    mask |= 1u << SmallGraph::pair_index(i, j, k_);
        inst.mask = mask;
        inst.pattern = static_cast<std::int16_t>(classifier_.classify(mask));
        visit_(inst);
    }

    const WindowGraph& g_;
    const PatternClassifier& classifier_;
    const int k_;
    const double* probs_;
    std::mt19937_64* rng_;
    Visitor& visit_;
    std::uint32_t root_ = 0;
    std::vector<std::uint32_t> sub_;
    std::vector<std::uint8_t> in_hood_;       // in subgraph or adjacent to it (> root)
    std::vector<std::uint32_t> marks_;        // undo stack for in_hood_
    std::vector<std::vector<std::uint32_t>> ext_pool_;
};

}  // namespace detail

template <class Visitor>
void esu_enumerate(const WindowGraph& g, const PatternClassifier& classifier, int k,
                   Visitor&& visit) {
    detail::EsuEngine<Visitor> engine(g, classifier, k, nullptr, nullptr, visit);
    engine.run();
}

template <class Visitor>
void rand_esu(const WindowGraph& g, const PatternClassifier& classifier, int k,
              std::span<const double> depth_probabilities, std::uint64_t seed,
              Visitor&& visit) {
    if (static_cast<int>(depth_probabilities.size()) != k)
        throw std::invalid_argument("rand_esu: need one probability per depth");
    for (double p : depth_probabilities)
        if (p <= 0.0 || p > 1.0)
            throw std::invalid_argument("rand_esu: probabilities must be in (0,1]");
    std::mt19937_64 rng(seed);
    detail::EsuEngine<Visitor> engine(g, classifier, k, depth_probabilities.data(), &rng,
                                      visit);
    engine.run();
}

std::vector<MotifInstance> esu_collect(const WindowGraph& g,
                                       const PatternClassifier& classifier, int k);

// Instances grouped by catalog index; patterns without instances are absent.
std::map<int, std::vector<MotifInstance>> instances_by_pattern(
    const WindowGraph& g, const PatternClassifier& classifier, int k);

}  // namespace motifperc
