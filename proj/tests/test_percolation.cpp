#include <doctest.h>

#include <algorithm>
#include <set>

#include "motifperc/percolation.hpp"
#include "motifperc/rng.hpp"
#include "oracles.hpp"

using namespace motifperc;

namespace {

WindowGraph path_graph(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return WindowGraph::from_edges(n, std::move(edges));
}

WindowGraph complete_graph(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return WindowGraph::from_edges(n, std::move(edges));
}

WindowGraph star_graph(std::uint32_t leaves) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 1; i <= leaves; ++i) edges.emplace_back(0u, i);
    return WindowGraph::from_edges(leaves + 1, std::move(edges));
}

WindowGraph two_k5() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 5; ++i)
        for (std::uint32_t j = i + 1; j < 5; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(i + 5, j + 5);
        }
    return WindowGraph::from_edges(10, std::move(edges));
}

struct Fixture {
    MotifCatalog catalog = build_catalog(5);
    PatternClassifier classifier{catalog};
};

const MotifInstance* find_instance(const std::vector<MotifInstance>& instances,
                                   std::vector<std::uint32_t> verts) {
    for (const auto& m : instances) {
        if (std::equal(verts.begin(), verts.end(), m.vertices().begin(),
                       m.vertices().end()))
            return &m;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("seed selection prefers the star center and breaks ties reproducibly") {
    Fixture f;
    const auto star = star_graph(6);
    const auto instances = esu_collect(star, f.classifier, 5);
    REQUIRE(instances.size() == 15);  // C(6,4)
    const auto seed = select_seed(instances, star, 1);
    CHECK(std::find(seed.vertices().begin(), seed.vertices().end(), 0u) !=
          seed.vertices().end());

    const auto again = select_seed(instances, star, 1);
    CHECK(seed == again);
}

TEST_CASE("P8 seed is one of the two interior instances") {
    Fixture f;
    const auto g = path_graph(8);
    const auto instances = esu_collect(g, f.classifier, 5);
    REQUIRE(instances.size() == 4);
    // degree sums: {1..5}=9, {2..6}=10, {3..7}=10, {4..8}=9 (1-indexed)
    std::set<std::vector<std::uint32_t>> winners;
    for (std::uint64_t s = 0; s < 32; ++s) {
        const auto seed = select_seed(instances, g, s);
        winners.insert(
            std::vector<std::uint32_t>(seed.vertices().begin(), seed.vertices().end()));
    }
    const std::set<std::vector<std::uint32_t>> expect = {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}};
    CHECK(winners == expect);
}

TEST_CASE("single instance is returned regardless of rng") {
    Fixture f;
    const auto g = complete_graph(5);
    const auto instances = esu_collect(g, f.classifier, 5);
    REQUIRE(instances.size() == 1);
    CHECK(select_seed(instances, g, 123) == instances[0]);
    CHECK_THROWS_AS(select_seed({}, g, 1), std::invalid_argument);
}

TEST_CASE("K6 percolates to full coverage in two passes") {
    Fixture f;
    const auto g = complete_graph(6);
    const auto instances = esu_collect(g, f.classifier, 5);
    REQUIRE(instances.size() == 6);
    const auto res = percolate(g, instances, instances[0]);
    CHECK(res.nc == 1.0);
    CHECK(res.covered_edges.size() == 15);
    CHECK(res.iterations == 2);
}

TEST_CASE("P8 percolation from the interior seed reaches every edge") {
    Fixture f;
    const auto g = path_graph(8);
    const auto instances = esu_collect(g, f.classifier, 5);
    const auto* seed = find_instance(instances, {1, 2, 3, 4, 5});
    REQUIRE(seed != nullptr);
    const auto res = percolate(g, instances, *seed);
    CHECK(res.nc == 1.0);
    CHECK(res.covered_edges.size() == 7);
    CHECK(res.covered_vertices.size() == 8);
}

TEST_CASE("percolation stays inside the seed component") {
    Fixture f;
    const auto g = two_k5();
    const auto instances = esu_collect(g, f.classifier, 5);
    REQUIRE(instances.size() == 2);
    for (const auto& seed : instances) {
        const auto res = percolate(g, instances, seed);
        CHECK(res.covered_edges.size() == 10);
        CHECK(res.nc == 0.5);
    }
}

TEST_CASE("mixed-pattern instance lists and foreign seeds are rejected") {
    Fixture f;
    const auto g = oracles::erdos_renyi(14, 0.4, 3);
    auto grouped = instances_by_pattern(g, f.classifier, 5);
    REQUIRE(grouped.size() >= 2);
    std::vector<MotifInstance> mixed;
    for (const auto& [pattern, instances] : grouped) {
        mixed.push_back(instances.front());
        if (mixed.size() == 2) break;
    }
    CHECK_THROWS_AS(percolate(g, mixed, mixed[0]), std::invalid_argument);

    const auto& some = grouped.begin()->second;
    MotifInstance foreign = some.front();
    foreign.verts[0] = 99;  // not in the list
    CHECK_THROWS_AS(percolate(g, some, foreign), std::invalid_argument);
}

// C7 with the 5-path pattern: literal pseudocode leaves one edge uncovered
// (every vertex is covered after pass 1, but edge {5,6} belongs only to
// instances that are then fully covered); edge completion closes it.
TEST_CASE("strict pseudocode versus edge completion for covered instances") {
    Fixture f;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 7; ++i) edges.emplace_back(i, (i + 1) % 7);
    const auto g = WindowGraph::from_edges(7, std::move(edges));
    const auto instances = esu_collect(g, f.classifier, 5);
    REQUIRE(instances.size() == 7);
    const auto* seed = find_instance(instances, {0, 1, 2, 3, 4});
    REQUIRE(seed != nullptr);

    PercolateOptions strict;
    strict.strict_pseudocode = true;
    const auto strict_res = percolate(g, instances, *seed, strict);
    CHECK(strict_res.covered_edges.size() == 6);
    CHECK(strict_res.covered_vertices.size() == 7);

    const auto extended = percolate(g, instances, *seed);
    CHECK(extended.covered_edges.size() == 7);
    CHECK(extended.nc == 1.0);
}

TEST_CASE("coverage with one restart is the heuristic percolation") {
    Fixture f;
    const auto g = path_graph(8);
    const auto instances = esu_collect(g, f.classifier, 5);
    const int pattern = instances.front().pattern;
    const auto res = coverage(g, pattern, instances, 1, 77);
    const auto direct = percolate(g, instances, select_seed(instances, g, 77));
    CHECK(res.covered_edges == direct.covered_edges);
    CHECK(res.restart_id == 0);
}

TEST_CASE("restarts cannot escape the seed component of two disjoint K5s") {
    Fixture f;
    const auto g = two_k5();
    const auto instances = esu_collect(g, f.classifier, 5);
    const auto res = coverage(g, instances.front().pattern, instances, 10, 5);
    CHECK(res.covered_edges.size() == 10);
    CHECK(res.nc == 0.5);
}

TEST_CASE("empty instance list flags the result") {
    Fixture f;
    const auto g = path_graph(8);
    const auto res = coverage(g, 3, {}, 4, 9);
    CHECK(res.no_instances);
    CHECK(res.nc == 0.0);
    CHECK(res.covered_edges.empty());
}

TEST_CASE("more restarts never cover fewer edges (same stream prefix)") {
    Fixture f;
    const auto g = oracles::erdos_renyi(20, 0.18, 11);
    auto grouped = instances_by_pattern(g, f.classifier, 5);
    for (const auto& [pattern, instances] : grouped) {
        std::size_t prev = 0;
        for (int r : {1, 2, 4, 8}) {
            const auto res = coverage(g, pattern, instances, r, 31);
            CHECK(res.covered_edges.size() >= prev);
            prev = res.covered_edges.size();
        }
    }
}

TEST_CASE("coverage is deterministic for a fixed seed") {
    Fixture f;
    const auto g = oracles::erdos_renyi(20, 0.2, 8);
    auto grouped = instances_by_pattern(g, f.classifier, 5);
    REQUIRE(!grouped.empty());
    const auto& [pattern, instances] = *grouped.begin();
    const auto a = coverage(g, pattern, instances, 5, 99);
    const auto b = coverage(g, pattern, instances, 5, 99);
    CHECK(a.covered_edges == b.covered_edges);
    CHECK(a.covered_vertices == b.covered_vertices);
    CHECK(a.seed == b.seed);
    CHECK(a.restart_id == b.restart_id);
}

TEST_CASE("coverage_table covers the expected single-pattern graphs") {
    Fixture f;
    auto table = coverage_table(complete_graph(6), f.classifier, 5, 1, 1);
    REQUIRE(table.size() == 1);
    CHECK(table.begin()->second.nc == 1.0);

    table = coverage_table(path_graph(8), f.classifier, 5, 1, 1);
    REQUIRE(table.size() == 1);
    CHECK(table.begin()->second.nc == 1.0);

    table = coverage_table(WindowGraph::from_edges(9, {}), f.classifier, 5, 1, 1);
    CHECK(table.empty());
}

TEST_CASE("audit: admissions, batch merge and termination on random graphs") {
    Fixture f;
    PercolateOptions opts;
    opts.record_admissions = true;
    for (int trial = 0; trial < 12; ++trial) {
        const auto g = oracles::erdos_renyi(16 + trial, 0.15 + 0.01 * trial, 700 + trial);
        for (const bool strict : {false, true}) {
            opts.strict_pseudocode = strict;
            for (const auto& [pattern, instances] :
                 instances_by_pattern(g, f.classifier, 5)) {
                const auto seed = select_seed(instances, g, trial);
                const auto res = percolate(g, instances, seed, opts);
                CHECK(oracles::audit_coverage(g, instances, res, strict));
                CHECK(res.iterations <= static_cast<int>(instances.size()));
                CHECK(res.nc >= 0.0);
                CHECK(res.nc <= 1.0);
            }
        }
    }
}
