#include <doctest.h>

#include <random>
#include <set>

#include "motifperc/motif.hpp"
#include "motifperc/rng.hpp"
#include "oracles.hpp"

using namespace motifperc;

namespace {

SmallGraph path3() {
    SmallGraph g{3, 0};
    g.set_edge(0, 1);
    g.set_edge(1, 2);
    return g;
}

}  // namespace

TEST_CASE("relabeled paths share a canonical code") {
    SmallGraph a = path3();
    SmallGraph b{3, 0};  // same path through vertex 0
    b.set_edge(1, 0);
    b.set_edge(0, 2);
    CHECK(canonical_code(a) == canonical_code(b));
}

TEST_CASE("triangle and path have distinct codes") {
    SmallGraph tri{3, 0};
    tri.set_edge(0, 1);
    tri.set_edge(1, 2);
    tri.set_edge(0, 2);
    CHECK(canonical_code(tri) != canonical_code(path3()));
}

TEST_CASE("complete graph code is the all-ones bit string") {
    SmallGraph k5{5, 0};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.set_edge(i, j);
    CHECK(canonical_code(k5) == (1u << 10) - 1);
}

TEST_CASE("canonical code is permutation invariant and matches the reference") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 3 + static_cast<int>(uniform_index(rng, 3));
        const std::uint32_t mask =
            static_cast<std::uint32_t>(uniform_index(rng, 1u << SmallGraph::pair_count(k)));
        const std::uint32_t code = canonical_code(mask, k);
        CHECK(code == oracles::reference_canonical(mask, k));
        // apply a random permutation and recanonicalize
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        shuffle_indices(perm, rng);
        SmallGraph g{k, mask}, h{k, 0};
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (g.has_edge(i, j)) h.set_edge(perm[i], perm[j]);
        CHECK(canonical_code(h) == code);
    }
}

TEST_CASE("catalog cardinalities match brute force over all labeled graphs") {
    for (const auto& [k, expect] : {std::pair(3, 2), std::pair(4, 6), std::pair(5, 21)}) {
        const auto catalog = build_catalog(k);
        CHECK(static_cast<int>(catalog.size()) == expect);
        const auto reference = oracles::reference_catalog_codes(k);
        REQUIRE(reference.size() == static_cast<std::size_t>(expect));
        std::set<std::uint32_t> got;
        for (const auto& p : catalog.patterns()) got.insert(p.code);
        CHECK(got == reference);
    }
}

TEST_CASE("catalog order is (edge_count, code) with dense indices") {
    const auto catalog = build_catalog(5);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        CHECK(catalog[i].catalog_index == static_cast<int>(i));
        CHECK(catalog[i].k == 5);
        if (i > 0) {
            const auto a = std::pair(catalog[i - 1].edge_count, catalog[i - 1].code);
            const auto b = std::pair(catalog[i].edge_count, catalog[i].code);
            CHECK(a < b);
        }
        CHECK(catalog[i].representative().connected());
        CHECK(catalog[i].representative().edge_count() == catalog[i].edge_count);
    }
    // k=5 trees have 4 edges, the complete graph 10
    CHECK(catalog[0].edge_count == 4);
    CHECK(catalog[catalog.size() - 1].edge_count == 10);
}

TEST_CASE("classifier agrees with direct canonicalization") {
    const auto catalog = build_catalog(4);
    const PatternClassifier classifier(catalog);
    for (std::uint32_t mask = 0; mask < (1u << 6); ++mask) {
        if (!SmallGraph{4, mask}.connected()) continue;
        const int idx = classifier.classify(mask);
        CHECK(catalog[idx].code == canonical_code(mask, 4));
    }
}

TEST_CASE("has_triangle") {
    SmallGraph paw{4, 0};  // triangle plus a tail
    paw.set_edge(0, 1);
    paw.set_edge(1, 2);
    paw.set_edge(0, 2);
    paw.set_edge(2, 3);
    CHECK(has_triangle(paw));
    SmallGraph p4{4, 0};
    p4.set_edge(0, 1);
    p4.set_edge(1, 2);
    p4.set_edge(2, 3);
    CHECK_FALSE(has_triangle(p4));
}
