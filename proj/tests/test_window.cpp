#include <doctest.h>

#include <random>
#include <set>

#include "motifperc/errors.hpp"
#include "motifperc/rng.hpp"
#include "motifperc/window.hpp"

using namespace motifperc;

namespace {

// chain 0 -> 1 -> 2 -> ... with unit gaps
Cascade chain_cascade(int n) {
    std::vector<RawEvent> raw;
    for (int i = 1; i < n; ++i)
        raw.push_back({static_cast<UserId>(i - 1), static_cast<UserId>(i),
                       static_cast<double>(i)});
    return ingest_cascade("chain", raw);
}

}  // namespace

TEST_CASE("segment partitions activations into full windows") {
    const auto c = chain_cascade(240);
    const auto windows = segment(c, 80);
    REQUIRE(windows.size() == 3);
    std::set<UserId> seen;
    for (const auto& w : windows) {
        CHECK(w.nodes.size() == 80);
        for (UserId u : w.nodes) CHECK(seen.insert(u).second);  // disjoint
    }
    CHECK(windows[0].start_time == 0.0);
    CHECK(windows[0].end_time <= windows[1].start_time);
    CHECK(windows[1].end_time <= windows[2].start_time);
}

TEST_CASE("segment discards a trailing partial window") {
    const auto c = chain_cascade(200);
    const auto windows = segment(c, 80);
    CHECK(windows.size() == 2);
}

TEST_CASE("segment rejects cascades smaller than one window") {
    const auto c = chain_cascade(50);
    CHECK_THROWS_AS(segment(c, 80), DataError);
}

TEST_CASE("reshare chain inside one window becomes a path graph") {
    const auto c = chain_cascade(5);
    const auto windows = segment(c, 5);
    REQUIRE(windows.size() == 1);
    const auto g = build_window_graph(c, windows[0], SocialNetwork{});
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 4);
    for (std::uint32_t v = 0; v < 5; ++v) CHECK(g.degree(v) <= 2);
}

TEST_CASE("historical edge adds a chord") {
    const auto c = chain_cascade(5);
    const auto windows = segment(c, 5);
    SocialNetwork social;
    social.add_edge(0, 2);
    const auto g = build_window_graph(c, windows[0], social);
    CHECK(g.edge_count() == 5);
    CHECK(g.has_edge(0, 2));
}

TEST_CASE("reshare edges spanning two windows land in neither graph") {
    const auto c = chain_cascade(8);
    const auto windows = segment(c, 4);
    REQUIRE(windows.size() == 2);
    const auto g0 = build_window_graph(c, windows[0], SocialNetwork{});
    const auto g1 = build_window_graph(c, windows[1], SocialNetwork{});
    // the 3->4 reshare crosses the boundary
    CHECK(g0.edge_count() == 3);
    CHECK(g1.edge_count() == 3);
}

TEST_CASE("window graphs of one cascade have disjoint edge sets and attributable edges") {
    std::mt19937_64 rng(99);
    std::vector<RawEvent> raw;
    for (int i = 1; i < 60; ++i)
        raw.push_back({static_cast<UserId>(uniform_index(rng, i)), static_cast<UserId>(i),
                       static_cast<double>(i) * 0.5});
    const auto c = ingest_cascade("r", raw);
    SocialNetwork social;
    for (int t = 0; t < 150; ++t)
        social.add_edge(static_cast<UserId>(uniform_index(rng, 60)),
                        static_cast<UserId>(uniform_index(rng, 60)));

    const auto windows = segment(c, 15);
    std::set<std::pair<UserId, UserId>> all_edges;
    for (const auto& w : windows) {
        const auto g = build_window_graph(c, w, social);
        for (const auto& [a, b] : g.edges()) {
            const UserId ua = g.user_id(a), ub = g.user_id(b);
            const auto key = std::pair(std::min(ua, ub), std::max(ua, ub));
            CHECK(all_edges.insert(key).second);  // disjoint across windows
            // attributable: a reshare event inside the window or a social edge
            bool from_event = false;
            for (const auto& e : c.events)
                if ((e.source == ua && e.target == ub) || (e.source == ub && e.target == ua))
                    from_event = true;
            CHECK((from_event || social.has_edge(ua, ub)));
        }
    }
}

TEST_CASE("from_edges rejects self loops and collapses duplicates") {
    CHECK_THROWS_AS(WindowGraph::from_edges(3, {{1, 1}}), std::invalid_argument);
    const auto g = WindowGraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});
    CHECK(g.edge_count() == 2);
    CHECK(g.edge_id(0, 1) >= 0);
    CHECK(g.edge_id(0, 2) == -1);
}
