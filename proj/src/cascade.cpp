#include "motifperc/cascade.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

#include "motifperc/errors.hpp"

namespace motifperc {

std::vector<std::pair<UserId, double>> Cascade::activations() const {
    std::vector<std::pair<UserId, double>> out;
    out.reserve(events.size() + 1);
    out.emplace_back(root, 0.0);
    for (const auto& e : events) out.emplace_back(e.target, e.time);
    return out;
}

Cascade ingest_cascade(std::string id, std::vector<RawEvent> raw, IngestStats* stats) {
    if (raw.empty()) throw DataError("cascade '" + id + "': no events");

    IngestStats local;
    std::vector<RawEvent> kept;
    kept.reserve(raw.size());
    for (const auto& e : raw) {
        if (e.source == e.target) {
            ++local.dropped_self_loops;
            continue;
        }
        kept.push_back(e);
    }
    if (kept.empty()) {
        if (stats) *stats = local;
        throw DataError("cascade '" + id + "': no events after dropping self-loops");
    }

    // Canonical order: equal-time events sort by (target, source), so any
    // permutation of the input yields the same cascade.
    std::sort(kept.begin(), kept.end(), [](const RawEvent& a, const RawEvent& b) {
        return std::tie(a.time, a.target, a.source) < std::tie(b.time, b.target, b.source);
    });

    const double t0 = kept.front().time;

    Cascade c;
    c.id = std::move(id);
    c.root = kept.front().source;

    std::unordered_set<UserId> activated;
    activated.reserve(kept.size() + 1);
    activated.insert(c.root);
    for (const auto& e : kept) {
        if (!activated.insert(e.target).second) {
            ++local.dropped_repeat_activations;
            continue;
        }
        c.events.push_back(ReshareEvent{e.source, e.target, e.time - t0});
    }
    // The first kept event always survives the filter (its target is never
    // the root), so events is non-empty here.
    c.duration = c.events.back().time;
    if (stats) *stats = local;
    return c;
}

void SocialNetwork::add_edge(UserId u, UserId v) {
    if (u == v) return;
    edges_.insert(key(u, v));
}

bool SocialNetwork::has_edge(UserId u, UserId v) const {
    if (u == v) return false;
    return edges_.count(key(u, v)) != 0;
}

SocialNetwork build_social_network(std::span<const std::pair<UserId, UserId>> pairs) {
    SocialNetwork net;
    for (const auto& [u, v] : pairs) net.add_edge(u, v);
    return net;
}

}  // namespace motifperc
