#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace motifperc {

// Dense user id. Raw inputs carry opaque string ids; the io layer interns
// them before anything here runs.
using UserId = std::uint32_t;

struct RawEvent {
    UserId source = 0;
    UserId target = 0;
    double time = 0.0;
};

struct ReshareEvent {
    UserId source = 0;
    UserId target = 0;
    double time = 0.0;  // seconds since the first posting, >= 0
};

// One microblog's reshare sequence after normalization: events sorted by
// (time, target, source), times shifted so the first event is at 0, and
// each user activated at most once (first reshare wins). The key makes the
// cascade invariant under reordering of equal-time input events.
struct Cascade {
    std::string id;
    UserId root = 0;  // original poster, active at t = 0
    std::vector<ReshareEvent> events;
    double duration = 0.0;

    std::size_t activation_count() const { return events.size() + 1; }

    // (user, activation time) in activation order, root first.
    std::vector<std::pair<UserId, double>> activations() const;
};

struct IngestStats {
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_repeat_activations = 0;
};

Cascade ingest_cascade(std::string id, std::vector<RawEvent> raw,
                       IngestStats* stats = nullptr);

// Undirected historical-interaction edges. Stored as packed (min,max) pairs.
class SocialNetwork {
  public:
    // Self loops are ignored; duplicates collapse.
    void add_edge(UserId u, UserId v);
    bool has_edge(UserId u, UserId v) const;
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

  private:
    static std::uint64_t key(UserId u, UserId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }
    std::unordered_set<std::uint64_t> edges_;
};

SocialNetwork build_social_network(std::span<const std::pair<UserId, UserId>> pairs);

}  // namespace motifperc
