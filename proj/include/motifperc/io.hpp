#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "motifperc/cascade.hpp"
#include "motifperc/motif.hpp"
#include "motifperc/report.hpp"

namespace motifperc {

// Opaque string ids -> dense UserId.
class UserInterner {
  public:
    UserId intern(const std::string& name);
    std::optional<UserId> find(const std::string& name) const;
    const std::string& name(UserId id) const { return names_[id]; }
    std::size_t size() const { return names_.size(); }

  private:
    std::unordered_map<std::string, UserId> index_;
    std::vector<std::string> names_;
};

struct CorpusCounts {
    std::uint64_t cascades_read = 0;
    std::uint64_t cascades_retained = 0;
    std::uint64_t events_read = 0;
    std::uint64_t malformed_lines = 0;
    std::uint64_t dropped_self_loops = 0;
    std::uint64_t dropped_repeat_activations = 0;
    std::uint64_t social_edges = 0;
    std::uint64_t social_malformed_lines = 0;
};

struct CascadeCorpus {
    std::vector<Cascade> cascades;  // sorted by id
    UserInterner users;
    CorpusCounts counts;
};

// `cascade_id,source,target,time` per line; a header line is skipped if
// present. Malformed lines are counted, not fatal.
CascadeCorpus read_cascades_csv(const std::string& path);
// {"cascade":..,"src":..,"dst":..,"t":..} per line.
CascadeCorpus read_cascades_jsonl(const std::string& path);
// By extension: .jsonl/.ndjson/.json -> jsonl, otherwise csv.
CascadeCorpus read_cascades(const std::string& path, const std::string& format = "auto");

// Whitespace-separated `u v` per line; '#' lines are comments.
SocialNetwork read_social(const std::string& path, UserInterner& users,
                          std::uint64_t* malformed = nullptr,
                          std::uint64_t* edge_count = nullptr);

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double v);

void write_coverage_csv(const std::string& path, std::span<const CoverageRow> rows);
std::vector<CoverageRow> read_coverage_csv(const std::string& path);

void write_tests_csv(const std::string& path, std::span<const TTestRow> rows);
void write_plot_csv(const std::string& path, std::span<const TTestRow> rows);
void write_phases_jsonl(const std::string& path, std::span<const PhaseRow> rows);
void write_metadata_json(const std::string& path, const RunMetadata& meta);

std::string catalog_to_json(const MotifCatalog& catalog);

}  // namespace motifperc
