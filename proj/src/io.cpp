#include "motifperc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "motifperc/errors.hpp"

namespace motifperc {

namespace {

using json = nlohmann::json;

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct RawRecord {
    UserId src;
    UserId dst;
    double t;
};

CascadeCorpus assemble(std::map<std::string, std::vector<RawEvent>>&& groups,
                       UserInterner&& users, CorpusCounts counts) {
    CascadeCorpus corpus;
    corpus.users = std::move(users);
    corpus.counts = counts;
    for (auto& [id, events] : groups) {
        IngestStats stats;
        try {
            corpus.cascades.push_back(ingest_cascade(id, std::move(events), &stats));
        } catch (const DataError&) {
            // cascade collapsed to nothing (self-loops only); skip it
        }
        corpus.counts.dropped_self_loops += stats.dropped_self_loops;
        corpus.counts.dropped_repeat_activations += stats.dropped_repeat_activations;
    }
    corpus.counts.cascades_read = groups.size();
    return corpus;
}

}  // namespace

UserId UserInterner::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const UserId id = static_cast<UserId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

std::optional<UserId> UserInterner::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

CascadeCorpus read_cascades_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    UserInterner users;
    std::map<std::string, std::vector<RawEvent>> groups;
    CorpusCounts counts;

    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        auto fields = split_csv(sv);
        if (first) {
            first = false;
            if (fields.size() == 4 && trim(fields[3]) == "time") continue;  // header
        }
        if (fields.size() != 4) {
            ++counts.malformed_lines;
            continue;
        }
        const auto t = parse_double(trim(fields[3]));
        const auto id = trim(fields[0]);
        const auto src = trim(fields[1]);
        const auto dst = trim(fields[2]);
        if (!t || id.empty() || src.empty() || dst.empty()) {
            ++counts.malformed_lines;
            continue;
        }
        ++counts.events_read;
        groups[std::string(id)].push_back(
            RawEvent{users.intern(std::string(src)), users.intern(std::string(dst)), *t});
    }
    return assemble(std::move(groups), std::move(users), counts);
}

CascadeCorpus read_cascades_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    UserInterner users;
    std::map<std::string, std::vector<RawEvent>> groups;
    CorpusCounts counts;

    const auto as_string = [](const json& v) -> std::optional<std::string> {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
        if (v.is_number()) return format_double(v.get<double>());
        return std::nullopt;
    };

    std::string line;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        json j = json::parse(sv, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("cascade") ||
            !j.contains("src") || !j.contains("dst") || !j.contains("t") ||
            !j["t"].is_number()) {
            ++counts.malformed_lines;
            continue;
        }
        const auto id = as_string(j["cascade"]);
        const auto src = as_string(j["src"]);
        const auto dst = as_string(j["dst"]);
        if (!id || !src || !dst) {
            ++counts.malformed_lines;
            continue;
        }
        ++counts.events_read;
        groups[*id].push_back(
            RawEvent{users.intern(*src), users.intern(*dst), j["t"].get<double>()});
    }
    return assemble(std::move(groups), std::move(users), counts);
}

CascadeCorpus read_cascades(const std::string& path, const std::string& format) {
    std::string fmt = format;
    if (fmt == "auto") {
        const auto dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        fmt = (ext == "jsonl" || ext == "ndjson" || ext == "json") ? "jsonl" : "csv";
    }
    if (fmt == "jsonl") return read_cascades_jsonl(path);
    if (fmt == "csv") return read_cascades_csv(path);
    throw std::invalid_argument("unknown cascade format '" + format + "'");
}

SocialNetwork read_social(const std::string& path, UserInterner& users,
                          std::uint64_t* malformed, std::uint64_t* edge_count) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    SocialNetwork net;
    std::uint64_t bad = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        std::istringstream ss{std::string(sv)};
        std::string u, v, rest;
        if (!(ss >> u >> v) || (ss >> rest)) {
            ++bad;
            continue;
        }
        net.add_edge(users.intern(u), users.intern(v));
    }
    if (malformed) *malformed = bad;
    if (edge_count) *edge_count = net.edge_count();
    return net;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_coverage_csv(const std::string& path, std::span<const CoverageRow> rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << "cascade_id,window,phase,catalog_index,instances,covered_edges,total_edges,"
           "nc,iterations,restart_id\n";
    for (const auto& r : rows) {
        out << r.cascade_id << ',' << r.window << ',' << r.phase << ',' << r.catalog_index
            << ',' << r.instances << ',' << r.covered_edges << ',' << r.total_edges << ','
            << format_double(r.nc) << ',' << r.iterations << ',' << r.restart_id << '\n';
    }
}

std::vector<CoverageRow> read_coverage_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<CoverageRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (first) {
            first = false;
            if (sv.substr(0, 10) == "cascade_id") continue;
        }
        auto f = split_csv(sv);
        if (f.size() != 10) throw DataError(path + ": bad coverage row '" + line + "'");
        CoverageRow r;
        r.cascade_id = std::string(trim(f[0]));
        const auto window = parse_int(trim(f[1]));
        const auto idx = parse_int(trim(f[3]));
        const auto inst = parse_int(trim(f[4]));
        const auto cov = parse_int(trim(f[5]));
        const auto tot = parse_int(trim(f[6]));
        const auto nc = parse_double(trim(f[7]));
        const auto iter = parse_int(trim(f[8]));
        const auto restart = parse_int(trim(f[9]));
        if (!window || !idx || !inst || !cov || !tot || !nc || !iter || !restart)
            throw DataError(path + ": bad coverage row '" + line + "'");
        r.window = static_cast<int>(*window);
        r.phase = std::string(trim(f[2]));
        r.catalog_index = static_cast<int>(*idx);
        r.instances = static_cast<std::uint64_t>(*inst);
        r.covered_edges = static_cast<std::uint64_t>(*cov);
        r.total_edges = static_cast<std::uint64_t>(*tot);
        r.nc = *nc;
        r.iterations = static_cast<int>(*iter);
        r.restart_id = static_cast<int>(*restart);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_tests_csv(const std::string& path, std::span<const TTestRow> rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << "catalog_index,n_steep,n_inhib,mean_steep,mean_inhib,t,dof,p,significant,"
           "p_bonferroni\n";
    for (const auto& r : rows) {
        out << r.pattern << ',' << r.n_steep << ',' << r.n_inhib << ','
            << format_double(r.mean_steep) << ',' << format_double(r.mean_inhib) << ',';
        if (r.skipped) {
            out << ",,,false,\n";  // skipped: no statistic
        } else {
            out << format_double(r.t) << ',' << format_double(r.dof) << ','
                << format_double(r.p) << ',' << (r.significant ? "true" : "false") << ','
                << format_double(r.p_bonferroni) << '\n';
        }
    }
}

void write_plot_csv(const std::string& path, std::span<const TTestRow> rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << "phase,catalog_index,mean_nc\n";
    for (const auto& r : rows)
        out << "steep," << r.pattern << ',' << format_double(r.mean_steep) << '\n';
    for (const auto& r : rows)
        out << "inhib," << r.pattern << ',' << format_double(r.mean_inhib) << '\n';
}

void write_phases_jsonl(const std::string& path, std::span<const PhaseRow> rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    for (const auto& r : rows) {
        json j;
        j["cascade_id"] = r.cascade_id;
        j["t_steep"] = r.detection.t_steep;
        j["t_inhib"] = r.detection.t_inhib;
        j["steep_window"] = r.detection.steep_window;
        j["inhib_window"] = r.detection.inhib_window;
        j["fallback"] = r.detection.fallback;
        out << j.dump() << '\n';
    }
}

void write_metadata_json(const std::string& path, const RunMetadata& meta) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    json j;
    j["config"] = meta.config;
    j["config_hash"] = meta.config_hash;
    j["counts"] = meta.counts;
    j["timings_ms"] = meta.timings_ms;
    out << j.dump(2) << '\n';
}

std::string catalog_to_json(const MotifCatalog& catalog) {
    json arr = json::array();
    for (const auto& p : catalog.patterns()) {
        json j;
        j["catalog_index"] = p.catalog_index;
        j["k"] = p.k;
        j["edge_count"] = p.edge_count;
        j["code"] = p.code;
        json edges = json::array();
        for (const auto& [a, b] : p.representative().edges()) edges.push_back({a, b});
        j["edge_list"] = edges;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace motifperc
