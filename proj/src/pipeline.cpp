#include "motifperc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "motifperc/errors.hpp"
#include "motifperc/io.hpp"
#include "motifperc/percolation.hpp"
#include "motifperc/rng.hpp"

namespace motifperc {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

struct CascadeOutput {
    PhaseRow phase;
    std::vector<CoverageRow> rows;
    CascadePhaseCoverage nc;
};

CoverageRow make_row(const std::string& cascade_id, int window, const std::string& phase,
                     const WindowGraph& graph, int pattern, std::uint64_t instance_count,
                     const CoverageResult& res) {
    CoverageRow row;
    row.cascade_id = cascade_id;
    row.window = window;
    row.phase = phase;
    row.catalog_index = pattern;
    row.instances = instance_count;
    row.covered_edges = res.covered_edges.size();
    row.total_edges = graph.edge_count();
    row.nc = res.nc;
    row.iterations = res.iterations;
    row.restart_id = res.restart_id;
    return row;
}

CascadeOutput process_cascade(const Cascade& cascade, const SocialNetwork& social,
                              const PipelineConfig& cfg, const PatternClassifier& classifier,
                              const std::vector<double>& theta_grid) {
    const auto windows = segment(cascade, cfg.window_size);
    const std::uint64_t cascade_seed = cfg.seed ^ fnv1a64(cascade.id);

    PhaseRow phase_row;
    phase_row.cascade_id = cascade.id;
    phase_row.n_windows = static_cast<int>(windows.size());

    const int last = static_cast<int>(windows.size()) - 1;
    if (cfg.steep_window_override && cfg.inhib_window_override) {
        PhaseDetection det;
        det.steep_window = std::clamp(*cfg.steep_window_override, 0, last);
        det.inhib_window = std::clamp(*cfg.inhib_window_override, 0, last);
        det.t_steep = 0.5 * (windows[det.steep_window].start_time +
                             windows[det.steep_window].end_time);
        det.t_inhib = 0.5 * (windows[det.inhib_window].start_time +
                             windows[det.inhib_window].end_time);
        phase_row.detection = det;
    } else {
        KernelParams params;
        params.bandwidth = fit_bandwidth(cascade, theta_grid);
        params.grid_resolution = cfg.grid_resolution;
        params.smooth_width = cfg.smooth_width;
        phase_row.theta = params.bandwidth;
        phase_row.detection = detect_phases(cascade, windows, params, cfg.quiescence);
        if (cfg.steep_window_override)
            phase_row.detection.steep_window = std::clamp(*cfg.steep_window_override, 0, last);
        if (cfg.inhib_window_override)
            phase_row.detection.inhib_window = std::clamp(*cfg.inhib_window_override, 0, last);
    }

    PercolateOptions opts;
    opts.strict_pseudocode = cfg.strict_pseudocode;

    CascadeOutput out;
    out.phase = phase_row;
    out.nc.cascade_id = cascade.id;

    const std::pair<std::string, int> jobs[2] = {
        {"steep", phase_row.detection.steep_window},
        {"inhib", phase_row.detection.inhib_window},
    };
    for (int j = 0; j < 2; ++j) {
        const auto& [phase_name, widx] = jobs[j];
        const WindowGraph graph = build_window_graph(cascade, windows[widx], social);
        auto grouped = instances_by_pattern(graph, classifier, cfg.k);
        const std::uint64_t table_seed = mix_seed(cascade_seed, static_cast<std::uint64_t>(j));
        for (const auto& [pattern, instances] : grouped) {
            const CoverageResult res =
                coverage(graph, pattern, instances, cfg.restarts,
                         mix_seed(table_seed, static_cast<std::uint64_t>(pattern)), opts);
            out.rows.push_back(make_row(cascade.id, widx, phase_name, graph, pattern,
                                        instances.size(), res));
            auto& nc_map = j == 0 ? out.nc.steep_nc : out.nc.inhib_nc;
            nc_map[pattern] = res.nc;
        }
    }
    return out;
}

std::map<std::string, std::string> config_echo(const PipelineConfig& c,
                                               const std::vector<double>& theta_grid) {
    std::map<std::string, std::string> m;
    m["window_size"] = std::to_string(c.window_size);
    m["k"] = std::to_string(c.k);
    m["min_cascade"] = std::to_string(c.min_cascade);
    m["alpha"] = format_double(c.alpha);
    m["restarts"] = std::to_string(c.restarts);
    {
        std::ostringstream ss;
        for (std::size_t i = 0; i < theta_grid.size(); ++i)
            ss << (i ? "," : "") << format_double(theta_grid[i]);
        m["theta_grid"] = ss.str();
    }
    m["quiescence"] = format_double(c.quiescence);
    m["smooth_width"] = std::to_string(c.smooth_width);
    m["grid_resolution"] = std::to_string(c.grid_resolution);
    m["seed"] = std::to_string(c.seed);
    m["strict_pseudocode"] = c.strict_pseudocode ? "true" : "false";
    m["absent_as_zero"] = c.absent_as_zero ? "true" : "false";
    m["steep_window"] =
        c.steep_window_override ? std::to_string(*c.steep_window_override) : "";
    m["inhib_window"] =
        c.inhib_window_override ? std::to_string(*c.inhib_window_override) : "";
    m["cascades"] = c.cascades_path;
    m["social"] = c.social_path;
    m["input_format"] = c.input_format;
    return m;
}

std::string hash_config(const std::map<std::string, std::string>& m) {
    std::string flat;
    for (const auto& [k, v] : m) {
        flat += k;
        flat += '=';
        flat += v;
        flat += '\n';
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(flat)));
    return buf;
}

}  // namespace

std::vector<double> default_theta_grid() {
    // powers of four, sub-second to multi-hour
    std::vector<double> grid;
    for (double t = 0.015625; t <= 16384.0; t *= 4.0) grid.push_back(t);
    return grid;
}

void PipelineConfig::validate() const {
    if (k < 3) throw std::invalid_argument("k must be >= 3");
    if (k > 8) throw std::invalid_argument("k must be <= 8");
    if (window_size < k) throw std::invalid_argument("window size must be >= k");
    if (min_cascade < static_cast<std::uint64_t>(window_size))
        throw std::invalid_argument("min cascade size must be >= window size");
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (quiescence <= 0.0 || quiescence >= 1.0)
        throw std::invalid_argument("quiescence fraction must be in (0,1)");
    if (smooth_width < 1 || smooth_width % 2 == 0)
        throw std::invalid_argument("smooth width must be odd and >= 1");
    if (grid_resolution < 16) throw std::invalid_argument("grid resolution must be >= 16");
    for (double t : theta_grid)
        if (t <= 0.0) throw std::invalid_argument("theta grid values must be positive");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (cascades_path.empty()) throw std::invalid_argument("cascades path required");
}

CorpusReport run_pipeline(const PipelineConfig& config) {
    config.validate();
    const auto t_start = clock_type::now();
    const std::vector<double> theta_grid =
        config.theta_grid.empty() ? default_theta_grid() : config.theta_grid;

    CorpusReport report;
    report.meta.config = config_echo(config, theta_grid);
    report.meta.config_hash = hash_config(report.meta.config);

    // Ingest.
    auto t_stage = clock_type::now();
    CascadeCorpus corpus = read_cascades(config.cascades_path, config.input_format);
    SocialNetwork social;
    if (!config.social_path.empty()) {
        std::uint64_t bad = 0, edges = 0;
        social = read_social(config.social_path, corpus.users, &bad, &edges);
        corpus.counts.social_malformed_lines = bad;
        corpus.counts.social_edges = edges;
    }
    report.meta.timings_ms["ingest"] = ms_since(t_stage);

    // Size filter; cascades are already in id order (map-backed reader).
    std::vector<Cascade> retained;
    for (auto& c : corpus.cascades)
        if (c.activation_count() >= config.min_cascade) retained.push_back(std::move(c));
    corpus.counts.cascades_retained = retained.size();
    if (retained.size() < 2)
        throw DataError("only " + std::to_string(retained.size()) +
                        " cascades pass the size filter; need at least 2");

    const MotifCatalog catalog = build_catalog(config.k);
    const PatternClassifier classifier(catalog);

    // Per-cascade work in parallel; outputs land in id-indexed slots so the
    // fold below is deterministic regardless of scheduling.
    t_stage = clock_type::now();
    std::vector<CascadeOutput> outputs(retained.size());
    std::vector<std::string> failures(retained.size());
    {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        const unsigned n_threads = std::min<std::size_t>(
            config.threads > 0 ? static_cast<unsigned>(config.threads) : hw,
            retained.size());
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= retained.size()) break;
                try {
                    outputs[i] = process_cascade(retained[i], social, config, classifier,
                                                 theta_grid);
                } catch (const std::exception& e) {
                    failures[i] = e.what();
                }
            }
        };
        if (n_threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }
    for (std::size_t i = 0; i < retained.size(); ++i)
        if (!failures[i].empty())
            throw DataError("cascade '" + retained[i].id + "': " + failures[i]);
    report.meta.timings_ms["analysis"] = ms_since(t_stage);

    std::vector<CascadePhaseCoverage> nc_tables;
    nc_tables.reserve(outputs.size());
    for (auto& out : outputs) {
        report.phases.push_back(std::move(out.phase));
        for (auto& row : out.rows) report.coverage.push_back(std::move(row));
        nc_tables.push_back(std::move(out.nc));
    }

    t_stage = clock_type::now();
    report.tests = compare_phases(nc_tables, config.alpha, config.absent_as_zero);
    report.meta.timings_ms["stats"] = ms_since(t_stage);

    report.meta.counts["cascades_read"] = corpus.counts.cascades_read;
    report.meta.counts["cascades_retained"] = corpus.counts.cascades_retained;
    report.meta.counts["events_read"] = corpus.counts.events_read;
    report.meta.counts["malformed_lines"] = corpus.counts.malformed_lines;
    report.meta.counts["dropped_self_loops"] = corpus.counts.dropped_self_loops;
    report.meta.counts["dropped_repeat_activations"] =
        corpus.counts.dropped_repeat_activations;
    report.meta.counts["social_edges"] = corpus.counts.social_edges;
    report.meta.counts["social_malformed_lines"] = corpus.counts.social_malformed_lines;
    report.meta.counts["patterns_tested"] =
        static_cast<std::uint64_t>(report.tests.size());
    std::uint64_t sig = 0;
    for (const auto& t : report.tests)
        if (t.significant) ++sig;
    report.meta.counts["significant_patterns"] = sig;
    report.meta.timings_ms["total"] = ms_since(t_start);
    return report;
}

std::vector<TTestRow> tests_from_coverage(std::span<const CoverageRow> rows, double alpha,
                                          bool absent_as_zero) {
    std::map<std::string, CascadePhaseCoverage> by_cascade;
    for (const auto& r : rows) {
        if (r.phase != "steep" && r.phase != "inhib") continue;
        auto& entry = by_cascade[r.cascade_id];
        entry.cascade_id = r.cascade_id;
        auto& nc_map = r.phase == "steep" ? entry.steep_nc : entry.inhib_nc;
        nc_map[r.catalog_index] = r.nc;
    }
    std::vector<CascadePhaseCoverage> corpus;
    corpus.reserve(by_cascade.size());
    for (auto& [_, v] : by_cascade) corpus.push_back(std::move(v));
    return compare_phases(corpus, alpha, absent_as_zero);
}

void emit_report(const CorpusReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory " + out_dir);
    const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
    write_phases_jsonl(path("phases.jsonl"), report.phases);
    write_coverage_csv(path("coverage.csv"), report.coverage);
    write_tests_csv(path("tests.csv"), report.tests);
    write_plot_csv(path("plot_mean_nc.csv"), report.tests);
    write_metadata_json(path("metadata.json"), report.meta);
}

}  // namespace motifperc
