// motifperc: cascade window construction, 5-node motif enumeration, motif
// percolation coverage and steep-vs-inhibition phase comparison.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "motifperc/errors.hpp"
#include "motifperc/io.hpp"
#include "motifperc/percolation.hpp"
#include "motifperc/pipeline.hpp"
#include "motifperc/synthetic.hpp"

namespace fs = std::filesystem;
using namespace motifperc;

namespace {

struct CliOptions {
    PipelineConfig pipeline;
    int steep_window = -1;  // -1 = detect
    int inhib_window = -1;
};

void add_pipeline_flags(CLI::App* cmd, CliOptions& opt, bool needs_inputs) {
    auto& cfg = opt.pipeline;
    cmd->add_option("--cascades", cfg.cascades_path, "cascade event file (CSV or JSONL)")
        ->required(needs_inputs);
    cmd->add_option("--social", cfg.social_path, "social edge list (`u v` per line)");
    cmd->add_option("--format", cfg.input_format, "cascade input format: auto|csv|jsonl")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
        ->capture_default_str();
    cmd->add_option("--window-size,-W", cfg.window_size, "nodes per window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--k", cfg.k, "motif order")->check(CLI::Range(3, 8))->capture_default_str();
    cmd->add_option("--min-cascade", cfg.min_cascade, "minimum activations per cascade")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.alpha, "significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--restarts,-R", cfg.restarts, "percolation restarts per pattern")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--theta-grid", cfg.theta_grid,
                    "bandwidth candidates (seconds)")
        ->delimiter(',');
    cmd->add_option("--quiescence", cfg.quiescence, "inhibition intensity fraction")
        ->capture_default_str();
    cmd->add_option("--smooth-width", cfg.smooth_width, "intensity smoothing width (odd)")
        ->capture_default_str();
    cmd->add_option("--grid-resolution", cfg.grid_resolution, "intensity grid points")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "master rng seed")->capture_default_str();
    cmd->add_flag("--strict-pseudocode", cfg.strict_pseudocode,
                  "literal percolation admission (no edge completion for fully "
                  "covered instances)");
    cmd->add_flag("--absent-as-zero,!--no-absent-as-zero", cfg.absent_as_zero,
                  "drop (cascade,phase) samples missing a pattern instead of NC=0");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--steep-window", opt.steep_window,
                    "bypass detection: fixed steep window index");
    cmd->add_option("--inhib-window", opt.inhib_window,
                    "bypass detection: fixed inhibition window index");
    cmd->set_config("--config", "", "key=value config file (flags override)");
}

PipelineConfig finalize(CliOptions& opt) {
    if (opt.steep_window >= 0) opt.pipeline.steep_window_override = opt.steep_window;
    if (opt.inhib_window >= 0) opt.pipeline.inhib_window_override = opt.inhib_window;
    return opt.pipeline;
}

CascadeCorpus load_corpus(const PipelineConfig& cfg, SocialNetwork* social) {
    CascadeCorpus corpus = read_cascades(cfg.cascades_path, cfg.input_format);
    if (!cfg.social_path.empty() && social) {
        std::uint64_t bad = 0, edges = 0;
        *social = read_social(cfg.social_path, corpus.users, &bad, &edges);
        corpus.counts.social_malformed_lines = bad;
        corpus.counts.social_edges = edges;
    }
    return corpus;
}

std::vector<Cascade> retained_cascades(CascadeCorpus& corpus, const PipelineConfig& cfg) {
    std::vector<Cascade> out;
    for (auto& c : corpus.cascades)
        if (c.activation_count() >= cfg.min_cascade) out.push_back(std::move(c));
    corpus.counts.cascades_retained = out.size();
    if (out.empty()) throw DataError("no cascades pass the size filter");
    return out;
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw DataError("cannot write " + path);
    return file;
}

int cmd_ingest(const PipelineConfig& cfg, const std::string& out_path) {
    SocialNetwork social;
    CascadeCorpus corpus = load_corpus(cfg, &social);
    std::uint64_t retained = 0, activations = 0;
    for (const auto& c : corpus.cascades) {
        if (c.activation_count() >= cfg.min_cascade) ++retained;
        activations += c.activation_count();
    }
    nlohmann::json j;
    j["cascades"] = corpus.cascades.size();
    j["cascades_retained"] = retained;
    j["events_kept"] = activations - corpus.cascades.size();
    j["events_read"] = corpus.counts.events_read;
    j["malformed_lines"] = corpus.counts.malformed_lines;
    j["dropped_self_loops"] = corpus.counts.dropped_self_loops;
    j["dropped_repeat_activations"] = corpus.counts.dropped_repeat_activations;
    j["social_edges"] = corpus.counts.social_edges;
    j["social_malformed_lines"] = corpus.counts.social_malformed_lines;
    j["users"] = corpus.users.size();
    std::ofstream file;
    open_or_stdout(file, out_path) << j.dump(2) << '\n';
    return 0;
}

int cmd_segment(const PipelineConfig& cfg, const std::string& out_path) {
    CascadeCorpus corpus = load_corpus(cfg, nullptr);
    auto cascades = retained_cascades(corpus, cfg);
    std::ofstream file;
    auto& out = open_or_stdout(file, out_path);
    out << "cascade_id,window,size,start_time,end_time\n";
    for (const auto& c : cascades) {
        for (const auto& w : segment(c, cfg.window_size))
            out << c.id << ',' << w.index << ',' << w.nodes.size() << ','
                << format_double(w.start_time) << ',' << format_double(w.end_time) << '\n';
    }
    return 0;
}

int cmd_detect(const PipelineConfig& cfg, const std::string& out_path) {
    CascadeCorpus corpus = load_corpus(cfg, nullptr);
    auto cascades = retained_cascades(corpus, cfg);
    const auto grid = cfg.theta_grid.empty() ? default_theta_grid() : cfg.theta_grid;
    std::vector<PhaseRow> rows;
    for (const auto& c : cascades) {
        const auto windows = segment(c, cfg.window_size);
        KernelParams params;
        params.bandwidth = fit_bandwidth(c, grid);
        params.grid_resolution = cfg.grid_resolution;
        params.smooth_width = cfg.smooth_width;
        PhaseRow row;
        row.cascade_id = c.id;
        row.n_windows = static_cast<int>(windows.size());
        row.theta = params.bandwidth;
        row.detection = detect_phases(c, windows, params, cfg.quiescence);
        rows.push_back(std::move(row));
    }
    if (out_path.empty() || out_path == "-") {
        for (const auto& r : rows) {
            nlohmann::json j;
            j["cascade_id"] = r.cascade_id;
            j["t_steep"] = r.detection.t_steep;
            j["t_inhib"] = r.detection.t_inhib;
            j["steep_window"] = r.detection.steep_window;
            j["inhib_window"] = r.detection.inhib_window;
            j["fallback"] = r.detection.fallback;
            std::cout << j.dump() << '\n';
        }
    } else {
        write_phases_jsonl(out_path, rows);
    }
    return 0;
}

int cmd_motifs(const PipelineConfig& cfg, const std::string& catalog_out,
               const std::string& counts_out) {
    const MotifCatalog catalog = build_catalog(cfg.k);
    if (!catalog_out.empty()) {
        std::ofstream file;
        open_or_stdout(file, catalog_out) << catalog_to_json(catalog) << '\n';
    }
    if (!cfg.cascades_path.empty()) {
        const PatternClassifier classifier(catalog);
        SocialNetwork social;
        CascadeCorpus corpus = load_corpus(cfg, &social);
        auto cascades = retained_cascades(corpus, cfg);
        std::ofstream file;
        auto& out = open_or_stdout(file, counts_out);
        out << "cascade_id,window,catalog_index,instances\n";
        for (const auto& c : cascades) {
            for (const auto& w : segment(c, cfg.window_size)) {
                const WindowGraph g = build_window_graph(c, w, social);
                for (const auto& [pattern, instances] :
                     instances_by_pattern(g, classifier, cfg.k))
                    out << c.id << ',' << w.index << ',' << pattern << ','
                        << instances.size() << '\n';
            }
        }
    } else if (catalog_out.empty()) {
        std::cout << catalog_to_json(catalog) << '\n';
    }
    return 0;
}

int cmd_percolate(const PipelineConfig& cfg, bool all_windows,
                  const std::string& out_path) {
    const MotifCatalog catalog = build_catalog(cfg.k);
    const PatternClassifier classifier(catalog);
    SocialNetwork social;
    CascadeCorpus corpus = load_corpus(cfg, &social);
    auto cascades = retained_cascades(corpus, cfg);
    const auto grid = cfg.theta_grid.empty() ? default_theta_grid() : cfg.theta_grid;
    PercolateOptions opts;
    opts.strict_pseudocode = cfg.strict_pseudocode;

    std::vector<CoverageRow> rows;
    for (const auto& c : cascades) {
        const auto windows = segment(c, cfg.window_size);
        const int last = static_cast<int>(windows.size()) - 1;
        PhaseDetection det;
        if (cfg.steep_window_override && cfg.inhib_window_override) {
            det.steep_window = std::clamp(*cfg.steep_window_override, 0, last);
            det.inhib_window = std::clamp(*cfg.inhib_window_override, 0, last);
        } else {
            KernelParams params;
            params.bandwidth = fit_bandwidth(c, grid);
            params.grid_resolution = cfg.grid_resolution;
            params.smooth_width = cfg.smooth_width;
            det = detect_phases(c, windows, params, cfg.quiescence);
            if (cfg.steep_window_override)
                det.steep_window = std::clamp(*cfg.steep_window_override, 0, last);
            if (cfg.inhib_window_override)
                det.inhib_window = std::clamp(*cfg.inhib_window_override, 0, last);
        }
        const std::uint64_t cascade_seed = cfg.seed ^ fnv1a64(c.id);
        const auto phase_of = [&](int widx) -> std::string {
            if (widx == det.steep_window) return "steep";
            if (widx == det.inhib_window) return "inhib";
            return "none";
        };
        for (const auto& w : windows) {
            const std::string phase = phase_of(w.index);
            if (!all_windows && phase == "none") continue;
            const WindowGraph g = build_window_graph(c, w, social);
            const std::uint64_t salt =
                phase == "steep" ? 0 : (phase == "inhib" ? 1 : 2 + w.index);
            const std::uint64_t table_seed = mix_seed(cascade_seed, salt);
            for (const auto& [pattern, instances] :
                 instances_by_pattern(g, classifier, cfg.k)) {
                const CoverageResult res =
                    coverage(g, pattern, instances, cfg.restarts,
                             mix_seed(table_seed, static_cast<std::uint64_t>(pattern)), opts);
                CoverageRow row;
                row.cascade_id = c.id;
                row.window = w.index;
                row.phase = phase;
                row.catalog_index = pattern;
                row.instances = instances.size();
                row.covered_edges = res.covered_edges.size();
                row.total_edges = g.edge_count();
                row.nc = res.nc;
                row.iterations = res.iterations;
                row.restart_id = res.restart_id;
                rows.push_back(std::move(row));
            }
        }
    }
    write_coverage_csv(out_path, rows);
    return 0;
}

int cmd_compare(const std::string& coverage_path, double alpha, bool absent_as_zero,
                const std::string& out_path) {
    const auto rows = read_coverage_csv(coverage_path);
    const auto tests = tests_from_coverage(rows, alpha, absent_as_zero);
    write_tests_csv(out_path, tests);
    return 0;
}

int cmd_report(const std::string& coverage_path, double alpha, bool absent_as_zero,
               const std::string& out_dir) {
    const auto rows = read_coverage_csv(coverage_path);
    const auto tests = tests_from_coverage(rows, alpha, absent_as_zero);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory " + out_dir);
    write_tests_csv((fs::path(out_dir) / "tests.csv").string(), tests);
    write_plot_csv((fs::path(out_dir) / "plot_mean_nc.csv").string(), tests);
    RunMetadata meta;
    meta.config["coverage"] = coverage_path;
    meta.config["alpha"] = format_double(alpha);
    meta.config["absent_as_zero"] = absent_as_zero ? "true" : "false";
    meta.counts["coverage_rows"] = rows.size();
    meta.counts["patterns_tested"] = tests.size();
    std::uint64_t sig = 0;
    for (const auto& t : tests)
        if (t.significant) ++sig;
    meta.counts["significant_patterns"] = sig;
    write_metadata_json((fs::path(out_dir) / "metadata.json").string(), meta);
    return 0;
}

int cmd_run(const PipelineConfig& cfg, const std::string& out_dir) {
    const CorpusReport report = run_pipeline(cfg);
    emit_report(report, out_dir);
    std::uint64_t sig = report.meta.counts.at("significant_patterns");
    std::cout << "cascades: " << report.meta.counts.at("cascades_retained")
              << "  patterns tested: " << report.meta.counts.at("patterns_tested")
              << "  significant: " << sig << "\nreport written to " << out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"motif percolation analysis of information cascades"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* ingest = app.add_subcommand("ingest", "parse inputs and print a summary");
    std::string ingest_out;
    add_pipeline_flags(ingest, opt, true);
    ingest->add_option("--out", ingest_out, "summary JSON path (default stdout)");

    auto* seg = app.add_subcommand("segment", "emit fixed-node-count windows");
    std::string segment_out;
    add_pipeline_flags(seg, opt, true);
    seg->add_option("--out", segment_out, "window CSV path (default stdout)");

    auto* detect = app.add_subcommand("detect-phases", "steep/inhibition detection");
    std::string detect_out;
    add_pipeline_flags(detect, opt, true);
    detect->add_option("--out", detect_out, "phase JSONL path (default stdout)");

    auto* motifs = app.add_subcommand("motifs", "pattern catalog and instance counts");
    std::string catalog_out, counts_out;
    add_pipeline_flags(motifs, opt, false);
    motifs->add_option("--catalog-out", catalog_out, "catalog JSON path");
    motifs->add_option("--out", counts_out, "instance-count CSV path (default stdout)");

    auto* perc = app.add_subcommand("percolate", "motif coverage per window");
    std::string perc_out = "coverage.csv";
    bool all_windows = false;
    add_pipeline_flags(perc, opt, true);
    perc->add_option("--out", perc_out, "coverage CSV path")->capture_default_str();
    perc->add_flag("--all-windows", all_windows,
                   "cover every window, not just the steep/inhibition ones");

    auto* compare = app.add_subcommand("compare", "Welch tests from a coverage CSV");
    std::string compare_in, compare_out = "tests.csv";
    double compare_alpha = 0.01;
    bool compare_zero = true;
    compare->add_option("--coverage", compare_in, "coverage CSV path")->required();
    compare->add_option("--alpha", compare_alpha, "significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    compare->add_flag("--absent-as-zero,!--no-absent-as-zero", compare_zero,
                      "drop samples missing a pattern instead of NC=0");
    compare->add_option("--out", compare_out, "test CSV path")->capture_default_str();

    auto* report = app.add_subcommand("report", "tests + plot data from a coverage CSV");
    std::string report_in, report_dir = "report";
    double report_alpha = 0.01;
    bool report_zero = true;
    report->add_option("--coverage", report_in, "coverage CSV path")->required();
    report->add_option("--alpha", report_alpha, "significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    report->add_flag("--absent-as-zero,!--no-absent-as-zero", report_zero,
                     "drop samples missing a pattern instead of NC=0");
    report->add_option("--out-dir", report_dir, "output directory")->capture_default_str();

    auto* sim = app.add_subcommand("simulate", "generate a synthetic corpus");
    SyntheticConfig syn;
    std::string sim_dir = "synthetic";
    sim->add_option("--n-cascades", syn.n_cascades, "cascades to generate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--nodes", syn.nodes_per_cascade, "activations per cascade")
        ->capture_default_str();
    sim->add_option("--window-size,-W", syn.window_size, "window size")
        ->capture_default_str();
    sim->add_option("--burst-window", syn.burst_window, "index of the burst window")
        ->capture_default_str();
    sim->add_option("--rates", syn.window_rates, "events/sec per window (last repeats)")
        ->delimiter(',');
    sim->add_option("--densities", syn.window_density,
                    "planted edge density per window (last repeats)")
        ->delimiter(',');
    sim->add_option("--triad-fraction", syn.triad_fraction,
                    "fraction of planted edges closing triangles")
        ->capture_default_str();
    sim->add_option("--parent-locality", syn.within_window_parent_prob,
                    "probability a reshare parent is in the same window")
        ->capture_default_str();
    sim->add_option("--density-jitter", syn.density_jitter,
                    "per-cascade density multiplier spread")
        ->capture_default_str();
    sim->add_option("--seed", syn.seed, "generator seed")->capture_default_str();
    sim->add_option("--out-dir", sim_dir, "output directory")->capture_default_str();

    auto* run = app.add_subcommand("run", "full pipeline: ingest through tests");
    std::string run_dir = "report";
    add_pipeline_flags(run, opt, true);
    run->add_option("--out-dir", run_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (*ingest) return cmd_ingest(finalize(opt), ingest_out);
        if (*seg) return cmd_segment(finalize(opt), segment_out);
        if (*detect) return cmd_detect(finalize(opt), detect_out);
        if (*motifs) return cmd_motifs(finalize(opt), catalog_out, counts_out);
        if (*perc) return cmd_percolate(finalize(opt), all_windows, perc_out);
        if (*compare) return cmd_compare(compare_in, compare_alpha, compare_zero, compare_out);
        if (*report) return cmd_report(report_in, report_alpha, report_zero, report_dir);
        if (*sim) {
            std::error_code ec;
            fs::create_directories(sim_dir, ec);
            if (ec) throw DataError("cannot create output directory " + sim_dir);
            const auto corpus = generate_synthetic(syn);
            write_corpus(corpus, (fs::path(sim_dir) / "cascades.csv").string(),
                         (fs::path(sim_dir) / "social.txt").string());
            std::uint64_t events = 0;
            for (const auto& c : corpus.cascades) events += c.events.size();
            std::cout << "wrote " << corpus.cascades.size() << " cascades (" << events
                      << " events), " << corpus.social_edges.size()
                      << " social edges to " << sim_dir << '\n';
            return 0;
        }
        if (*run) {
            PipelineConfig cfg = finalize(opt);
            return cmd_run(cfg, run_dir);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
