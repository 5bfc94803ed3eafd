#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "motifperc/errors.hpp"
#include "motifperc/io.hpp"
#include "motifperc/pipeline.hpp"
#include "motifperc/synthetic.hpp"

using namespace motifperc;
namespace fs = std::filesystem;

namespace {

struct PipelineFixture {
    fs::path dir;
    PipelineFixture() {
        dir = fs::temp_directory_path() / "motifperc_pipe_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    PipelineConfig small_config(const SyntheticConfig& syn, const std::string& tag) {
        const auto cpath = (dir / (tag + "_cascades.csv")).string();
        const auto spath = (dir / (tag + "_social.txt")).string();
        write_corpus(generate_synthetic(syn), cpath, spath);
        PipelineConfig cfg;
        cfg.window_size = syn.window_size;
        cfg.min_cascade = syn.window_size * 2;
        cfg.cascades_path = cpath;
        cfg.social_path = spath;
        cfg.threads = 2;
        return cfg;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("duplicated cascades give p = 1 everywhere") {
    PipelineFixture fx;
    SyntheticConfig syn;
    syn.n_cascades = 1;
    syn.nodes_per_cascade = 160;
    syn.window_size = 40;
    syn.window_rates = {1.0, 8.0, 1.0, 0.3};
    syn.seed = 3;
    auto corpus = generate_synthetic(syn);
    // duplicate the single cascade under a new id, events and edges included
    auto dup = corpus.cascades.front();
    dup.id = "c9999";
    for (auto& [src, dst, t] : dup.events) {
        src = "dup_" + src;
        dst = "dup_" + dst;
    }
    corpus.cascades.push_back(dup);
    const auto base = corpus.social_edges;
    for (const auto& [u, v] : base)
        corpus.social_edges.emplace_back("dup_" + u, "dup_" + v);

    const auto cpath = (fx.dir / "dup_cascades.csv").string();
    const auto spath = (fx.dir / "dup_social.txt").string();
    write_corpus(corpus, cpath, spath);

    PipelineConfig cfg;
    cfg.window_size = 40;
    cfg.min_cascade = 80;
    cfg.cascades_path = cpath;
    cfg.social_path = spath;
    // identical cascades make the steep and inhibition samples coincide
    // element by element once both phases read the same window
    cfg.steep_window_override = 1;
    cfg.inhib_window_override = 1;
    const auto report = run_pipeline(cfg);
    CHECK(report.phases.size() == 2);
    REQUIRE(!report.tests.empty());
    for (const auto& t : report.tests) {
        CHECK(t.p == 1.0);
        CHECK_FALSE(t.significant);
    }
}

TEST_CASE("zero retained cascades raise a data error") {
    PipelineFixture fx;
    SyntheticConfig syn;
    syn.n_cascades = 3;
    syn.nodes_per_cascade = 100;
    syn.window_size = 40;
    auto cfg = fx.small_config(syn, "tiny");
    cfg.min_cascade = 5000;
    CHECK_THROWS_AS(run_pipeline(cfg), DataError);
}

TEST_CASE("config invariants are validated") {
    PipelineConfig cfg;
    cfg.cascades_path = "x.csv";
    cfg.k = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.k = 5;
    cfg.window_size = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.window_size = 80;
    cfg.min_cascade = 50;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.min_cascade = 300;
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.alpha = 0.01;
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("phase overrides bypass detection") {
    PipelineFixture fx;
    SyntheticConfig syn;
    syn.n_cascades = 4;
    syn.nodes_per_cascade = 120;
    syn.window_size = 40;
    syn.seed = 11;
    auto cfg = fx.small_config(syn, "ovr");
    cfg.steep_window_override = 0;
    cfg.inhib_window_override = 2;
    const auto report = run_pipeline(cfg);
    for (const auto& row : report.phases) {
        CHECK(row.detection.steep_window == 0);
        CHECK(row.detection.inhib_window == 2);
        CHECK_FALSE(row.detection.fallback);
    }
    for (const auto& row : report.coverage)
        CHECK((row.window == 0 || row.window == 2));
}

TEST_CASE("report files are written, round-trip and rebuild the same tests") {
    PipelineFixture fx;
    SyntheticConfig syn;
    syn.n_cascades = 6;
    syn.nodes_per_cascade = 120;
    syn.window_size = 40;
    syn.window_rates = {1.0, 8.0, 0.3};
    syn.seed = 23;
    auto cfg = fx.small_config(syn, "rep");
    const auto report = run_pipeline(cfg);
    const auto out = (fx.dir / "out").string();
    emit_report(report, out);
    for (const char* name :
         {"phases.jsonl", "coverage.csv", "tests.csv", "plot_mean_nc.csv", "metadata.json"})
        CHECK(fs::exists(fs::path(out) / name));

    const auto rows = read_coverage_csv((fs::path(out) / "coverage.csv").string());
    REQUIRE(rows.size() == report.coverage.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].cascade_id == report.coverage[i].cascade_id);
        CHECK(rows[i].nc == report.coverage[i].nc);
    }
    const auto rebuilt = tests_from_coverage(rows, 0.01);
    REQUIRE(rebuilt.size() == report.tests.size());
    for (std::size_t i = 0; i < rebuilt.size(); ++i) {
        CHECK(rebuilt[i].pattern == report.tests[i].pattern);
        CHECK(rebuilt[i].p == report.tests[i].p);
        CHECK(rebuilt[i].mean_steep == report.tests[i].mean_steep);
        CHECK(rebuilt[i].mean_inhib == report.tests[i].mean_inhib);
    }
}

TEST_CASE("identical seeds give byte-identical reports at any thread count") {
    PipelineFixture fx;
    SyntheticConfig syn;
    syn.n_cascades = 8;
    syn.nodes_per_cascade = 120;
    syn.window_size = 40;
    syn.window_rates = {1.0, 8.0, 0.3};
    syn.seed = 29;
    auto cfg = fx.small_config(syn, "det");
    cfg.restarts = 3;

    cfg.threads = 1;
    const auto a = run_pipeline(cfg);
    emit_report(a, (fx.dir / "a").string());
    cfg.threads = 4;
    const auto b = run_pipeline(cfg);
    emit_report(b, (fx.dir / "b").string());

    for (const char* name : {"phases.jsonl", "coverage.csv", "tests.csv", "plot_mean_nc.csv"})
        CHECK(slurp(fx.dir / "a" / name) == slurp(fx.dir / "b" / name));
}
