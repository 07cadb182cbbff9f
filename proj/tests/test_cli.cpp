#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hbnum/cli.hpp"
#include "hbnum/simulate.hpp"

using namespace hbnum;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int status = 0;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("hbnum_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Writes a SNARC trial file: 35 subjects with a negative slope in dRT.
fs::path snarc_trials(const fs::path& dir) {
    auto table = testing::snarc_fixture(3920, 259, 12, 3000.0);
    for (auto& r : table.rows) {
        if (r.rt_ms <= 3000.0 && r.hand == Hand::Right) r.rt_ms += 30.0 - 6.0 * r.number();
    }
    std::ostringstream text;
    text << "subject,stimulus,hand,rt_ms,error\n";
    for (const auto& r : table.rows) {
        text << r.subject << ',' << r.number() << ',' << (r.hand == Hand::Left ? 'L' : 'R') << ',' << r.rt_ms << ','
             << (r.is_error ? 1 : 0) << '\n';
    }
    const auto path = dir / "trials.csv";
    write_text(path, text.str());
    return path;
}

void check_manifest(const fs::path& dir, const std::string& summary_name) {
    const auto doc = json::parse(slurp(dir / summary_name));
    REQUIRE(doc.contains("outputs"));
    for (const auto& name : doc["outputs"]) {
        const auto p = dir / name.get<std::string>();
        CHECK(fs::exists(p));
        CHECK(fs::file_size(p) > 0);
    }
}

const std::vector<std::string> kQuick{"--chains", "3", "--iters", "2000", "--burnin", "500", "--thin", "5"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

TEST_CASE("fit on trials writes every declared output") {
    const auto dir = scratch("fit");
    const auto trials = snarc_trials(dir);
    const auto r = cli(with({"fit", "--model", "snarc", "--input", trials.string(), "--out", (dir / "res").string(),
                             "--seed", "42"},
                            kQuick));
    REQUIRE_MESSAGE(r.status == 0, r.err);
    for (const char* f : {"cells.csv", "samples.csv", "diagnostics.csv", "summary.json", "posterior_b.svg",
                          "posterior_b_curve.csv"}) {
        CHECK(fs::exists(dir / "res" / f));
    }
    check_manifest(dir / "res", "summary.json");
    const auto doc = json::parse(slurp(dir / "res" / "summary.json"));
    CHECK(doc["filter"]["retained"] == 3649);
    CHECK(doc["n_subjects"] == 35);
    CHECK(doc["n_cells"] == 140);
    CHECK(doc["sampler"]["retained_per_chain"] == 300);
    CHECK(doc["bayes_factor"]["method"] == "normal");
    CHECK(doc["parameters"].size() == 2 * 35 + 3);
    CHECK(slurp(dir / "res" / "posterior_b.svg").find("<svg xmlns") != std::string::npos);
}

TEST_CASE("identical runs produce byte-identical samples and summaries") {
    const auto dir = scratch("determinism");
    const auto trials = snarc_trials(dir);
    std::vector<std::string> base{"fit", "--input", trials.string(), "--seed", "9"};
    base.insert(base.end(), kQuick.begin(), kQuick.end());
    REQUIRE(cli(with(base, {"--out", (dir / "a").string(), "--threads", "1"})).status == 0);
    REQUIRE(cli(with(base, {"--out", (dir / "b").string(), "--threads", "3"})).status == 0);
    CHECK(slurp(dir / "a" / "samples.csv") == slurp(dir / "b" / "samples.csv"));
    auto sa = json::parse(slurp(dir / "a" / "summary.json"));
    auto sb = json::parse(slurp(dir / "b" / "summary.json"));
    CHECK(sa["parameters"] == sb["parameters"]);
    CHECK(sa["bayes_factor"] == sb["bayes_factor"]);
}

TEST_CASE("nde cells input skips aggregation") {
    const auto dir = scratch("nde");
    std::ostringstream text;
    text << "subject,x,y\n";
    for (int i = 0; i < 8; ++i) {
        for (int bin = 1; bin <= 4; ++bin) text << 'c' << i << ',' << bin << ',' << 900 + 10 * i - 60 * bin + (i * bin) % 7 << '\n';
    }
    write_text(dir / "cells.csv", text.str());
    const auto r = cli(with({"fit", "--model", "nde", "--input", (dir / "cells.csv").string(), "--input-kind", "cells",
                             "--out", (dir / "res").string()},
                            kQuick));
    REQUIRE_MESSAGE(r.status == 0, r.err);
    CHECK_FALSE(fs::exists(dir / "res" / "cells.csv"));
    const auto doc = json::parse(slurp(dir / "res" / "summary.json"));
    CHECK(doc["spec"]["intercept_bounds"][1] == 2000.0);
    CHECK_FALSE(doc.contains("filter"));
}

TEST_CASE("summarize reproduces the fit summary from samples.csv") {
    const auto dir = scratch("summarize");
    const auto trials = snarc_trials(dir);
    REQUIRE(cli(with({"fit", "--input", trials.string(), "--out", (dir / "fit").string()}, kQuick)).status == 0);
    const auto r = cli({"summarize", "--samples", (dir / "fit" / "samples.csv").string(), "--out", (dir / "sum").string()});
    REQUIRE_MESSAGE(r.status == 0, r.err);
    check_manifest(dir / "sum", "summary.json");
    const auto a = json::parse(slurp(dir / "fit" / "summary.json"));
    const auto b = json::parse(slurp(dir / "sum" / "summary.json"));
    CHECK(a["parameters"] == b["parameters"]);
    CHECK(slurp(dir / "fit" / "diagnostics.csv") == slurp(dir / "sum" / "diagnostics.csv"));
}

TEST_CASE("simulate writes the sweep table") {
    const auto dir = scratch("simulate");
    const auto r = cli(with({"simulate", "--subjects", "6", "--replications", "2", "--seed", "7", "--out", dir.string()},
                            kQuick));
    REQUIRE_MESSAGE(r.status == 0, r.err);
    const auto table = slurp(dir / "sweep.csv");
    CHECK(table.rfind("seed,hpdi_lo,hpdi_hi,ci_lo,ci_hi,t,p,bf10,covered_bayes,covered_classical\n7,", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 3);
    check_manifest(dir, "summary.json");
}

TEST_CASE("compare without input simulates one dataset") {
    const auto dir = scratch("compare");
    const auto r = cli(with({"compare", "--seed", "3", "--out", dir.string()}, kQuick));
    REQUIRE_MESSAGE(r.status == 0, r.err);
    check_manifest(dir, "comparison.json");
    const auto doc = json::parse(slurp(dir / "comparison.json"));
    CHECK(doc.contains("classical"));
    CHECK(doc.contains("bayesian"));
    CHECK(fs::exists(dir / "slopes.csv"));
}

TEST_CASE("config file supplies defaults that flags override") {
    const auto dir = scratch("config");
    const auto trials = snarc_trials(dir);
    write_text(dir / "run.cfg", "# quick run\nchains = 2\niters=1500\nburnin=500\nthin=5\nseed=11\n");
    const auto cfg = (dir / "run.cfg").string();
    REQUIRE(cli({"fit", "--input", trials.string(), "--config", cfg, "--out", (dir / "a").string()}).status == 0);
    auto doc = json::parse(slurp(dir / "a" / "summary.json"));
    CHECK(doc["sampler"]["chains"] == 2);
    CHECK(doc["sampler"]["seed"] == 11);
    CHECK(doc["sampler"]["retained_per_chain"] == 200);
    REQUIRE(cli({"fit", "--input", trials.string(), "--config", cfg, "--seed", "12", "--out", (dir / "b").string()})
                .status == 0);
    doc = json::parse(slurp(dir / "b" / "summary.json"));
    CHECK(doc["sampler"]["seed"] == 12);
    CHECK(doc["sampler"]["chains"] == 2);

    const auto parsed = parse_config_text("a = 1\n\n# c\nb=x y\n");
    CHECK(parsed.at("a") == "1");
    CHECK(parsed.at("b") == "x y");
    CHECK_THROWS_AS(parse_config_text("novalue\n"), ParseError);
}

TEST_CASE("errors give nonzero status and a message") {
    const auto dir = scratch("errors");
    auto r = cli({"fit", "--input", (dir / "missing.csv").string(), "--out", (dir / "o").string()});
    CHECK(r.status != 0);
    CHECK(r.err.find("missing.csv") != std::string::npos);
    CHECK(cli({"bogus"}).status != 0);
    CHECK(cli({"fit", "--input", "x", "--out", "y", "--no-such-flag"}).status != 0);
    CHECK(cli({"fit", "--input", "x", "--out", "y", "--model", "stroop"}).status != 0);
    CHECK(cli({}).status != 0);
    r = cli({"fit", "--input", "x", "--out", (dir / "o2").string(), "--iters", "10", "--burnin", "20"});
    CHECK(r.status != 0);
}

TEST_CASE("executable entry point") {
    const auto dir = scratch("exe");
    const std::string cmd = std::string("\"") + HBNUM_CLI_PATH + "\" fit --input \"" + (dir / "none.csv").string() +
                            "\" --out \"" + (dir / "o").string() + "\" > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) != 0);
    const std::string help = std::string("\"") + HBNUM_CLI_PATH + "\" --help > /dev/null 2>&1";
    CHECK(std::system(help.c_str()) == 0);
}
