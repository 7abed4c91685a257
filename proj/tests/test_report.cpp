#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "flowlab/emit.hpp"
#include "flowlab/report.hpp"

using namespace flowlab;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"(
# coboundary experiment
[alpha]
spec = 3,2,2,2,2,2,2,2,2,2
precision = 256
depth = 9

[beta]
spec = 1/2

[roof]
a = 3
b = 1

[tasks]
classify = true
rigidity_times = denominators:1..5
figures_powers = 1,3

[output]
dir = OUTDIR
report = report.json
exact = true
)";

std::string config_with_dir(const std::string& dir) {
    std::string s = kConfig;
    auto pos = s.find("OUTDIR");
    s.replace(pos, 6, dir);
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    auto cfg = ConfigFile::parse(config_with_dir("/tmp/x"));
    CHECK(cfg.require("alpha", "spec") == "3,2,2,2,2,2,2,2,2,2");
    CHECK(cfg.require("roof", "a") == "3");
    CHECK(!cfg.get("alpha", "missing"));
    // parse errors carry line information
    try {
        ConfigFile::parse("[alpha]\nker pow\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    auto ec = ExperimentConfig::from_file(cfg);
    CHECK(ec.depth == 9);
    CHECK(ec.task_classify);
    CHECK(ec.mainthm_roof());
    CHECK(ec.figure_powers == std::vector<long>{1, 3});
}

TEST_CASE("missing required keys are config errors") {
    CHECK_THROWS_AS(ExperimentConfig::from_file(ConfigFile::parse("[roof]\na = 3\n")),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_file(
                        ConfigFile::parse("[alpha]\nspec = golden\n[roof]\na = 0\nb = 1\n")),
                    ConfigError);
}

TEST_CASE("run_report is deterministic byte for byte") {
    std::string dir = "/tmp/flowlab_test_report";
    fs::remove_all(dir);
    auto ec = ExperimentConfig::from_file(ConfigFile::parse(config_with_dir(dir)));
    auto first = run_report(ec);
    write_report(first, ec);
    std::string bytes1 = slurp(dir + "/report.json");
    auto second = run_report(ec);
    write_report(second, ec);
    std::string bytes2 = slurp(dir + "/report.json");
    CHECK(bytes1 == bytes2);
    CHECK(first.exit_code == 0);
    // schema and verdict present
    auto j = Json::parse(bytes1);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["classify"]["verdict"] == "EvidenceNotCoboundary");
    CHECK(j["rigidity"]["entries"].size() == 5);
    fs::remove_all(dir);
}

TEST_CASE("inconclusive-only classification yields exit code 2") {
    // mixed parity, quotient sup 50 above every cutoff, beta dodging all
    // branches: the classifier must stay inconclusive and say why
    std::string text =
        "[alpha]\nspec = 1,50,1,50,1,50,1,50,1,50\nprecision = 256\ndepth = 9\n"
        "[beta]\nspec = 1/3\n[tasks]\nclassify = true\n";
    auto ec = ExperimentConfig::from_file(ConfigFile::parse(text));
    auto out = run_report(ec);
    CHECK(out.report["classify"]["verdict"] == "Inconclusive");
    CHECK(!out.report["classify"]["trail"].empty());
    CHECK(out.exit_code == 2);
}

TEST_CASE("breakpoint budget exhaustion yields exit code 3") {
    std::string text =
        "[alpha]\nspec = 3,2,2,2,2,2,2,2,2,2\nprecision = 256\ndepth = 9\n"
        "[beta]\nspec = 1/3\n[budgets]\nbreakpoints = 50\n"
        "[tasks]\nfigures_powers = 99\n[output]\ndir = /tmp/flowlab_budget_test\n";
    auto ec = ExperimentConfig::from_file(ConfigFile::parse(text));
    auto out = run_report(ec);
    CHECK(out.exit_code == 3);
    CHECK(out.report["figures"].contains("error"));
    fs::remove_all("/tmp/flowlab_budget_test");
}

TEST_CASE("empty task list produces a config echo only") {
    std::string text = "[alpha]\nspec = golden\nprecision = 128\ndepth = 8\n";
    auto ec = ExperimentConfig::from_file(ConfigFile::parse(text));
    auto out = run_report(ec);
    CHECK(out.exit_code == 0);
    CHECK(out.report.contains("config"));
    CHECK(!out.report.contains("classify"));
    CHECK(!out.report.contains("rigidity"));
}

TEST_CASE("figure emission: exact CSV re-parses bit for bit") {
    CFExpansion cf = CFExpansion::from_named("pi-3", 256, 5);
    Rat beta = named_constant("2-sqrt2", 256);
    ExperimentConfig config;
    config.exact_csv = true;
    std::string dir = "/tmp/flowlab_test_figs";
    fs::remove_all(dir);
    auto figs = figure_emit(config, cf, beta, {1, 7, 21}, dir);
    CHECK(figs.discontinuity_counts[0] == 4);
    CHECK(figs.discontinuity_counts[1] == 28);
    CHECK(figs.discontinuity_counts[2] <= 84);
    StepFunction phi7 = StepFunction::phi_beta(beta).ergodic_sum(cf.approximant(), 7);
    StepFunction parsed = parse_step_csv(slurp(dir + "/phi_7.csv"));
    CHECK(parsed == phi7);
    fs::remove_all(dir);
}

TEST_CASE("value spec parsing") {
    CHECK(std::holds_alternative<ValueSpec::Named>(ValueSpec::parse("pi-3").v));
    CHECK(std::holds_alternative<ValueSpec::Exact>(ValueSpec::parse("7/50").v));
    CHECK(std::holds_alternative<ValueSpec::Quotients>(ValueSpec::parse("3,2,2").v));
    CHECK(std::holds_alternative<ValueSpec::Quotients>(ValueSpec::parse("[7]").v));
    CHECK_THROWS(ValueSpec::parse("3,-2,2"));
}

TEST_CASE("times parsing") {
    CFExpansion cf = CFExpansion::from_named("golden", 128, 10);
    auto t = parse_times("denominators:2..5", cf);
    REQUIRE(t.size() == 4);
    CHECK(t[0] == cf.den(2));
    CHECK(t[3] == cf.den(5));
    auto lst = parse_times("7,21", cf);
    CHECK(lst[1] == 21);
    CHECK_THROWS_AS(parse_times("denominators:2..99", cf), ConfigError);
}

TEST_CASE("svg output is well formed") {
    StepFunction phi = StepFunction::phi_beta(Rat(2, 7));
    std::string svg = step_svg(phi, Int(7));
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("line") != std::string::npos);
}
