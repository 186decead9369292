#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wanderer/error.hpp"
#include "wanderer/harness/config.hpp"
#include "wanderer/harness/experiments.hpp"
#include "wanderer/harness/parallel.hpp"
#include "wanderer/harness/report.hpp"

using namespace wanderer;
using namespace wanderer::harness;

namespace {

ErrorCode config_error(const json& j) {
    try {
        config_from_json(j);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "config accepted: " << j.dump();
    return ErrorCode::InvalidParams;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST(Config, Defaults) {
    const ExperimentConfig c = config_from_json(json::object());
    EXPECT_EQ(c.q, 0.5);
    EXPECT_EQ(c.replicates, 100u);
    EXPECT_EQ(c.seed, 1u);
    EXPECT_TRUE(c.params.empty());
}

TEST(Config, ParamsObjectOrArray) {
    const auto one = config_from_json(json::parse(R"({"params": {"a_plus": [1.0]}, "N": 200})"));
    ASSERT_EQ(one.params.size(), 1u);
    EXPECT_EQ(one.params[0].a_plus, std::vector<double>{1.0});
    EXPECT_EQ(one.N, std::vector<std::size_t>{200});

    const auto two = config_from_json(json::parse(R"({"params": [{"a_plus": [2, 1], "b_plus": [1]}, {}], "N": [1, 2]})"));
    ASSERT_EQ(two.params.size(), 2u);
    EXPECT_EQ(two.params[0].b_plus, std::vector<double>{1.0});
    EXPECT_TRUE(two.params[1].a_plus.empty());
    EXPECT_EQ(two.N.size(), 2u);
}

TEST(Config, Rejections) {
    EXPECT_EQ(config_error(json::parse(R"({"replicate": 3})")), ErrorCode::InvalidConfig);
    EXPECT_EQ(config_error(json::parse(R"({"params": {"a": [1]}})")), ErrorCode::InvalidConfig);
    EXPECT_EQ(config_error(json::parse(R"({"q": "half"})")), ErrorCode::InvalidConfig);
    EXPECT_EQ(config_error(json::parse(R"({"params": {"a_plus": [1, 2]}})")), ErrorCode::NonMonotone);
    EXPECT_THROW(load_config("/nonexistent/config.json"), Error);
}

TEST(Config, ValidateChecksPreconditions) {
    auto c = config_from_json(json::parse(R"({"params": {"a_plus": [1.0]}, "N": 100})"));
    EXPECT_NO_THROW(validate(c));
    c.q = 1.0;
    EXPECT_THROW(validate(c), Error);
}

TEST(Config, RoundTrip) {
    const auto c = config_from_json(json::parse(
        R"({"experiment": "x", "params": [{"a_plus": [1.5]}], "N": [10, 20], "seed": 42, "options": {"k": 1}})"));
    const auto d = config_from_json(to_json(c));
    EXPECT_EQ(to_json(c), to_json(d));
    EXPECT_EQ(d.option<int>("k", 0), 1);
    EXPECT_EQ(d.option<int>("missing", 7), 7);
}

TEST(Report, NumberFormat) {
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
}

TEST(Report, Csv) {
    CsvTable t({"a", "b"});
    t.add_row(std::vector<double>{1.0, 2.5});
    t.add_row(std::vector<std::string>{"x", "y"});
    EXPECT_EQ(t.str(), "a,b\n1,2.5\nx,y\n");
    EXPECT_THROW(t.add_row(std::vector<double>{1.0}), Error);
}

TEST(Report, Hashes) {
    EXPECT_EQ(sha1_hex(""), "da39a3ee5e6b4b0d3255bfef95601890afd80709");
    // `printf 'hello\n' | git hash-object --stdin`
    EXPECT_EQ(git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(Report, SvgHasSeries) {
    PlotSpec p{"t", "x", "y", {}, {{-2.0, "target"}}};
    p.series.push_back({"s", {0, 1, 2}, {1, 0, 1}, {0.5, -0.5, 0.5}, {1.5, 0.5, 1.5}});
    const std::string svg = svg_plot(p);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("polyline"), std::string::npos);
    EXPECT_NE(svg.find("target"), std::string::npos);
}

TEST(Report, EmbedsConfigAndHashes) {
    Report r("demo", json{{"seed", 3}});
    r.add_file("a.csv", "x\n1\n");
    r.results() = {{"ok", true}};
    const json j = r.to_json();
    EXPECT_EQ(j.at("experiment"), "demo");
    EXPECT_EQ(j.at("config").at("seed"), 3);
    EXPECT_EQ(j.at("outputs").at("a.csv"), git_blob_hash("x\n1\n"));
    EXPECT_EQ(j.at("config_hash"), git_blob_hash(json{{"seed", 3}}.dump()));

    const auto dir = std::filesystem::temp_directory_path() / "wanderer_report_test";
    std::filesystem::remove_all(dir);
    r.write(dir.string());
    EXPECT_EQ(slurp(dir / "a.csv"), "x\n1\n");
    EXPECT_EQ(json::parse(slurp(dir / "report.json")), j);
    std::filesystem::remove_all(dir);
}

TEST(Parallel, ResultsIndependentOfThreads) {
    auto f = [](std::size_t i) { return mix64(i) % 1000; };
    const auto a = parallel_map<std::uint64_t>(200, 1, f);
    const auto b = parallel_map<std::uint64_t>(200, 4, f);
    EXPECT_EQ(a, b);
    EXPECT_THROW(parallel_map<int>(10, 3, [](std::size_t i) -> int {
                     if (i == 7) throw Error(ErrorCode::InvalidParams, "boom");
                     return 0;
                 }),
                 Error);
}

TEST(Experiments, CouplingWorkedExample) {
    auto c = config_from_json(json::parse(
        R"({"params": [{"a_plus": [2.0, 1.0], "b_plus": [1.0]}, {"a_plus": [1.0]}], "N": 80, "replicates": 60, "curves": 2, "seed": 3})"));
    const CouplingResult r = run_coupling_experiment(c);
    ASSERT_EQ(r.rows.size(), 2u);
    for (const auto& row : r.rows) EXPECT_EQ(row.violations, 0u);
    EXPECT_TRUE(r.rows[0].swapped);
    EXPECT_FALSE(r.rows[1].swapped);
    EXPECT_GT(r.differing_replicates, 0u);
}

TEST(Experiments, CouplingHypothesisViolated) {
    auto c = config_from_json(json::parse(
        R"({"params": [{"a_plus": [2.0]}, {"b_plus": [2.0]}], "N": 80, "replicates": 2, "options": {"shifts": [[0, 0]]}})"));
    try {
        run_coupling_experiment(c);
        FAIL() << "expected HypothesisViolated";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
    }
}

TEST(Experiments, ByteIdenticalReruns) {
    auto c = config_from_json(json::parse(
        R"({"params": {"a_plus": [1.0]}, "N": [60], "replicates": 20, "curves": 2, "times": [0.5], "seed": 4, "threads": 2, "bootstrap": 50})"));
    const SlopeResult a = run_slope_experiment(c);
    c.threads = 1;
    const SlopeResult b = run_slope_experiment(c);
    ASSERT_EQ(a.report.files().size(), b.report.files().size());
    for (std::size_t i = 0; i < a.report.files().size(); ++i) EXPECT_EQ(a.report.files()[i], b.report.files()[i]);
    EXPECT_EQ(a.report.to_json().at("outputs"), b.report.to_json().at("outputs"));
}

TEST(Experiments, CrosscheckZeroParameters) {
    auto c = config_from_json(json::parse(
        R"({"params": {}, "N": [200], "replicates": 100, "curves": 3, "times": [2.0], "seed": 8, "options": {"alpha_hat": [-1.0]}})"));
    const CrosscheckResult r = run_crosscheck(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_LT(r.rows[0].quadrature, 0.01);
    EXPECT_LT(r.rows[0].mc_mean, 0.1);
}

TEST(Experiments, ContinuityConstantLadder) {
    auto c = config_from_json(json::parse(
        R"({"params": [{"a_plus": [1.0]}, {"a_plus": [1.0]}], "N": 100, "replicates": 200, "times": [0.5], "seed": 6})"));
    const ContinuityResult r = run_continuity_experiment(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].l1, 0.0);
    EXPECT_LT(r.rows[0].kernel_diff, 1e-12);
    EXPECT_GT(r.rows[0].ks_p, 0.001);
}
