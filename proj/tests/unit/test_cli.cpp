#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "lnl/cli.hpp"
#include "lnl/config.hpp"
#include "lnl/io.hpp"

using namespace lnl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        root_ = fs::temp_directory_path() / "lnl_cli_tests" / info->name();
        fs::remove_all(root_);
        fs::create_directories(root_);
        unsetenv("LNL_THREADS");
    }

    static json coupled(int n = 32)
    {
        return json::parse(R"({
          "grid": {"dimension": 1, "box": {"lo": [-0.5], "hi": [1.5]}, "h": 0.03125},
          "regions": {"local": [{"lo": [0.0], "hi": [0.5]}], "nonlocal": [{"lo": [0.5], "hi": [1.0]}]},
          "delta": 0.1,
          "kernel": {"shape": "indicator", "amplitude": 1.0, "radius": 0.2},
          "p": 2.0,
          "source": {"form": "affine", "g": 1.0}
        })")
            .patch(json::array({{{"op", "replace"}, {"path", "/grid/h"}, {"value", 1.0 / n}}}));
    }

    fs::path write(const json& j, const std::string& name = "config.json")
    {
        const fs::path p = root_ / name;
        std::ofstream(p) << j.dump(2);
        return p;
    }

    int run(const std::string& cmd, const fs::path& config, std::vector<std::string> extra = {})
    {
        std::vector<std::string> args{cmd, "--config", config.string(), "--out", out().string()};
        args.insert(args.end(), extra.begin(), extra.end());
        return cli::run(args);
    }

    fs::path out() const { return root_ / "out"; }
    json report() const { return json::parse(std::ifstream(out() / "report.json")); }

    fs::path root_;
};

}  // namespace

TEST_F(CliTest, CheckPassesOnValidConfig)
{
    EXPECT_EQ(run("check", write(coupled())), cli::kExitOk);
    const json r = report();
    EXPECT_TRUE(r["checks"]["passed"].get<bool>());
    EXPECT_EQ(r["command"], "check");
}

TEST_F(CliTest, CheckFlagsInterfaceGap)
{
    json c = coupled();
    c["grid"]["box"]["hi"] = {2.5};
    c["regions"]["nonlocal"][0] = {{"lo", {1.0}}, {"hi", {1.5}}};
    c["delta"] = 0.2;
    c["kernel"]["radius"] = 0.4;
    EXPECT_EQ(run("check", write(c)), cli::kExitFailure);
    const json r = report();
    bool found = false;
    for (const auto& v : r["checks"]["assumptions"]["violations"]) found = found || v["assumption"] == 3;
    EXPECT_TRUE(found);
}

TEST_F(CliTest, MalformedConfigIsUsageError)
{
    const fs::path p = root_ / "bad.json";
    std::ofstream(p) << "{ not json";
    EXPECT_EQ(run("check", p), cli::kExitUsage);
    EXPECT_EQ(run("check", root_ / "missing.json"), cli::kExitUsage);
    json c = coupled();
    c["kernal"] = 1;
    EXPECT_EQ(run("check", write(c)), cli::kExitUsage);
    c = coupled();
    c["p"] = 1.05;
    EXPECT_EQ(run("solve", write(c)), cli::kExitUsage);
    c = coupled();
    c["regions"]["local"][0]["hi"] = {0.7};
    EXPECT_EQ(run("check", write(c)), cli::kExitUsage);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(cli::run({}), cli::kExitUsage);
    EXPECT_EQ(cli::run({"solve"}), cli::kExitUsage);
    EXPECT_EQ(cli::run({"frobnicate", "--config", "x"}), cli::kExitUsage);
    EXPECT_EQ(run("check", write(coupled()), {"--threads", "0"}), cli::kExitUsage);
}

TEST_F(CliTest, SolveWritesArtifacts)
{
    json c = coupled();
    c["output"] = {{"psi", true}};
    EXPECT_EQ(run("solve", write(c)), cli::kExitOk);
    for (const char* f : {"solution.csv", "report.json", "residual.csv", "history.csv", "psi.csv"}) {
        EXPECT_TRUE(fs::exists(out() / f)) << f;
    }
    const json r = report();
    EXPECT_EQ(r["status"], "converged");
    EXPECT_TRUE(r["energy"].contains("total"));

    std::ifstream sol(out() / "solution.csv");
    std::string header;
    std::getline(sol, header);
    EXPECT_EQ(header, "cell_index,x,value");
    std::ifstream hist(out() / "history.csv");
    std::getline(hist, header);
    EXPECT_EQ(header, "iter,energy,grad_norm");

    const ModelConfig model = build_model(parse_config(r["config"]).problem);
    const Field u = read_field_csv(out() / "solution.csv", *model.partition);
    EXPECT_EQ(u.size(), model.dofs());
    const SolveResult again = minimize(model, SolveOptions{}, Field(model.dofs()));
    EXPECT_TRUE(u == again.solution);
}

TEST_F(CliTest, SolveReportsIterationCap)
{
    json c = coupled();
    c["solve"] = {{"max_iters", 1}};
    EXPECT_EQ(run("solve", write(c)), cli::kExitFailure);
    EXPECT_EQ(report()["status"], "max_iters");
}

TEST_F(CliTest, SolveRefusesInvalidProblem)
{
    json c = coupled();
    c["kernel"]["radius"] = 0.15;  // below 2 delta
    EXPECT_EQ(run("solve", write(c)), cli::kExitFailure);
    EXPECT_EQ(report()["status"], "validation_failed");
    EXPECT_FALSE(fs::exists(out() / "solution.csv"));
}

TEST_F(CliTest, UnwritableOutputIsUsageError)
{
    const fs::path blocker = root_ / "file";
    std::ofstream(blocker) << "x";
    EXPECT_EQ(cli::run({"solve", "--config", write(coupled()).string(), "--out", (blocker / "sub").string()}),
              cli::kExitUsage);
}

TEST_F(CliTest, ReportEmbedsResolvedConfig)
{
    EXPECT_EQ(run("check", write(coupled()), {"--seed", "42"}), cli::kExitOk);
    const json cfg = report()["config"];
    EXPECT_EQ(cfg["solve"]["seed"], 42);
    EXPECT_EQ(cfg["solve"]["max_iters"], 200000);
    EXPECT_EQ(cfg["solve"]["step_rule"], "barzilai_borwein_safeguarded");
    EXPECT_EQ(cfg["output"]["dir"], out().string());
    EXPECT_EQ(to_json(parse_config(cfg)), cfg);
}

TEST_F(CliTest, ThreadFlagOverridesEnvironment)
{
    setenv("LNL_THREADS", "3", 1);
    EXPECT_EQ(run("check", write(coupled())), cli::kExitOk);
    EXPECT_EQ(report()["threads"], 3);
    EXPECT_EQ(run("check", write(coupled()), {"--threads", "2"}), cli::kExitOk);
    EXPECT_EQ(report()["threads"], 2);
    setenv("LNL_THREADS", "zero", 1);
    EXPECT_EQ(run("check", write(coupled())), cli::kExitUsage);
    unsetenv("LNL_THREADS");
    EXPECT_EQ(run("check", write(coupled()), {"--threads", "1"}), cli::kExitOk);
}

TEST_F(CliTest, CoercivityPassesOnConnectedConfig)
{
    json c = coupled();
    c["coercivity"] = {{"n_random", 2}};
    EXPECT_EQ(run("coercivity", write(c)), cli::kExitOk);
    const json r = report();
    EXPECT_GT(r["coercivity"]["c_est"].get<double>(), 0.0);
    EXPECT_NEAR(r["coercivity"]["c_est"].get<double>(), r["eigen_estimate"].get<double>(), 1e-6);
    EXPECT_TRUE(fs::exists(out() / "minimizer.csv"));
}

TEST_F(CliTest, CoercivityFailsOnDetachedConfig)
{
    json c = coupled();
    c["kernel"]["radius"] = 1.0 / 64;
    c["delta"] = 1.0 / 128;
    c["source"]["g"] = 0.0;
    c["coercivity"] = {{"n_random", 2}};
    EXPECT_EQ(run("coercivity", write(c)), cli::kExitFailure);
    EXPECT_LE(report()["coercivity"]["c_est"].get<double>(), 1e-8);
}

TEST_F(CliTest, NulltestPasses)
{
    EXPECT_EQ(run("nulltest", write(coupled())), cli::kExitOk);
    EXPECT_EQ(report()["nullspace"]["component_count"], 1);
}

TEST_F(CliTest, GradcheckDefaultSuite)
{
    json c = coupled();
    c["gradcheck"] = {{"n_fields", 5}};
    EXPECT_EQ(run("gradcheck", write(c)), cli::kExitOk);
    const json r = report();
    EXPECT_LE(r["gradcheck"]["max_relative_error"].get<double>(), 1e-6);
    EXPECT_EQ(r["gradcheck"]["rows"].size(), 4u);
}

TEST_F(CliTest, ConvergenceWritesRates)
{
    json c = coupled();
    c["convergence"] = {{"case", "local_sine"}, {"grids", {16, 32, 64}}};
    EXPECT_EQ(run("convergence", write(c)), cli::kExitOk);
    std::ifstream rates(out() / "rates.csv");
    std::string header;
    std::getline(rates, header);
    EXPECT_EQ(header, "n,h,error,tolerance,order,status");
    EXPECT_TRUE(report()["convergence"]["passed"].get<bool>());
}

TEST_F(CliTest, TwoDimensionalFieldCsvHasBothCoordinates)
{
    const ModelConfig m = build_model(presets::coupled_2d(8, 2.0));
    const Field u = random_field(m.dofs(), 1);
    write_field_csv(root_ / "f.csv", *m.partition, u);
    std::ifstream in(root_ / "f.csv");
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "cell_index,x,y,value");
    EXPECT_TRUE(read_field_csv(root_ / "f.csv", *m.partition) == u);
}

TEST(Config, SineProfileAndMonotoneSourceRoundTrip)
{
    json j = json::parse(R"({
      "grid": {"dimension": 2, "box": {"lo": [0, 0], "hi": [1, 1]}, "h": 0.125},
      "regions": {"local": [{"lo": [0, 0], "hi": [1, 1]}]},
      "delta": 0.05,
      "kernel": {"shape": "polynomial_bump", "radius": 0.2, "exponent": 3},
      "p": 3,
      "source": {"form": "monotone_power", "a": {"kind": "sine_product", "amplitude": 2}, "b": 1, "q": 0.5, "s": 4}
    })");
    const RunConfig c = parse_config(j);
    EXPECT_EQ(c.problem.kernel.shape, KernelShape::PolynomialBump);
    EXPECT_EQ(c.problem.kernel.bump_exponent, 3);
    EXPECT_EQ(c.problem.source.a.kind, ScalarProfile::Kind::SineProduct);
    EXPECT_EQ(c.problem.source.s, 4.0);
    EXPECT_EQ(to_json(parse_config(to_json(c))), to_json(c));
    j["source"]["s"] = nullptr;
    EXPECT_TRUE(std::isinf(parse_config(j).problem.source.s));
    j["grid"]["dimension"] = 3;
    EXPECT_THROW(parse_config(j), ConfigError);
}
