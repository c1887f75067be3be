#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace fs = std::filesystem;
using namespace fracbeam::cli;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fracbeam_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd =
        std::string(FRACBEAM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Presets, PublishedDefaults) {
    const auto fs_ = preset(Experiment::ForcedSweep);
    EXPECT_EQ(fs_.beam_case, BeamCase::TipMass);
    EXPECT_EQ(fs_.a_b, 0.01);
    EXPECT_EQ(fs_.dt, 1e-3);
    EXPECT_EQ(fs_.t_end, 100.0);
    EXPECT_EQ(fs_.omega_b.lo, 0.5);
    EXPECT_EQ(fs_.omega_b.hi, 3.5);
    const auto fv = preset(Experiment::FreeVib);
    EXPECT_EQ(fv.q0, 0.01);
    EXPECT_EQ(fv.qdot0, 0.0);
    const auto bif = preset(Experiment::Bifurcation);
    EXPECT_EQ(bif.E_r, std::vector<double>{0.3});
    EXPECT_EQ(bif.f, 1.0);
    const auto res = preset(Experiment::Resonance);
    EXPECT_EQ(res.f, 0.5);
    const auto st = preset(Experiment::Stress);
    EXPECT_DOUBLE_EQ(st.strain_rate, 1.0 / 24.0);
    EXPECT_EQ(st.t_switch, 2.5);
    EXPECT_EQ(st.t_end, 6.0);
    for (auto e : {Experiment::Eig, Experiment::ForcedSweep, Experiment::FreeVib,
                   Experiment::MmsFree, Experiment::Resonance, Experiment::Bifurcation,
                   Experiment::Moduli, Experiment::Stress}) {
        EXPECT_NO_THROW(validate(preset(e))) << to_string(e);
        EXPECT_EQ(parse_experiment(to_string(e)), e);
        EXPECT_FALSE(preset_info(e).description.empty());
    }
}

TEST(Config, JsonOverridesPreset) {
    auto c = preset(Experiment::FreeVib);
    apply_json(c, nlohmann::json::parse(R"({"alpha": [0.25], "q0": 0.02, "case": "no-tip-mass",
                                             "variant": "caputo"})"));
    EXPECT_EQ(c.alpha, std::vector<double>{0.25});
    EXPECT_EQ(c.q0, 0.02);
    EXPECT_EQ(c.beam_case, BeamCase::NoTipMass);
    EXPECT_EQ(c.variant, VariantName::Caputo);
    EXPECT_EQ(c.t_end, preset(Experiment::FreeVib).t_end);
}

TEST(Config, RangesAcceptArrayOrObject) {
    auto c = preset(Experiment::Resonance);
    apply_json(c, nlohmann::json::parse(R"({"Delta": [-2, 2, 41]})"));
    EXPECT_EQ(c.delta.lo, -2.0);
    EXPECT_EQ(c.delta.count, 41u);
    apply_json(c, nlohmann::json::parse(R"({"Delta": {"lo": -1, "hi": 3, "count": 5}})"));
    EXPECT_EQ(c.delta.hi, 3.0);
    EXPECT_EQ(c.delta.count, 5u);
}

TEST(Config, UnknownKeyRejected) {
    auto c = preset(Experiment::Eig);
    try {
        apply_json(c, nlohmann::json::parse(R"({"alhpa": [0.5]})"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "alhpa");
    }
}

TEST(Config, ValidationNamesField) {
    auto c = preset(Experiment::FreeVib);
    c.alpha = {1.5};
    try {
        validate(c);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "alpha");
    }
    c = preset(Experiment::ForcedSweep);
    c.dt = -1.0;
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, LoadsTomlAndJson) {
    const auto dir = scratch("load");
    write(dir / "c.toml", "alpha = [0.2, 0.4]\ndt = 0.005\ncase = \"tip-mass\"\n");
    write(dir / "c.json", R"({"alpha": [0.2, 0.4], "dt": 0.005, "case": "tip-mass"})");
    const auto t = load_config_file(dir / "c.toml");
    const auto j = load_config_file(dir / "c.json");
    auto a = preset(Experiment::FreeVib), b = preset(Experiment::FreeVib);
    apply_json(a, t);
    apply_json(b, j);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.dt, 0.005);
    EXPECT_EQ(b.dt, 0.005);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    write(dir / "bad.toml", "alpha = [0.2\n");
    EXPECT_ANY_THROW((void)load_config_file(dir / "bad.toml"));
}

TEST(Cli, EigReportsFirstEigenvalue) {
    const auto dir = scratch("eig");
    ASSERT_EQ(run_cli("eig --case no-tip-mass -o " + dir.string(), dir / "log"), 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "eig.json"));
    EXPECT_NEAR(doc["beta_sq"].get<double>(), 3.51602, 1e-4);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest["preset"]["name"], preset_info(Experiment::Eig).name);
    EXPECT_TRUE(manifest.contains("wall_time_s"));
    EXPECT_TRUE(manifest.contains("version"));
}

TEST(Cli, FlagsOverrideConfigFile) {
    const auto dir = scratch("precedence");
    write(dir / "c.json", R"({"alpha": [0.3], "t_end": 0.5, "q0": 0.02})");
    ASSERT_EQ(run_cli("free-vib --config " + (dir / "c.json").string() + " --q0 0.03 -o " +
                          (dir / "out").string(),
                      dir / "log"),
              0);
    const auto m = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
    EXPECT_EQ(m["config"]["q0"].get<double>(), 0.03);
    EXPECT_EQ(m["config"]["t_end"].get<double>(), 0.5);
    EXPECT_EQ(m["config"]["alpha"], nlohmann::json::array({0.3}));
    EXPECT_EQ(m["config"]["dt"].get<double>(), preset(Experiment::FreeVib).dt);
}

TEST(Cli, ZeroInitialDisplacementGivesZeroTrajectory) {
    const auto dir = scratch("zero");
    ASSERT_EQ(run_cli("free-vib --alpha 0.5 --q0 0 --t-end 2 -o " + dir.string(), dir / "log"), 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".csv") continue;
        ++files;
        std::istringstream in(slurp(e.path()));
        std::string line;
        std::getline(in, line);
        EXPECT_EQ(line, "t,q,qdot,qddot");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            EXPECT_EQ(line.substr(line.find(',')), ",0,0,0") << line;
        }
        EXPECT_GT(rows, 100);
    }
    EXPECT_EQ(files, 1);
}

TEST(Cli, BifurcationWidthsShrink) {
    const auto dir = scratch("bif");
    ASSERT_EQ(run_cli("bifurcation --case no-tip-mass --er 0.3 --f 1 --alpha 0.1,0.2,0.3 -o " +
                          dir.string(),
                      dir / "log"),
              0);
    const auto s = nlohmann::json::parse(slurp(dir / "bifurcation_summary.json"));
    ASSERT_EQ(s.size(), 3u);
    double prev = INFINITY;
    for (const auto& row : s) {
        ASSERT_FALSE(row["width"].is_null());
        const double w = row["width"].get<double>();
        EXPECT_GT(w, 0.0);
        EXPECT_LT(w, prev);
        prev = w;
    }
}

TEST(Cli, RerunsAreByteIdentical) {
    const auto a = scratch("rerun_a"), b = scratch("rerun_b");
    const std::string args = "stress --alpha 0.3,0.7 --t-end 2 --t-switch 1 -o ";
    ASSERT_EQ(run_cli(args + (a / "out").string(), a / "log"), 0);
    ASSERT_EQ(run_cli(args + (b / "out").string(), b / "log"), 0);
    int compared = 0;
    for (const auto& e : fs::directory_iterator(a / "out")) {
        if (e.path().filename() == "manifest.json") continue;
        const auto other = b / "out" / e.path().filename();
        ASSERT_TRUE(fs::exists(other)) << other;
        EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
        ++compared;
    }
    EXPECT_GE(compared, 2);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("exit");
    EXPECT_EQ(run_cli("free-vib --alpha 1.5 -o " + dir.string(), dir / "log"), 2);
    EXPECT_NE(slurp(dir / "log").find("alpha"), std::string::npos);
    EXPECT_EQ(run_cli("free-vib --no-such-flag", dir / "log"), 2);
    write(dir / "bad.json", R"({"alhpa": 1})");
    EXPECT_EQ(run_cli("eig --config " + (dir / "bad.json").string(), dir / "log"), 2);
    EXPECT_EQ(run_cli("free-vib --alpha 0.5 --q0 1e308 --t-end 1 -o " + dir.string(), dir / "log"),
              3);
    EXPECT_NE(slurp(dir / "log").find("step"), std::string::npos);
}
