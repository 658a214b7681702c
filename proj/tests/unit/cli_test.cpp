#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sys/wait.h>

#include <framekit/cli.hpp>

using namespace framekit;
namespace fc = framekit::cli;
namespace fs = std::filesystem;

namespace {

fc::Source demo(const char* name, int ell = 2) { return {std::nullopt, std::string(name), ell}; }
fc::Source file(const std::string& name) { return {std::string(FRAMEKIT_SAMPLES_DIR) + "/" + name, std::nullopt, 2}; }

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("framekit_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST(CmdCheck, DemoPasses) {
    const auto r = fc::cmd_check(demo("b2-single-pair"));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.outcome.at("all_pass").get<bool>());
}

TEST(CmdCheck, CondBFailure) {
    const auto r = fc::cmd_check(file("cond-b-fails.json"));
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_FALSE(r.outcome.at("cond_b").at("pass").get<bool>());
}

TEST(CmdCheck, DecimalCoefficientsAccepted) {
    const auto r = fc::cmd_check(file("decimal-coeffs.json"));
    EXPECT_NE(r.exit_code, fc::exit_parse);
    EXPECT_EQ(r.outcome.at("m0_at_0"), "1");
}

TEST(CmdCheck, ParseAndIoErrors) {
    const auto path = scratch("bad.json");
    {
        std::ofstream os(path);
        os << R"({"m0": {"0": "1/3.0"}, "mt0": {}, "gens": [{}], "tgens": [{}]})";
    }
    EXPECT_EQ(fc::cmd_check({path.string(), std::nullopt, 2}).exit_code, fc::exit_parse);
    fs::remove(path);
    EXPECT_EQ(fc::cmd_check({path.string(), std::nullopt, 2}).exit_code, fc::exit_io);
    EXPECT_EQ(fc::cmd_check({}).exit_code, fc::exit_usage);
}

TEST(CmdExtend, ModesAndExitCodes) {
    EXPECT_EQ(fc::cmd_extend(demo("b2-no-single-pair"), fc::ExtendMode::one).exit_code, fc::exit_condition_ii);
    EXPECT_EQ(fc::cmd_extend(demo("b2-no-single-pair"), fc::ExtendMode::two).exit_code, 0);
    const auto r = fc::cmd_extend(demo("b1-b3-mep"), fc::ExtendMode::one);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.outcome.at("m2").at("poly"), (json{{"0", "1/2"}, {"1", "-1/2"}}));
    EXPECT_EQ(fc::cmd_extend(file("cond-b-fails.json"), fc::ExtendMode::one).exit_code, fc::exit_necessary);
    EXPECT_EQ(fc::cmd_extend(file("b2-single-pair-extended.json"), fc::ExtendMode::one).exit_code, fc::exit_usage);
}

TEST(CmdVerify, Verdicts) {
    const auto nb = fc::cmd_verify(demo("b2-nonbessel"));
    EXPECT_EQ(nb.exit_code, 1);
    EXPECT_EQ(nb.outcome.at("verdict"), "BesselFails");
    EXPECT_EQ(fc::cmd_verify(file("b2-single-pair-extended.json")).exit_code, 0);
    EXPECT_EQ(fc::cmd_verify(file("b1-b3-mep-extended.json")).exit_code, 0);
    EXPECT_EQ(fc::cmd_verify(file("haar.json")).exit_code, 0);

    const auto path = scratch("empty.json");
    {
        std::ofstream os(path);
        os << R"({"m0": {"0": "1"}, "mt0": {"0": "1"}, "gens": [], "tgens": []})";
    }
    EXPECT_EQ(fc::cmd_verify({path.string(), std::nullopt, 2}).exit_code, fc::exit_parse);
    fs::remove(path);
}

TEST(CmdRender, WritesArtifacts) {
    const auto dir = scratch("render");
    fc::RenderOptions opt;
    opt.level = 6;
    opt.j_max = 6;
    opt.out_dir = dir.string();
    const auto r = fc::cmd_render(file("b2-single-pair-extended.json"), opt);
    ASSERT_EQ(r.exit_code, 0) << r.to_json().dump(2);
    for (const char* f : {"phi.csv", "phit.csv", "psi1.csv", "psit1.csv", "psi2.csv", "psit2.csv", "reconstruction.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    std::ifstream in(dir / "reconstruction.json");
    const json rec = json::parse(in);
    EXPECT_EQ(rec.at("level"), 6);
    EXPECT_EQ(rec.at("j_min"), -6);
    EXPECT_EQ(rec.at("j_max"), 6);
    EXPECT_LE(rec.at("l2_rel_error").get<double>(), 5e-2);
    fs::remove_all(dir);
}

TEST(CmdRender, UsageAndNonConvergence) {
    fc::RenderOptions opt;
    opt.j_min = 3;
    opt.j_max = 1;
    EXPECT_EQ(fc::cmd_render(file("b2-single-pair-extended.json"), opt).exit_code, fc::exit_usage);
    fc::RenderOptions small;
    small.level = 5;
    const auto r = fc::cmd_render(file("oscillatory.json"), small);
    EXPECT_EQ(r.exit_code, fc::exit_nonconvergence);
    EXPECT_EQ(r.outcome.at("note"), "NonConvergence");
}

TEST(CmdDemo, AllListAndUnknown) {
    const auto all = fc::cmd_demo("all");
    EXPECT_EQ(all.exit_code, 0) << all.to_json().dump(2);
    EXPECT_EQ(all.outcome.at("demos").size(), demo_names.size());
    EXPECT_EQ(fc::cmd_demo("list").exit_code, 0);
    EXPECT_EQ(fc::cmd_demo("nosuch").exit_code, fc::exit_usage);
    for (int l : {2, 3})
        EXPECT_EQ(fc::cmd_demo("b2l-two-pairs", l).exit_code, 0) << l;
}

TEST(CmdProperty, AgreesOnRandomCases) {
    const auto r = fc::cmd_property(60);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.outcome.at("agree"), 60);
    EXPECT_GT(r.outcome.at("criterion_true").get<int>(), 0);
}

TEST(Determinism, ByteIdenticalReports) {
    EXPECT_EQ(fc::cmd_extend(demo("b2-single-pair"), fc::ExtendMode::one).to_json().dump(),
              fc::cmd_extend(demo("b2-single-pair"), fc::ExtendMode::one).to_json().dump());
    EXPECT_EQ(fc::cmd_demo("all").to_json().dump(), fc::cmd_demo("all").to_json().dump());
}

#ifdef FRAMEKIT_CLI_PATH
namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(FRAMEKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
        out.append(buf.data(), n);
    const int status = pclose(pipe.release());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST(Binary, ExitCodeContract) {
    EXPECT_EQ(run("demo all").code, 0);
    EXPECT_EQ(run("demo nosuch").code, 64);
    EXPECT_EQ(run("demo b2l-two-pairs --l 2").code, 0);
    EXPECT_EQ(run("extend --demo b2-no-single-pair --mode one").code, 3);
    EXPECT_EQ(run("extend --demo b2-no-single-pair --mode two").code, 0);
    EXPECT_EQ(run("verify --demo b2-nonbessel").code, 1);
    EXPECT_EQ(run("render --demo b2-single-pair --jmin 2 --jmax 1").code, 64);
    EXPECT_EQ(run("check --input /nonexistent/system.json").code, 66);
    EXPECT_EQ(run("frobnicate").code, 64);
    EXPECT_EQ(run("extend --demo b2-single-pair --mode three").code, 64);
}

TEST(Binary, PrintsJsonReport) {
    const auto r = run("extend --demo b1-b3-mep");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("command"), "extend");
    EXPECT_EQ(j.at("exit_code"), 0);
    EXPECT_EQ(j.at("outcome").at("report").at("verdict"), "DualFrames");
}
#endif
