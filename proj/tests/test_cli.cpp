// End-to-end runs of the installed CLI binary (path injected by CMake).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "akweak/io.hpp"
#include "akweak/state.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "akweak_cli_tests";

int run(const std::string& args) {
    const std::string cmd = std::string(AKW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string p(const std::string& name) { return (kDir / name).string(); }

struct DirSetup {
    DirSetup() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
};
const DirSetup setup;

}  // namespace

TEST_CASE("state subcommand writes data, sidecar, and provenance") {
    REQUIRE(run("state --kind coherent --a1 1 --a2 0 --out " + p("psi.csv")) == 0);
    CHECK(fs::exists(p("psi.csv")));
    CHECK(fs::exists(p("psi.json")));
    CHECK(fs::exists(p("psi.csv.prov.json")));

    const json prov = json::parse(slurp(p("psi.csv.prov.json")));
    CHECK(prov["tool"] == "akw");
    CHECK(prov["command"] == "state");
    CHECK(prov["config"]["a1"] == 1.0);

    const akweak::WaveFunction psi = akweak::load_state(p("psi.csv"));
    CHECK(akweak::norm(psi) == doctest::Approx(1.0).epsilon(1e-8));

    // invalid parameters are a validation error
    CHECK(run("state --kind gaussian --width -1 --out " + p("bad.csv")) == 1);
    CHECK(run("state --kind nonsense --out " + p("bad.csv")) == 1);
}

TEST_CASE("measure produces a post state and a record") {
    REQUIRE(run("state --kind two-peak --sep 4 --out " + p("cat.csv")) == 0);
    REQUIRE(run("measure --state " + p("cat.csv") + " --mode weak --xm 0.5 --pm -0.25 "
                "--lambda 1000 --out " + p("post.csv")) == 0);
    const json rec = json::parse(slurp(p("post.csv.record.json")));
    CHECK(rec["prob_density"].get<double>() > 0.0);
    // at lambda = 1e3 the weak post is essentially the projective one
    CHECK(rec["fidelity_vs_strong"].get<double>() >= 0.999);

    REQUIRE(run("measure --state " + p("cat.csv") + " --mode strong --xm 0.5 --pm -0.25 "
                "--out " + p("post_s.csv")) == 0);
    const akweak::WaveFunction post = akweak::load_state(p("post_s.csv"));
    const akweak::WaveFunction coh =
        akweak::coherent_state({0.5, -0.25}, post.grid);
    CHECK(akweak::fidelity(post, coh) >= 1.0 - 1e-10);

    CHECK(run("measure --state " + p("missing.csv") + " --mode strong --out " +
              p("x.csv")) == 1);
}

TEST_CASE("dist reports unit mass and sample runs are seed-deterministic") {
    REQUIRE(run("state --kind gaussian --center 0.3 --width 1.2 --units dimensioned --b 1 "
                "--grid-min -12 --grid-max 12 --grid-n 256 --out " + p("g.csv")) == 0);
    REQUIRE(run("dist --state " + p("g.csv") + " --mode strong --b 1 --out " + p("d.csv")) == 0);
    const json rec = json::parse(slurp(p("d.csv.record.json")));
    CHECK(std::abs(rec["total_mass"].get<double>() - 1.0) < 1e-3);
    CHECK(rec["moments"]["var_x"].get<double>() ==
          doctest::Approx(rec["expected_var_x"].get<double>()).epsilon(1e-3));

    // identical configuration reproduces the bytes exactly
    REQUIRE(run("dist --state " + p("g.csv") + " --mode strong --b 1 --out " + p("d2.csv")) == 0);
    CHECK(slurp(p("d.csv")) == slurp(p("d2.csv")));

    REQUIRE(run("sample --state " + p("g.csv") + " --mode strong --b 1 --count 400 --seed 7 "
                "--out " + p("s1.csv")) == 0);
    REQUIRE(run("sample --state " + p("g.csv") + " --mode strong --b 1 --count 400 --seed 7 "
                "--out " + p("s2.csv")) == 0);
    CHECK(slurp(p("s1.csv")) == slurp(p("s2.csv")));
    REQUIRE(run("sample --state " + p("g.csv") + " --mode strong --b 1 --count 400 --seed 8 "
                "--out " + p("s3.csv")) == 0);
    CHECK(slurp(p("s1.csv")) != slurp(p("s3.csv")));
}

TEST_CASE("ak subcommand writes the distribution and report, refusing huge runs") {
    REQUIRE(run("state --kind gaussian --center 0.2 --width 1 --units dimensioned --b 1 "
                "--grid-min -6 --grid-max 6 --grid-n 32 --out " + p("akin.csv")) == 0);
    REQUIRE(run("ak --state " + p("akin.csv") + " --tau 1 --b 1 --n1 32 --n2 32 "
                "--outcome --xm 0.4 --pm -0.3 --oracle-steps 16 --out " + p("run")) == 0);
    CHECK(fs::exists(p("run_dist.csv")));
    CHECK(fs::exists(p("run_post.csv")));
    const json rep = json::parse(slurp(p("run_report.json")));
    CHECK(std::abs(rep["total_mass"].get<double>() - 1.0) < 1e-2);
    CHECK(rep["closed_form_fidelity"].get<double>() >= 0.99);
    CHECK(rep["oracle_fidelity"].get<double>() >= 0.999);

    CHECK(run("ak --state " + p("akin.csv") + " --mem-budget-mb 0.01 --out " + p("big")) == 3);
}

TEST_CASE("gabor subcommands round-trip a state through files") {
    REQUIRE(run("state --kind gaussian --out " + p("psi_g.csv")) == 0);
    REQUIRE(run("gabor forward --state " + p("psi_g.csv") + " --out " + p("F.csv")) == 0);
    REQUIRE(run("gabor inverse --field " + p("F.csv") + " --grid-min -8 --grid-max 8 "
                "--grid-n 512 --out " + p("psi_back.csv")) == 0);
    const akweak::WaveFunction a = akweak::load_state(p("psi_g.csv"));
    const akweak::WaveFunction b = akweak::load_state(p("psi_back.csv"));
    CHECK(akweak::fidelity(a, b) >= 1.0 - 1e-8);

    REQUIRE(run("gabor project --field " + p("F.csv") + " --out " + p("PF.csv")) == 0);
    CHECK(fs::exists(p("PF.csv")));
    REQUIRE(run("gabor forward --state " + p("psi_g.csv") + " --density --out " +
                p("husimi.csv")) == 0);
    CHECK(slurp(p("husimi.csv")).rfind("a1,a2,density", 0) == 0);
}

TEST_CASE("verify subcommand: exit codes and the JSONL report") {
    CHECK(run("verify --suite nonsense") == 1);
    REQUIRE(run("verify --suite limits --out " + p("report.jsonl")) == 0);
    std::ifstream in(p("report.jsonl"));
    std::string line;
    int checks = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        CHECK(j.contains("check_name"));
        CHECK(j.contains("value"));
        CHECK(j.contains("tolerance"));
        CHECK(j["pass"].get<bool>());
        ++checks;
    }
    CHECK(checks == 2);
}

TEST_CASE("config files feed defaults and flags override them") {
    {
        std::ofstream cfg(p("cfg.json"));
        cfg << R"({"kind": "coherent", "a1": 1.5, "grid-n": 256, "out": ")" << p("cfg_out.csv")
            << R"("})";
    }
    REQUIRE(run("state --config " + p("cfg.json")) == 0);
    const akweak::WaveFunction psi = akweak::load_state(p("cfg_out.csv"));
    CHECK(psi.grid.n == 256);
    CHECK(akweak::moment(psi, akweak::Observable::X, 1) == doctest::Approx(1.5).epsilon(1e-8));

    // command line wins over the file
    REQUIRE(run("state --config " + p("cfg.json") + " --a1 0.5 --out " + p("cfg_out2.csv")) == 0);
    const akweak::WaveFunction psi2 = akweak::load_state(p("cfg_out2.csv"));
    CHECK(akweak::moment(psi2, akweak::Observable::X, 1) == doctest::Approx(0.5).epsilon(1e-8));
}
