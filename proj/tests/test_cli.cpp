#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qhkit/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = qhkit::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

/// Value following a padded key in the text report.
double value_of(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + " ", 0) == 0) return std::stod(line.substr(16));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

/// Runs each test in a scratch directory with QH_SEED cleared.
class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        ::unsetenv("QH_SEED");
        old_ = fs::current_path();
        dir_ = fs::temp_directory_path() / ("qhkit_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
        fs::current_path(dir_);
    }
    void TearDown() override {
        fs::current_path(old_);
        fs::remove_all(dir_);
        ::unsetenv("QH_SEED");
    }
    fs::path old_, dir_;
};

const fs::path kScenarios = fs::path(QHKIT_SOURCE_DIR) / "scenarios";

}  // namespace

TEST_F(Cli, HelpAndParseErrors) {
    EXPECT_EQ(cli({"--help"}).code, 0);
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"qh", "--domain", "halfplane", "--from", "0,1"}).code, 1);
    EXPECT_EQ(cli({"constants", "--bogus", "1"}).code, 1);
    EXPECT_EQ(cli({"repro", "no-such-suite"}).code, 1);
}

TEST_F(Cli, ConfigurationErrorsExitOne) {
    const auto r = cli({"qh", "--domain", "halfplane", "--from", "0,-1", "--to", "0,2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
    EXPECT_EQ(cli({"qh", "--domain", "moebius", "--from", "0,1", "--to", "0,2"}).code, 1);
    EXPECT_EQ(cli({"qh", "--domain", "halfplane", "--grading", "0.9", "--from", "0,1", "--to", "0,2"}).code, 1);
    EXPECT_EQ(cli({"constants", "--H", "0.5"}).code, 1);
    EXPECT_EQ(cli({"check-wqs", "--map", "inversion", "--config", "missing.json", "--seed", "1"}).code, 1);
    std::ofstream("bad.json") << R"({"seed": 1, "colour": "blue"})";
    EXPECT_EQ(cli({"check-wqs", "--map", "inversion", "--config", "bad.json"}).code, 1);
}

TEST_F(Cli, QhHalfPlaneExample) {
    const auto r = cli({"qh", "--domain", "halfplane", "--from", "0,1", "--to", "0,2", "--grading", "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "k"), std::log(2.0), 0.02 * std::log(2.0));
    EXPECT_LE(value_of(r.out, "relative error"), 0.02);
    const auto tight = cli({"qh", "--domain", "halfplane", "--from", "0,1", "--to", "0,2", "--tol", "1e-6"});
    EXPECT_EQ(tight.code, 2);
    EXPECT_NE(tight.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ConstantsExample) {
    const auto r = cli({"constants", "--H", "1", "--q", "0.5", "--c", "1", "--cprime", "1", "--json", "c.json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(value_of(r.out, "M"), 4.0);
    EXPECT_EQ(value_of(r.out, "alpha"), 3.0);
    EXPECT_EQ(value_of(r.out, "beta"), 12.0);
    EXPECT_NE(r.out.find("(1/5184)"), std::string::npos);
    const auto j = qhkit::Json::parse(slurp("c.json"));
    EXPECT_EQ(j["command"], "constants");
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST_F(Cli, ReproWitnessExample) {
    const auto ok = cli({"repro", "example-1-8", "--n", "10", "--h", "5"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
    // The ratio 9.84 cannot exceed H = 100.
    const auto bad = cli({"repro", "example-1-8", "--n", "10", "--h", "100"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, SeedResolution) {
    const std::vector<std::string> base{"check-wqs", "--map", "inversion", "--count", "20"};
    EXPECT_EQ(cli(base).code, 1);

    ::setenv("QH_SEED", "7", 1);
    const auto env = cli(base);
    ASSERT_EQ(env.code, 0) << env.err;
    EXPECT_EQ(value_of(env.out, "seed"), 7.0);

    auto flag_args = base;
    flag_args.insert(flag_args.end(), {"--seed", "9"});
    EXPECT_EQ(value_of(cli(flag_args).out, "seed"), 9.0);

    ::setenv("QH_SEED", "seven", 1);
    EXPECT_EQ(cli(base).code, 1);
}

TEST_F(Cli, BoundViolationExitsTwo) {
    const auto r = cli({"check-wqs", "--map", "inversion", "--seed", "3", "--count", "20", "--witness", "2,10,100",
                        "--bound", "50"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
    EXPECT_EQ(cli({"check-wqs", "--map", "inversion", "--seed", "3", "--count", "20", "--witness", "2,10",
                   "--bound", "50"})
                  .code,
              0);
}

TEST_F(Cli, ScenarioFilesRun) {
    ASSERT_TRUE(fs::exists(kScenarios));
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
        {"halfplane_qh.json", {"qh", "--from", "0,1", "--to", "0,2"}},
        {"inversion_wqs.json", {"check-wqs"}},
        {"shear_semisolid.json", {"check-semisolid"}},
        {"affine_qc.json", {"check-qc"}},
        {"disk_ring.json", {"check-ring"}},
    };
    for (auto [file, args] : runs) {
        args.insert(args.end(), {"--config", (kScenarios / file).string()});
        const auto r = cli(args);
        EXPECT_EQ(r.code, 0) << file << "\n" << r.out << r.err;
    }
    EXPECT_TRUE(fs::exists("inversion_wqs.csv"));
    EXPECT_TRUE(fs::exists("inversion_wqs.json"));
    EXPECT_TRUE(fs::exists("shear_semisolid.svg"));
    EXPECT_EQ(slurp("inversion_wqs.csv").substr(0, 58),
              "id,x_re,x_im,y_re,y_im,value,oracle,bound_lo,bound_hi,pass");
}

TEST_F(Cli, ReportsAreByteIdentical) {
    auto once = [&](const std::string& tag) {
        const auto r = cli({"check-semisolid", "--map", "shear", "--seed", "5", "--count", "30", "--window",
                            "-2,0.25,2,2.5", "--csv", tag + ".csv", "--json", tag + ".json", "--svg", tag + ".svg"});
        EXPECT_EQ(r.code, 0) << r.err;
        return r.out;
    };
    EXPECT_EQ(once("a"), once("b"));
    for (const char* ext : {".csv", ".json", ".svg"}) {
        EXPECT_FALSE(slurp(std::string("a") + ext).empty());
        EXPECT_EQ(slurp(std::string("a") + ext), slurp(std::string("b") + ext)) << ext;
    }
}

TEST_F(Cli, BinaryExitCodes) {
    const std::string bin = QHKIT_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("constants"), 0);
    EXPECT_EQ(status("constants --nope"), 1);
    EXPECT_EQ(status("check-wqs --map inversion --seed 1 --count 5 --witness 100 --bound 2"), 2);
}
