#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "tplab/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tplab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Result run(const std::string& args, const std::string& env = "") {
        const auto o = dir_ / "stdout.txt", e = dir_ / "stderr.txt";
        const std::string cmd = env + " " + TPLAB_CLI_PATH + " " + args + " >" + o.string() + " 2>" + e.string();
        int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(o), slurp(e)};
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, CovWritesCsv) {
    auto r = run("cov --process fou --alpha 0.75 --lambda 1 --t0 0.3 --dt 0.1 --n 2");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 9), "t,value\r\n");
    EXPECT_NE(r.out.find("0.3,0.41490190675709"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("cov --process fbm").code, 2);
    EXPECT_EQ(run("cov --alpha notanumber").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("validate --suite nope").code, 2);
    EXPECT_EQ(run("sample --process fou --method spectral").code, 2);
    EXPECT_EQ(run("cov --process tfgn --alpha 0.9 --n 2").code, 2);
    std::ofstream(dir_ / "bad.cfg") << "colour=blue\n";
    EXPECT_EQ(run("cov --config " + (dir_ / "bad.cfg").string()).code, 2);
}

TEST_F(Cli, ValidationOutcomeSetsExitCode) {
    auto ok = run("validate --suite specfun --out " + dir_.string());
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_TRUE(fs::exists(dir_ / "report_specfun.json"));
    EXPECT_TRUE(fs::exists(dir_ / "report_specfun.timing.json"));
    auto failing = run("validate --suite specfun --tol bessel=1e-300 --out " + dir_.string());
    EXPECT_EQ(failing.code, 1);
    EXPECT_NE(failing.err.find("failed"), std::string::npos);
}

TEST_F(Cli, FlagsOverrideConfig) {
    std::ofstream(dir_ / "run.cfg") << "# fou defaults\nprocess = fou\nalpha = 0.75\nlambda = 2\nn = 2\n";
    auto from_cfg = run("cov --config " + (dir_ / "run.cfg").string());
    auto overridden = run("cov --config " + (dir_ / "run.cfg").string() + " --lambda 1 --t0 0.3");
    auto direct = run("cov --process fou --alpha 0.75 --lambda 1 --t0 0.3 --n 2");
    ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
    EXPECT_EQ(overridden.out, direct.out);
    EXPECT_NE(from_cfg.out, direct.out);
}

TEST_F(Cli, ReportReplaysItsConfig) {
    const auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(run("validate --suite tmbm-equivalence --seed 5 --out " + a.string()).code, 0);
    ASSERT_EQ(run("validate --config " + (a / "report_tmbm-equivalence.json").string() + " --out " + b.string()).code,
              0);
    EXPECT_EQ(slurp(a / "report_tmbm-equivalence.json"), slurp(b / "report_tmbm-equivalence.json"));
}

TEST_F(Cli, SampleIsReproducibleAcrossThreads) {
    const std::string args = "sample --process tmbm --profile ramp:0.8,1.2,0,2 --dt 0.05 --n 40 --paths 12 --seed 3";
    ASSERT_EQ(run(args + " --out " + (dir_ / "one").string(), "TPLAB_THREADS=1").code, 0);
    ASSERT_EQ(run(args + " --out " + (dir_ / "many").string(), "TPLAB_THREADS=8").code, 0);
    const auto one = slurp(dir_ / "one" / "paths.jsonl");
    EXPECT_EQ(one, slurp(dir_ / "many" / "paths.jsonl"));
    std::istringstream in(one);
    EXPECT_EQ(tplab::io::read_paths(in).size(), 12u);
}

TEST_F(Cli, SampleThenEstimate) {
    ASSERT_EQ(run("sample --process tfbm --alpha 1 --lambda 0.01 --dt 0.001 --n 200 --paths 150 --out " +
                  dir_.string())
                  .code,
              0);
    auto r = run("estimate --estimator hurst --input " + (dir_ / "paths.jsonl").string());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("quantity,value,std_error\r\nh_hat,", 0), 0u) << r.out;
    std::ofstream(dir_ / "broken.jsonl") << "{\"seed\":1}\n";
    auto bad = run("estimate --input " + (dir_ / "broken.jsonl").string());
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line 1"), std::string::npos);
}

TEST_F(Cli, Figure1Csv) {
    ASSERT_EQ(run("cov --figure1 --out " + dir_.string()).code, 0);
    const auto text = slurp(dir_ / "figure1.csv");
    EXPECT_EQ(text.rfind("t,fou_cov,tfbm_cov\r\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1002);
}
