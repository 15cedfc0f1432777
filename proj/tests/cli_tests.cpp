#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kBin = HETLAB_BIN;

int run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".manifest").c_str());
    }
};

}  // namespace

TEST_CASE("missing required flags is a configuration error") {
    CHECK(run("simulate --model egarch") == 2);
    CHECK(run("simulate --model nosuch --steps 5 --out /tmp/x.csv") == 2);
}

TEST_CASE("constraint violations exit 2 with a named constraint") {
    const std::string out = "/tmp/hetlab_cli_err.txt";
    const std::string cmd = kBin +
        " lambda --model egarch --alpha 0.1 --beta 0.5 --gamma 0.2 --delta 0.4"
        " 2>" + out + " >/dev/null";
    const int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc == 2);
    const std::string text = slurp(out);
    CHECK(text.find("gamma") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("simulate writes the csv and its manifest") {
    TempFile out("/tmp/hetlab_cli_sim.csv");
    CHECK(run("simulate --model egarch --alpha 0.1 --beta 0.25 --gamma 0.3"
              " --delta 0.1 --steps 20 --burn-in 50 --seed 2 --out " + out.path) == 0);
    const std::string csv = slurp(out.path);
    CHECK(csv.rfind("t,sigma2,sigma2hat,z,d_or_zhat,diverged\n", 0) == 0);
    const std::string manifest = slurp(out.path + ".manifest");
    CHECK(manifest.find("simulate") != std::string::npos);
    CHECK(manifest.find("seed=2") != std::string::npos);
}

TEST_CASE("manifest replay reproduces the csv byte for byte") {
    TempFile a("/tmp/hetlab_cli_a.csv");
    TempFile b("/tmp/hetlab_cli_b.csv");
    CHECK(run("simulate --model garch --alpha0 0.05 --alphas 0.1 --betas 0.8"
              " --steps 40 --burn-in 100 --seed 9 --out " + a.path) == 0);
    CHECK(run("--config " + a.path + ".manifest simulate --out " + b.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(!slurp(a.path).empty());
}

TEST_CASE("strict mode exits 4 on an indeterminate verdict") {
    // rademacher at beta = 0.5, gamma = 3 sits exactly on the boundary
    CHECK(run("lambda --model egarch --alpha 0 --beta 0.5 --gamma 3 --delta 0"
              " --dist rademacher --method closed-form --budget 1000 --strict") == 4);
    CHECK(run("lambda --model egarch --alpha 0 --beta 0.5 --gamma 3 --delta 0"
              " --dist rademacher --method closed-form --budget 1000") == 0);
}

TEST_CASE("threads flag and env var do not change heatmap output") {
    TempFile a("/tmp/hetlab_cli_h1.csv");
    TempFile b("/tmp/hetlab_cli_h8.csv");
    const std::string common =
        " heatmap --family egarch --alpha 0.1 --axis1 beta:0.2:0.8:3"
        " --axis2 gamma:0.5:4.5:3 --budget 20000 --seed 5 --out ";
    CHECK(run("--threads 1" + common + a.path) == 0);
    const std::string cmd = "HETLAB_THREADS=8 " + kBin + common + b.path +
                            " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(slurp(a.path).rfind("axis1,axis2,lambda,stderr,verdict\n", 0) == 0);
}

TEST_CASE("bifurcation subcommand emits the orbit csv") {
    TempFile out("/tmp/hetlab_cli_bif.csv");
    CHECK(run("bifurcation --variant derived --beta 0.5 --gamma-min 1"
              " --gamma-max 4 --steps 6 --transient 2000 --keep 8 --out " +
              out.path) == 0);
    CHECK(slurp(out.path).rfind("gamma,sample_index,x,detected_period\n", 0) == 0);
}
