#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "suites.hpp"

namespace {

struct Result {
    int status = -1;
    std::string out;
};

// stdout of the binary with stderr folded in, and its exit status.
Result run(const std::string& args) {
    Result r;
    std::string cmd = std::string(QRANK_BINARY) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

const std::string kData = QRANK_DATA;

}  // namespace

TEST(Cli, LatticeCounts) {
    EXPECT_EQ(run("lattice --family extended-subspace").out, "20\n");
    EXPECT_EQ(run("lattice --family extended-subspace --vertex t --count").out, "8\n");
    EXPECT_EQ(run("lattice --family subspace 4").out, "16\n");
    EXPECT_EQ(run("lattice --family chain 1").out, "1\n");
    EXPECT_EQ(run("lattice --quiver " + kData + "/quivers.qv --name a2").out, "2\n");
}

TEST(Cli, LatticeDot) {
    Result r = run("lattice --family subspace 2 --dot");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("digraph"), std::string::npos);
}

TEST(Cli, RankvecIdentityIsAllOnes) {
    std::string path = ::testing::TempDir() + "id.rep";
    std::ofstream(path) << "rep id on subspace3 over GF(7) {\n  dim s = 1; dim 1 = 1; dim 2 = 1; dim 3 = 1;\n"
                           "  mat a1 = [[1]]; mat a2 = [[1]]; mat a3 = [[1]];\n}\n";
    Result r = run("rankvec --quiver " + kData + "/quivers.qv --name subspace3 --rep " + path);
    ASSERT_EQ(r.status, 0) << r.out;
    std::size_t rows = 0;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "fingerprint,vertex,rank");
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.rfind(',') + 1), "1") << line;
    }
    EXPECT_EQ(rows, 11u);
}

TEST(Cli, RankvecRandomIsReproducible) {
    Result a = run("--seed 9 rankvec --family extended-subspace --random 3");
    Result b = run("rankvec --family extended-subspace --random 3 --seed 9");
    Result c = run("--seed 10 rankvec --family extended-subspace --random 3");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, RationalRepFromFile) {
    Result r = run("rankvec --quiver " + kData + "/quivers.qv --name subspace3 --rep " + kData +
                "/reps.rep --rep-name planes");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("\"s([][][])\",\"s\",3"), std::string::npos);
}

TEST(Cli, VerifyTensorOnThreeSubspace) {
    Result r = run("--json verify --suite tensor --family subspace 3");
    ASSERT_EQ(r.status, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.contains("claims"));
    for (const auto& c : j["claims"]) EXPECT_EQ(c["verdict"], "pass");
}

TEST(Cli, VerifyMainTheoremOnA2) {
    Result r = run("verify --suite mainthm --quiver " + kData + "/quivers.qv --name a2");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("main-theorem"), std::string::npos);
}

TEST(Cli, VerifyAllReportsRingRank) {
    Result r = run("--json --jobs 2 verify --suite all --family extended-subspace");
    ASSERT_EQ(r.status, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : j["claims"])
        if (c["claim"] == "ring-rank") {
            found = true;
            EXPECT_EQ(c["parameters"]["value"], 31);
        }
    EXPECT_TRUE(found);
}

TEST(Cli, InconclusiveExitsWithTwo) {
    Result r = run("verify --suite splitting --family subspace 5 --dims 3,2,2,2,2,2 --lmax 1");
    EXPECT_EQ(r.status, 2) << r.out;
}

TEST(Cli, ParseErrorsNameTheLocation) {
    std::string path = ::testing::TempDir() + "bad.qv";
    std::ofstream(path) << "quiver q {\n  vertices: s x;\n  arrows:\n    a: x => s;\n}\n";
    Result r = run("lattice --quiver " + path);
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find(path + ":4:"), std::string::npos) << r.out;
}

TEST(Cli, ValidateDataFiles) {
    Result r = run("validate " + kData + "/quivers.qv " + kData + "/reps.rep");
    EXPECT_EQ(r.status, 0) << r.out;
}

TEST(Cli, SeedFromEnvironment) {
    Result a = run("--seed 4 rankvec --family subspace 3 --random 2");
    Result b = run("rankvec --family subspace 3 --random 2 --seed 4");
    std::string cmd = "QRANK_SEED=4 ";
    Result c;
    {
        std::string full = cmd + QRANK_BINARY + " rankvec --family subspace 3 --random 2";
        FILE* p = popen(full.c_str(), "r");
        std::array<char, 4096> buf;
        std::size_t n;
        while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
        pclose(p);
    }
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST(Suites, JobsDoNotChangeVerdictsOrDigests) {
    qrank::cli::SuiteOptions one, two;
    one.seed = two.seed = 3;
    two.jobs = 2;
    auto t = qrank::example_quiver();
    auto a = qrank::cli::run_suite("lemmas", t, one);
    auto b = qrank::cli::run_suite("lemmas", t, two);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].claim, b[i].claim);
        EXPECT_EQ(a[i].verdict, b[i].verdict);
        EXPECT_EQ(a[i].digest, b[i].digest) << a[i].claim;
    }
    EXPECT_EQ(qrank::cli::exit_code(a), 0);
}

TEST(Suites, UnknownSuiteThrows) {
    EXPECT_THROW(qrank::cli::run_suite("nope", qrank::chain_quiver(2), {}), std::invalid_argument);
}
