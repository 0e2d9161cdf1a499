#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(BCUT_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    std::string l;
    while (std::getline(is, l))
        if (!l.empty()) v.push_back(l);
    return v;
}

std::string temp_file(const std::string& name, const std::string& body) {
    std::string path = std::string(::testing::TempDir()) + name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST(Cli, ValidateQuarticPasses) {
    auto r = run("validate --nu 1 --phi-e 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("spec valid"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ValidateWritesSpecThatReloads) {
    std::string path = std::string(::testing::TempDir()) + "nu2.spec";
    ASSERT_EQ(run("validate --nu 2 --phi-e 1.2 --out " + path).code, 0);
    auto r = run("validate --spec " + path);
    EXPECT_EQ(r.code, 0);
}

TEST(Cli, ValidateFlagsBrokenSpec) {
    // full form with Q(e) < 0
    auto path = temp_file("bad.spec", "nu = 1\ne = 3.0861612696304875\nQ = 2 -1\nV = 0 0 0 0 0.25\nTc = 8.6\n");
    auto r = run("validate --spec " + path);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL Q(e) > 0"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("validate --spec /nonexistent/file.spec").code, 2);
    EXPECT_EQ(run("scan-u --u-grid 1:0:1").code, 2);
    EXPECT_EQ(run("scan-u --u-grid a:b:c").code, 2);
    EXPECT_EQ(run("chain --bits 100").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    auto path = temp_file("garbage.spec", "nu = 1\nthis is not a key value line\n");
    EXPECT_EQ(run("validate --spec " + path).code, 2);
}

TEST(Cli, ChainTable) {
    auto r = run("chain --k-max 4");
    ASSERT_EQ(r.code, 0);
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 6u);
    EXPECT_EQ(l[0], "k,ln_zeta,gamma,ln_A");
    EXPECT_EQ(l[2].rfind("1,", 0), 0u);
}

TEST(Cli, ScanUOneRowPerGridPoint) {
    auto r = run("scan-u --N 20 --u-grid 1.2:1.4:0.1 --nodes 2000");
    ASSERT_EQ(r.code, 0);
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0].rfind("N,n,p,u,ubar,eps_u,valid,", 0), 0u);
}

TEST(Cli, TransitionCsv) {
    auto r = run("transition --t-grid=-1e-4,1e-4");
    ASSERT_EQ(r.code, 0);
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[0], "t_over_Tc,t,d2F_dt2_solver,d2F_dt2_formula,status");
    EXPECT_NE(l[1].find(",ok"), std::string::npos);
}

TEST(Cli, EquilibriumBlockReloads) {
    auto r = run("equilibrium --t-grid=1e-4 --block");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("s = 2"), std::string::npos);
    EXPECT_NE(r.out.find("x0 = "), std::string::npos);
    EXPECT_EQ(run("equilibrium --t-grid=1e-4,2e-4 --block").code, 2);
}

TEST(Cli, PsiTable) {
    auto r = run("psi --N 20 --u 1.3 --y-grid=-1:1:1 --nodes 2000");
    ASSERT_EQ(r.code, 0);
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0].rfind("y,x,psi_n_oracle,", 0), 0u);
}

TEST(Cli, ExampleSpecsValidate) {
    for (const char* f : {"quartic_phi1.spec", "quartic_full.spec", "sextic_nu2.spec"}) {
        auto r = run(std::string("validate --spec ") + BCUT_SOURCE_DIR + "/examples/specs/" + f);
        EXPECT_EQ(r.code, 0) << f;
    }
}
