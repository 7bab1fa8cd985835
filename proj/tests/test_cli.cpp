#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ZEROGAP_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, EvalBeurling) {
    const auto r = run("eval-extremal --kind beurling --from -3 --to 3 --samples 7");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "t,f(t)\n"));
    EXPECT_TRUE(has(r.out, "\n1,1\n"));
    EXPECT_TRUE(has(r.out, "\n-1,-1\n"));
}

TEST(Cli, EvalFejerAtZero) {
    const auto r = run("eval-extremal --kind fejer --delta 0.1103178 --from -1 --to 1 --samples 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\n0,1\n"));
}

TEST(Cli, EvalFourierSection) {
    const auto r = run("eval-extremal --kind fejer --from 0 --to 1 --samples 5 --fourier");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "x,fhat(x)\n"));
}

TEST(Cli, InvalidKind) {
    EXPECT_EQ(run("eval-extremal --kind gaussian").code, 1);
    EXPECT_EQ(run("eval-extremal --kind beurling --fourier").code, 1);
    EXPECT_EQ(run("no-such-command").code, 1);
}

TEST(Cli, CertifyTheoremLength) {
    const auto r = run("certify-gap --degree 4 --length 45.3236015");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"certified\": true"));
    EXPECT_TRUE(has(r.out, "numerical evidence, grid-based"));
}

TEST(Cli, CertifyShortWindowFails) {
    const auto r = run("certify-gap --degree 4 --length 20");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"certified\": false"));
}

TEST(Cli, DegenerateWindow) { EXPECT_EQ(run("certify-gap --length 5 --delta 0.1103178").code, 1); }

TEST(Cli, MinEll) {
    const auto r = run("min-ell --im-max 20 --re-max 5");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"min_ell\""));
    EXPECT_EQ(run("min-ell --convention sideways").code, 1);
}

TEST(Cli, ScanPointAndGrid) {
    const auto r = run("scan-region --point 4.7209 12.4687 --point 0 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "4.7209,12.4687,") && has(r.out, ",Unconstrained\n"));
    EXPECT_TRUE(has(r.out, "\n0,0,") && has(r.out, ",Impossible\n"));
    // default grid contains the neighbouring grid point (4.75, 12.5); same verdict at half the step
    for (const char* step : {"0.25", "0.125"}) {
        const auto g = run(std::string("scan-region --nu-max 13 --step ") + step);
        EXPECT_EQ(g.code, 0);
        EXPECT_TRUE(has(g.out, "\n4.75,12.5,")) << step;
        const auto at = g.out.find("\n4.75,12.5,");
        const auto line = g.out.substr(at + 1, g.out.find('\n', at + 1) - at - 1);
        EXPECT_TRUE(has(line, "Unconstrained")) << line;
    }
}

TEST(Cli, ScanDeterministic) {
    const auto a = run("scan-region --nu-max 3 --step 1");
    const auto b = run("scan-region --nu-max 3 --step 1 --threads 1");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifyExample) {
    const auto r = run("verify-example");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"consistent\": true"));
    EXPECT_TRUE(has(r.out, "\"convention\": \"halved\""));
    const auto l = run("verify-example --convention literal");
    EXPECT_EQ(l.code, 0);
    EXPECT_TRUE(has(l.out, "\"convention\": \"literal\""));
    EXPECT_EQ(run("verify-example --data /nonexistent/path.json").code, 1);
}

TEST(Cli, VerifyWithPrimesNeedsData) {
    // support beyond log 2 / 2pi needs c(n) up to floor(exp(2 pi delta)) = 12, and a_8 is missing
    EXPECT_EQ(run("verify-example --kind fejer --delta 0.4").code, 3);
    EXPECT_EQ(run("verify-example --kind selberg --delta 0.4 --length 60").code, 3);
}

TEST(Cli, Coefficients) {
    const auto r = run("coefficients --bound 7");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\n6,"));
    EXPECT_TRUE(has(r.out, ",derived,"));
    EXPECT_EQ(run("coefficients --bound 13").code, 3);
}

TEST(Cli, HelpListsFlags) {
    const std::pair<const char*, std::vector<const char*>> commands[] = {
        {"eval-extremal", {"--kind", "--from", "--to", "--samples", "--fourier", "--delta", "--alpha", "--beta", "--t0"}},
        {"certify-gap", {"--degree", "--length", "--delta", "--re-max", "--im-max", "--step", "--convention", "--threads",
                         "--minimal-length", "--precision"}},
        {"min-ell", {"--kind", "--delta", "--re-max", "--im-max", "--step", "--convention", "--threads"}},
        {"scan-region", {"--nu-max", "--step", "--t0", "--delta", "--Q", "--out", "--convention", "--threads", "--point"}},
        {"verify-example", {"--data", "--convention", "--kind", "--delta", "--threads"}},
        {"coefficients", {"--data", "--bound"}},
    };
    for (const auto& [cmd, flags] : commands) {
        const auto r = run(std::string(cmd) + " --help");
        EXPECT_EQ(r.code, 0) << cmd;
        for (const char* flag : flags) EXPECT_TRUE(has(r.out, flag)) << cmd << " " << flag;
    }
}
