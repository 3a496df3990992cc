#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(NICHOLS_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string &name) { return std::string(NICHOLS_DATA) + "/" + name; }

std::string slurp(const std::string &path) {
    std::ifstream f(path);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(Cli, ClassifyRowOne) {
    auto r = run("classify " + data("row1.txt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("row 1, q ↦ zeta5"), std::string::npos) << r.out;
}

TEST(Cli, NegativeControls) {
    auto r = run("roots " + data("badchain.txt"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("ExceededLimits"), std::string::npos);
    r = run("roots --max-points 16384 --max-roots 2048 " + data("badchain.txt"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("ExceededLimits"), std::string::npos);
    r = run("roots " + data("notifinite.txt"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("NotIFinite at point 0"), std::string::npos);
    auto w = std::string(NICHOLS_CLI) + " roots " + data("decomposable.txt") + " 2>&1 >/dev/null";
    FILE *pipe = popen(w.c_str(), "r");
    std::string err;
    std::array<char, 512> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) err.append(buf.data(), n);
    pclose(pipe);
    EXPECT_NE(err.find("decomposable"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("roots " + data("row1.txt")).code, 0);
    EXPECT_EQ(run("analyze " + data("notifinite.txt")).code, 1);
    EXPECT_EQ(run("classify " + data("badchain.txt")).code, 1);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate x").code, 2);
    EXPECT_EQ(run("roots").code, 2);
    EXPECT_EQ(run("roots /nonexistent/input.txt").code, 2);
    EXPECT_EQ(run("roots --max-points zero " + data("row1.txt")).code, 2);
    EXPECT_EQ(run("graph " + data("bad_syntax.txt")).code, 2);
}

TEST(Cli, QuietKeepsVerdict) {
    auto r = run("roots --quiet " + data("row1.txt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "verdict: Finite (10 positive roots, 1 points)\n");
}

TEST(Cli, Exports) {
    std::string dot = std::string(NICHOLS_TMP) + "/cli_row1.dot", js = std::string(NICHOLS_TMP) + "/cli_row1.json";
    auto r = run("roots --quiet --dot " + dot + " --json " + js + " " + data("row1.txt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(slurp(dot).find("graph exchange"), std::string::npos);
    EXPECT_NE(slurp(js).find("\"positive_root_count\": 10"), std::string::npos);
}
