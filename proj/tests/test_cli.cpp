#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(BINMAT_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path tmp(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "binmat_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, GenWritesHeaders) {
    const auto f = tmp("omega5.bmx");
    ASSERT_EQ(run("gen --family omega --rank 5 --out " + f.string()).code, 0);
    EXPECT_NE(slurp(f).find("\n5 15\n"), std::string::npos);
    EXPECT_EQ(run("gen --family z --rank 4").out.find("4 9\n") != std::string::npos, true);
    EXPECT_NE(run("gen --family pg --rank 4").out.find("4 15\n"), std::string::npos);
    EXPECT_NE(run("gen --family kcomplete --rank 4").out.find("4 10\n"), std::string::npos);
}

TEST(Cli, MinorExitCodes) {
    EXPECT_EQ(run("minor omega:5 p9star").code, 1);
    const auto hit = run("minor alpha5_3_1p p9star --witness");
    EXPECT_EQ(hit.code, 0);
    EXPECT_NE(hit.out.find("contract {"), std::string::npos);
    const auto self = run("minor F7 f7 --witness");
    EXPECT_EQ(self.code, 0);
    EXPECT_NE(self.out.find("contract {} delete {}"), std::string::npos);
    EXPECT_EQ(run("minor omega:5 p9star --expect no").code, 0);
    EXPECT_EQ(run("minor R16 S8").code, 0);
}

TEST(Cli, ErrorExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("gen --family z --rank 2").code, 3);
    EXPECT_EQ(run("gen --family omega --rank 12").code, 3);
    const auto bad = tmp("bad.bmx");
    std::ofstream(bad) << "2 3\n101\n10\n";
    EXPECT_EQ(run("show " + bad.string()).code, 3);
    EXPECT_EQ(run("minor " + bad.string() + " p9").code, 3);
    EXPECT_EQ(run("census --rank 9 --exclude p9star --nonregular").code, 3);
    EXPECT_EQ(run("census --rank 7 --exclude p9star --nonregular").code, 3);
    EXPECT_EQ(run("verify 1b").code, 0);
    EXPECT_EQ(std::system(("BINMAT_GOLDEN_DIR=/nonexistent " + std::string(BINMAT_CLI_PATH) + " verify 1b >/dev/null 2>&1").c_str()) >> 8, 3);
}

TEST(Cli, IsoDualAndShow) {
    const auto f = tmp("p9dual.bmx");
    ASSERT_EQ(run("dual P9 --out " + f.string()).code, 0);
    EXPECT_EQ(run("iso " + f.string() + " P9dual").code, 0);
    EXPECT_EQ(run("iso P9 P9dual").code, 1);
    EXPECT_NE(run("show R16").out.find("p9star 0"), std::string::npos);
}

TEST(Cli, ExtensionTablesAndChains) {
    const auto ext = run("ext P9");
    EXPECT_EQ(ext.code, 0);
    EXPECT_EQ(std::count(ext.out.begin(), ext.out.end(), '\n'), 7);  // header + 6 candidates
    const auto co = run("coext P9 --exclude p9star");
    EXPECT_EQ(co.code, 0);
    const auto chain = run("chain alpha5_3 --rank 6 --exclude p9star");
    EXPECT_EQ(chain.code, 0);
    EXPECT_EQ(std::count(chain.out.begin(), chain.out.end(), '\n'), 7);
}

TEST(Cli, CensusReportsAreByteIdenticalAcrossJobCounts) {
    const auto a = tmp("c1.json");
    const auto b = tmp("c2.json");
    ASSERT_EQ(run("census --rank 5 --exclude p9star --nonregular --jobs 1 --out " + a.string()).code, 0);
    ASSERT_EQ(run("census --rank 5 --exclude p9star --nonregular --jobs 3 --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(a).find("\"max_size\": 16"), std::string::npos);
    EXPECT_EQ(run("census --rank 4 --exclude p9star --nonregular --expect 15").code, 0);
    EXPECT_EQ(run("census --rank 4 --exclude p9star --nonregular --expect 14").code, 1);
}
