#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

struct Out {
    int rc = -1;
    std::string text;
};

// argv is pasted into a shell line; keep it to quoted expressions
Out qpb(const std::string& args) {
    std::string cmd = std::string(QPB_BIN) + " " + args + " 2>/dev/null";
    Out o;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return o;
    std::array<char, 4096> buf;
    std::size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), f)) > 0) o.text.append(buf.data(), k);
    int st = pclose(f);
    o.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return o;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST(Cli, NormalFormExample) {
    Out o = qpb("nf --n 2 " + quote("a[2,2]*a[1,1]"));
    EXPECT_EQ(o.rc, 0);
    EXPECT_EQ(o.text, "a[1,1]*a[2,2] - (q^-1 - q)*a[1,2]*a[2,1]\n");
}

TEST(Cli, IndexOutOfRangeIsUsage) {
    EXPECT_EQ(qpb("nf --n 2 " + quote("a[3,1]")).rc, 2);
    EXPECT_EQ(qpb("nf --n 2 " + quote("a[1,1")).rc, 2);
    EXPECT_EQ(qpb("frobnicate").rc, 2);
    EXPECT_EQ(qpb("verify nosuch").rc, 2);
    EXPECT_EQ(qpb("nf --n 2 --format yaml " + quote("a[1,1]")).rc, 2);
    EXPECT_EQ(qpb("localize " + quote("a[1,1]")).rc, 2);  // --invert is required
}

TEST(Cli, BudgetExitCode) {
    Out o = qpb("nf --n 3 --budget 3 " + quote("a[3,3]*a[3,2]*a[2,3]*a[2,2]*a[1,1]"));
    EXPECT_EQ(o.rc, 3);
}

TEST(Cli, VerifyAllN2PassesAndIsDeterministic) {
    Out a = qpb("verify all --n 2 --degree 4 --format json");
    ASSERT_EQ(a.rc, 0) << a.text;
    auto j = nlohmann::json::parse(a.text);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["overall"], "pass");
    EXPECT_EQ(j["params"]["n"], 2);
    EXPECT_EQ(j["params"]["degree"], 4);
    EXPECT_EQ(j["params"]["seed"], 0);
    std::vector<std::string> ids;
    for (auto& c : j["checks"]) {
        ids.push_back(c["id"]);
        if (c["status"] == "fail") ADD_FAILURE() << c["id"];
    }
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
    EXPECT_GT(ids.size(), 50u);
    Out b = qpb("verify all --n 2 --degree 4 --format json");
    EXPECT_EQ(a.text, b.text);
}

TEST(Cli, VerifyFailureExitCode) {
    // twisted cleaving at k = 2 does not hold for n = 3
    Out o = qpb("verify twist --n 3 --format json");
    EXPECT_EQ(o.rc, 1);
    auto j = nlohmann::json::parse(o.text);
    EXPECT_EQ(j["overall"], "fail");
    bool found = false;
    for (auto& c : j["checks"])
        if (c["id"] == "twisted_cleaving_k2") {
            found = true;
            EXPECT_EQ(c["status"], "fail");
            EXPECT_FALSE(c["witness"].get<std::string>().empty());
        }
    EXPECT_TRUE(found);
}

TEST(Cli, ClassicalSuiteAtQ1) {
    Out o = qpb("verify classical --n 2 --q 1 --format json");
    EXPECT_EQ(o.rc, 0);
    EXPECT_EQ(nlohmann::json::parse(o.text)["overall"], "pass");
    // at q = 2 the Manin relations do not commute
    EXPECT_EQ(qpb("verify classical --n 2 --q 2").rc, 1);
}

TEST(Cli, SpecializedNormalForm) {
    EXPECT_EQ(qpb("nf --n 2 --q 1 " + quote("a[2,2]*a[1,1]")).text, "a[1,1]*a[2,2]\n");
    EXPECT_EQ(qpb("nf --n 2 --q 2 " + quote("a[2,1]*a[1,1]")).text, "2*a[1,1]*a[2,1]\n");
}

TEST(Cli, JsonWrapsEveryCommand) {
    for (const std::string& args : std::vector<std::string>{
             "nf --n 2 --format json " + quote("a[1,1]"), "det --n 2 --format json",
             "build --alg slq --n 2 --format json", "coact --n 2 --format json " + quote("a[1,2]"),
             "localize --n 2 --invert 1 --format json " + quote("a[2,1]*d[1]^-1"),
             "twist-product --n 2 --format json " + quote("a[1,2]") + " " + quote("a[1,1]")}) {
        Out o = qpb(args);
        ASSERT_EQ(o.rc, 0) << args;
        auto j = nlohmann::json::parse(o.text);
        EXPECT_EQ(j["schema"], 1) << args;
        EXPECT_EQ(j["overall"], "pass") << args;
        EXPECT_FALSE(j["checks"][0]["info"]["output"].get<std::string>().empty()) << args;
    }
}

TEST(Cli, CoactionValue) {
    Out o = qpb("coact --alg slq --n 2 --invert 1 " + quote("a[1,2]"));
    EXPECT_EQ(o.rc, 0);
    EXPECT_NE(o.text.find("a[1,2] (x) p[1,1]^-1"), std::string::npos) << o.text;
    EXPECT_NE(o.text.find("a[1,1] (x) p[1,2]"), std::string::npos) << o.text;
}

TEST(Cli, ThetaFile) {
    auto path = std::filesystem::temp_directory_path() / "qpb_theta_test.txt";
    {
        std::ofstream f(path);
        f << "1 2 g^1\n";
    }
    Out o = qpb("twist-product --alg projq --n 2 --theta-file " + path.string() + " " + quote("x[1]") + " " + quote("x[2]"));
    EXPECT_EQ(o.rc, 0);
    EXPECT_FALSE(o.text.empty());
    Out bad = qpb("twist-product --alg projq --n 2 --theta-file /nonexistent/theta " + quote("x[1]") + " " + quote("x[2]"));
    EXPECT_EQ(bad.rc, 2);
    std::filesystem::remove(path);
}

// fixtures/*.nf: "# args: <nf flags>" then "expr => normal form" per line
TEST(Cli, FixtureCorpus) {
    std::size_t lines = 0;
    for (auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
        if (entry.path().extension() != ".nf") continue;
        std::ifstream in(entry.path());
        std::string line, args, exprs, expected;
        while (std::getline(in, line)) {
            if (line.rfind("# args:", 0) == 0) {
                args = line.substr(7);
                continue;
            }
            if (line.empty() || line[0] == '#') continue;
            auto cut = line.find(" => ");
            ASSERT_NE(cut, std::string::npos) << entry.path() << ": " << line;
            exprs += " " + quote(line.substr(0, cut));
            expected += line.substr(cut + 4) + "\n";
            ++lines;
        }
        ASSERT_FALSE(args.empty()) << entry.path();
        Out o = qpb("nf" + args + exprs);
        EXPECT_EQ(o.rc, 0) << entry.path();
        EXPECT_EQ(o.text, expected) << entry.path();
    }
    EXPECT_GT(lines, 40u);
}
