#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "brp/io.hpp"
#include "cli.hpp"

using namespace brp;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

class Scratch : public ::testing::Test {
protected:
    std::filesystem::path dir;
    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("brp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST(Cli, AlgebraQueries) {
    auto c = run({"algebra", "--op", "coproduct", "[b_1]_2"});
    EXPECT_EQ(c.rc, 0);
    EXPECT_EQ(trim(c.out), "[b_1]_2 (x) 1 + 1 (x) [b_1]_2 + b_1 (x) b_2");
    auto p = run({"algebra", "--op", "psi", "--N", "3", "--d", "1", "[b_1 b_1]_1"});
    EXPECT_EQ(trim(p.out), "[b_1 b_1]_1 + 2 * b_1 (x) [b_1]_1 + 2 * b_1 (x) b_1 (x) b_1");
    EXPECT_EQ(trim(run({"algebra", "--op", "star", "b_1", "b_2"}).out), "b_1 b_2 + [b_1]_2");
    EXPECT_EQ(trim(run({"algebra", "--op", "antipode", "[b_2]_1"}).out), "-1 * [b_2]_1 + b_1 b_2");
    EXPECT_EQ(trim(run({"algebra", "--op", "phig", "[b_1 b_2]_3"}).out), "b_1 (x) b_2 (x) b_3 + b_2 (x) b_1 (x) b_3");
    EXPECT_EQ(trim(run({"algebra", "--op", "exp", "--N", "2", "b_1"}).out), "1 + b_1 + 1/2 * [b_1]_1 + b_1 b_1");
}

TEST(Cli, AlgebraErrors) {
    auto bad = run({"algebra", "--op", "coproduct", "1 + ]"});
    EXPECT_EQ(bad.rc, 2);
    EXPECT_NE(bad.err.find("line 1, column 5"), std::string::npos);
    EXPECT_EQ(run({"algebra", "--op", "log", "b_1"}).rc, 3);
    EXPECT_EQ(run({"algebra", "--op", "frobnicate", "b_1"}).rc, 2);
    EXPECT_EQ(run({"algebra", "--op", "coproduct", "--d", "1", "b_2"}).rc, 2);
}

TEST_F(Scratch, LiftFromCsv) {
    write_file(file("line.csv"), "t,b_1\n0,0\n1/2,1/2\n1,1\n");
    auto r = run({"lift", "--input", file("line.csv"), "--mode", "canonical", "--gamma", "3/10"});
    ASSERT_EQ(r.rc, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["level"], 3);
    EXPECT_TRUE(j["validation"]["shuffle"]["pass"]);
    auto X = branched_from_json<Rational>(j);
    EXPECT_EQ(X.increment(0, 2).at(parse_forest("[[b_1]_1]_1")), Rational(1, 6));
    EXPECT_EQ(X.increment(0, 2).at(parse_forest("[b_1 b_1]_1")), Rational(1, 3));
}

TEST_F(Scratch, LiftErrors) {
    write_file(file("one.csv"), "t,b_1\n0,0\n");
    auto r = run({"lift", "--input", file("one.csv")});
    EXPECT_EQ(r.rc, 2);
    EXPECT_NE(r.err.find("fewer than 2 grid points"), std::string::npos);
    EXPECT_EQ(run({"lift", "--input", file("missing.csv")}).rc, 2);
    EXPECT_EQ(run({"lift", "--synth", "rw", "--gamma", "3/2"}).rc, 3);
    EXPECT_EQ(run({"lift", "--synth", "rw", "--gamma", "1/2", "--N", "3"}).rc, 3);
    EXPECT_EQ(run({"lift", "--synth", "spiral"}).rc, 3);
}

TEST(Cli, ItoLiftReportsShuffleFailures) {
    auto r = run({"lift", "--synth", "rw", "--d", "2", "--steps", "5", "--mode", "ito", "--gamma", "0.45"});
    ASSERT_EQ(r.rc, 0) << r.err;
    json v = json::parse(r.out)["validation"];
    EXPECT_TRUE(v["character"]["pass"]);
    EXPECT_TRUE(v["chen"]["pass"]);
    EXPECT_FALSE(v["shuffle"]["pass"]);
    EXPECT_GT(v["shuffle"]["failures"].get<int>(), 0);
}

TEST_F(Scratch, ConvertAndSolveRoundTrip) {
    auto l = run({"lift", "--synth", "rw", "--d", "2", "--steps", "6", "--mode", "ito", "--out", file("x.json")});
    ASSERT_EQ(l.rc, 0) << l.err;
    auto c = run({"convert", "--input", file("x.json"), "--out", file("r.json")});
    ASSERT_EQ(c.rc, 0) << c.err;
    json r = json::parse(read_file(file("r.json")));
    EXPECT_EQ(r["certificate"]["status"], "pass");
    auto P = path_from_csv<Rational>(r["extended_path"].get<std::string>());
    EXPECT_EQ(P.basis.size(), 2u + 4u);
    auto s = run({"solve", "--driver", file("x.json"), "--field", "y1; 0", "--field", "0; y2", "--xi", "1,2", "--side",
                  "both"});
    ASSERT_EQ(s.rc, 0) << s.err;
    json b = json::parse(s.out);
    EXPECT_EQ(b["max_step_discrepancy"], "0");
    EXPECT_EQ(b["branched"]["Y"], b["geometric"]["Y"]);
}

TEST_F(Scratch, ConvertRejectsCorruptedDriver) {
    ASSERT_EQ(run({"lift", "--synth", "rw", "--d", "1", "--steps", "4", "--mode", "ito", "--out", file("x.json")}).rc, 0);
    json j = json::parse(read_file(file("x.json")));
    j["increments"][1]["b_1 b_1"] = "7";
    write_file(file("bad.json"), j.dump());
    auto c = run({"convert", "--input", file("bad.json"), "--no-cocycle"});
    EXPECT_EQ(c.rc, 4);
    EXPECT_NE(c.out.find("h=b_1 b_1"), std::string::npos);
    write_file(file("junk.json"), "{\"kind\": \"branched\", \"d\": 1");
    EXPECT_EQ(run({"convert", "--input", file("junk.json")}).rc, 2);
}

TEST_F(Scratch, SolveZeroFieldIsConstant) {
    ASSERT_EQ(run({"lift", "--synth", "rw", "--d", "1", "--steps", "3", "--out", file("x.json")}).rc, 0);
    auto s = run({"solve", "--driver", file("x.json"), "--field", "0", "--xi", "5", "--format", "csv"});
    ASSERT_EQ(s.rc, 0) << s.err;
    std::istringstream in(s.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,y_1");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) {
            EXPECT_EQ(line.substr(line.find(',') + 1), "5");
            ++rows;
        }
    EXPECT_EQ(rows, 4);
    EXPECT_EQ(run({"solve", "--driver", file("x.json"), "--field", "0; 0", "--xi", "5"}).rc, 3);
    EXPECT_EQ(run({"solve", "--driver", file("x.json"), "--field", "y1", "--xi", "1,2"}).rc, 3);
}

TEST(Cli, VerifySuites) {
    auto v = run({"verify", "--suite", "hopf", "--N", "4", "--d", "2"});
    EXPECT_EQ(v.rc, 0) << v.out;
    EXPECT_EQ(run({"verify", "--suite", "lgl", "--N", "4"}).rc, 0);
    auto m = run({"verify", "--suite", "all", "--N", "3", "--mutate", "1"});
    EXPECT_EQ(m.rc, 1);
    EXPECT_NE(m.out.find("witness"), std::string::npos);
    EXPECT_EQ(run({"verify", "--suite", "nonsense"}).rc, 3);
}

TEST(Cli, DeskSmallRun) {
    auto r = run({"solve", "--desk", "gbm", "--paths", "2", "--steps", "64", "--seed", "3"});
    ASSERT_EQ(r.rc, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_TRUE(j.contains("mean_rel_error"));
}
