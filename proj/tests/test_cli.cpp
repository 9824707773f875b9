#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using lexord::testing::fixture;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = lexord::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string path(const char* name) { return fixture(name).string(); }

}  // namespace

TEST(Cli, Bound) {
    const auto r = run({"bound", path("omega_omega.grm")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "w^2 + 1\n");
}

TEST(Cli, Rank) {
    EXPECT_EQ(run({"rank", "(omsum 1 (+ zeta (finp 0)))"}).out, "2\n");
    EXPECT_EQ(run({"rank", "(omsum 0 (w^p 0))"}).out, "w\n");
}

TEST(Cli, FiniteDistance) {
    EXPECT_EQ(run({"findist", path("eta.grm"), "01", "1101"}).out, "infinite\n");
    EXPECT_EQ(run({"findist", path("omega.grm"), "0", "110"}).out, "finite\n");
}

TEST(Cli, WordsAreLiftedThroughThePipeline) {
    const auto r = run({"findist", "--prefixify", "_", "--encode-binary", path("zeta_sum.grm"), "10001", "10010"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "finite\n");
    EXPECT_EQ(run({"member", "--prefixify", "_", path("zeta_sum.grm"), "101"}).out, "true\n");
}

TEST(Cli, GrammarCommands) {
    EXPECT_EQ(run({"height", path("omega.grm")}).out, "1\n");
    EXPECT_EQ(run({"enumerate", "--max-len", "3", path("omega.grm")}).out, "0\n10\n110\n");
    EXPECT_EQ(run({"classes", "--max-len", "3", path("zeta.grm")}).out, "001 01 10 110\n");
    const auto n = run({"normalize", path("omega.grm")});
    EXPECT_EQ(n.out, "alphabet: 0 < 1\nstart: S\nS -> 0 | 1 A\nA -> 0 | 1 A\n");
    const auto i = run({"interval", path("omega.grm"), "0", "110"});
    EXPECT_EQ(i.code, 0);
    EXPECT_NE(i.out.find("# derivations: "), std::string::npos);
}

TEST(Cli, TermCommands) {
    EXPECT_EQ(run({"condense", "(+ omegastar (fin 2) omega)"}).out, "(fin 1)\n");
    EXPECT_EQ(run({"classify", "(omsum 1 (+ eta (w^p 0)))"}).out, "quasi-dense-not-dense\n");
    const auto t = run({"rank", "--trace", "zeta"});
    EXPECT_EQ(t.out, "1\n# 0: zeta\n# 1: (fin 1)\n# outcome: singleton\n");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"bound"}).code, 2);
    EXPECT_EQ(run({"rank", "omega", "--max-len", "x"}).code, 2);
    const auto missing = run({"bound", "/nonexistent/g.grm"});
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("I/O error"), std::string::npos);
    EXPECT_EQ(run({"height", path("eta.grm"), "--gnf"}).code, 0);
    EXPECT_EQ(run({"rank", "(omsum 0 (omsum 0 omega))"}).code, 1);
    EXPECT_EQ(run({"findist", path("omega.grm"), "0", "11"}).code, 1);
}

TEST(Cli, JsonMatchesText) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"bound", path("omega_omega.grm")}, {"rank", "(omsum 1 (+ eta (w^p 0)))"},
          {"findist", path("eta.grm"), "01", "1101"}, {"classify", "eta"}}) {
        const auto text = run(args);
        auto with_json = args;
        with_json.push_back("--json");
        const auto report = nlohmann::json::parse(run(with_json).out);
        EXPECT_EQ(report.at("command"), args[0]);
        EXPECT_TRUE(report.contains("inputs"));
        EXPECT_EQ(report.at("result").get<std::string>() + "\n", text.out);
    }
    const auto traced = nlohmann::json::parse(run({"rank", "--json", "--trace", "(omsum 0 (w^p 0))"}).out);
    EXPECT_TRUE(traced.at("trace").at("limit_applied").get<bool>());
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"condense", "--trace", "--seed", "9", "(omsum 1 (+ zeta (finp 0)))"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, CheckPassesOnTheCatalog) {
    const auto r = run({"check", path("catalog.json")});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

// Altering one expected value makes exactly that entry fail.
TEST(Cli, CheckFailsExactlyTheAlteredEntry) {
    auto doc = nlohmann::json::parse(lexord::read_file(fixture("catalog.json")));
    for (auto& e : doc["entries"]) {
        e["grammar"] = fixture(e["grammar"].get<std::string>()).string();
        if (e["name"] == "omega-omega")
            e["rank"] = "w + 1";
    }
    const auto tmp = std::filesystem::temp_directory_path() / "lexord_altered_catalog.json";
    std::ofstream(tmp) << doc.dump();
    const auto r = run({"check", tmp.string()});
    EXPECT_EQ(r.code, 1);
    std::istringstream lines(r.out);
    std::vector<std::string> failed;
    for (std::string line; std::getline(lines, line);)
        if (line.rfind("FAIL", 0) == 0)
            failed.push_back(line);
    ASSERT_EQ(failed.size(), 1U) << r.out;
    EXPECT_EQ(failed[0].rfind("FAIL omega-omega rank", 0), 0U);
    std::filesystem::remove(tmp);
}

TEST(Cli, CheckWithMissingGrammarIsAnIoError) {
    auto doc = nlohmann::json::parse(lexord::read_file(fixture("catalog.json")));
    doc["entries"][0]["grammar"] = "/nonexistent/missing.grm";
    const auto tmp = std::filesystem::temp_directory_path() / "lexord_missing_catalog.json";
    std::ofstream(tmp) << doc.dump();
    const auto r = run({"check", tmp.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("I/O error"), std::string::npos);
    std::filesystem::remove(tmp);
}
