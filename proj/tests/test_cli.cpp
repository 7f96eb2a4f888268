#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cardbounds/cli.hpp"

using namespace cardbounds;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cardbounds");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> records(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

}  // namespace

TEST_CASE("debruijn count prints the exact integer", "[cli]") {
    const auto r = run({"debruijn", "count", "--sigma", "2", "--order", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "2\n");
    CHECK(run({"debruijn", "count", "--sigma", "3", "--order", "2"}).out == "24\n");
}

TEST_CASE("debruijn gen and verify", "[cli]") {
    CHECK(run({"debruijn", "gen", "--sigma", "2", "--order", "4"}).out == "0000100110101111\n");
    CHECK(run({"debruijn", "verify", "--sigma", "2", "--order", "2", "--inline", "0011"}).code == kExitOk);
    const auto bad = run({"debruijn", "verify", "--sigma", "2", "--order", "2", "--inline", "0001"});
    CHECK(bad.code == kExitViolated);
    CHECK(bad.out.find("duplicate tuple 00 at positions 1 and 2") != std::string::npos);

    const auto unseeded = run({"debruijn", "gen", "--sigma", "2", "--order", "5", "--strategy", "eulerian-random"});
    CHECK(unseeded.code == kExitOk);
    CHECK(unseeded.err.find("seed: ") != std::string::npos);
    const auto a = run({"debruijn", "gen", "--sigma", "3", "--order", "3", "--strategy", "eulerian-random", "--seed", "9"});
    const auto b = run({"debruijn", "gen", "--sigma", "3", "--order", "3", "--strategy", "eulerian-random", "--seed", "9"});
    CHECK(a.out == b.out);
}

TEST_CASE("debruijn verify reads a file", "[cli]") {
    const std::string path = "cli_verify_input.txt";
    std::ofstream(path) << "00010111\n";
    CHECK(run({"debruijn", "verify", path, "--sigma", "2", "--order", "3"}).code == kExitOk);
    CHECK(run({"debruijn", "verify", "missing-file.txt", "--sigma", "2", "--order", "3"}).code == kExitUsage);
}

TEST_CASE("debruijn enum and bits", "[cli]") {
    CHECK(run({"debruijn", "enum", "--sigma", "2", "--order", "3"}).out == "00010111\n00011101\n");
    const auto bits = run({"debruijn", "bits", "--sigma", "4", "--order", "6"});
    CHECK(bits.code == kExitOk);
    CHECK(bits.out.find("ratio") != std::string::npos);
}

TEST_CASE("entropy rows for the cyclic example", "[cli]") {
    const auto r = run({"entropy", "--inline", "0011", "--sigma", "2", "--k", "0..2", "--convention", "cyclic",
                        "--format", "records"});
    REQUIRE(r.code == kExitOk);
    const auto rows = records(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["h_value"] == 1.0);
    CHECK(rows[1]["h_value"] == 1.0);
    CHECK(rows[2]["h_value"] == 0.0);
    CHECK(rows[2]["zero"] == true);
    CHECK(rows[2]["convention"] == "cyclic");
}

TEST_CASE("entropy table output", "[cli]") {
    const auto r = run({"entropy", "--inline", "0011", "--k", "0..2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("convention=linear") != std::string::npos);
}

TEST_CASE("usage errors exit 1", "[cli][errors]") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"entropy", "--inline", "0011", "--bogus"}).code == kExitUsage);
    CHECK(run({"entropy", "--inline", "0012", "--sigma", "2"}).code == kExitUsage);
    CHECK(run({"entropy", "--inline", "0011", "--sigma", "1"}).code == kExitUsage);
    CHECK(run({"entropy", "--inline", "01", "--k", "3", "--convention", "cyclic"}).code == kExitUsage);
    CHECK(run({"experiment", "bogus", "--seed", "1"}).code == kExitUsage);
    CHECK(run({"experiment", "matches", "--n", "10", "--k", "20", "--seed", "1"}).code == kExitUsage);
    CHECK(run({"experiment", "matches", "--n", "50,60", "--k", "5,6", "--seed", "1"}).code == kExitUsage);
    CHECK(run({"debruijn", "count", "--sigma", "2"}).code == kExitUsage);
    const auto bad = run({"entropy", "--inline", "0012", "--sigma", "2"});
    CHECK(bad.err.find("position 4") != std::string::npos);
}

TEST_CASE("seeded experiments print identical records", "[cli][determinism]") {
    const std::vector<std::string> args = {"experiment", "distinguish", "--sigma", "2", "--k", "16", "--m", "64",
                                           "--trials", "1000", "--seed", "7", "--format", "records"};
    const auto a = run(args);
    const auto b = run(args);
    auto parallel_args = args;
    parallel_args.insert(parallel_args.end(), {"--workers", "8"});
    const auto c = run(parallel_args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto rec = records(a.out);
    REQUIRE(rec.size() == 1);
    for (const auto* key : {"name", "params", "estimate", "stderr", "bound", "direction", "verdict", "trials", "seed"}) {
        CHECK(rec[0].contains(key));
    }
    CHECK(rec[0]["seed"] == 7);
    CHECK_FALSE(rec[0].contains("elapsed"));
}

TEST_CASE("timing flag adds elapsed", "[cli]") {
    const auto r = run({"experiment", "matches", "--trials", "100", "--seed", "1", "--format", "records", "--timing"});
    CHECK(records(r.out).at(0).contains("elapsed"));
}

TEST_CASE("unseeded experiments report their seed", "[cli]") {
    const auto r = run({"experiment", "matches", "--trials", "50", "--format", "records"});
    CHECK(r.code == kExitOk);
    CHECK(records(r.out).at(0)["seed"].is_number_unsigned());
    const auto t = run({"trick", "shuffled", "--trials", "50"});
    CHECK(t.out.find("seed") != std::string::npos);
}

TEST_CASE("sweeps emit one record per point plus a summary", "[cli]") {
    const auto r = run({"experiment", "distinguish", "--k", "12", "--m", "16,64,256", "--trials", "300", "--seed", "3",
                        "--format", "records"});
    REQUIRE(r.code == kExitOk);
    const auto rows = records(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[3]["name"] == "sweep-summary");
}

TEST_CASE("trick subcommands", "[cli]") {
    const auto deck = run({"trick", "deck"});
    CHECK(deck.code == kExitOk);
    CHECK(deck.out.find("SA,") == 0);
    const auto decoded = run({"trick", "decode", "101101"});
    CHECK(decoded.code == kExitOk);
    CHECK(decoded.out.find("candidates 1") != std::string::npos);
    const auto pre = run({"trick", "prearranged", "--exhaustive", "--seed", "1", "--format", "records"});
    CHECK(pre.code == kExitOk);
    CHECK(records(pre.out).at(0)["estimate"] == 1.0);
    CHECK(run({"trick", "decode", "10x"}).code == kExitUsage);
}

TEST_CASE("failed verification exits 2", "[cli]") {
    CHECK(run({"debruijn", "verify", "--sigma", "2", "--order", "3", "--inline", "00010110"}).code == kExitViolated);
}
