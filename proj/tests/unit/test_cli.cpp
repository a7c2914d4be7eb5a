#include "doctest.h"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace chordlink;
using namespace chordlink::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = {})
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "chordlink_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("layout is deterministic for a seed")
{
    const auto a = cli({"layout", data_path("triangle.gml"), "--seed", "7"});
    const auto b = cli({"layout", data_path("triangle.gml"), "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["positions"].size() == 5);
    CHECK(cli({"layout", data_path("triangle.gml"), "--seed", "8"}).out != a.out);
}

TEST_CASE("fiscal-scale layout finishes quickly")
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = cli({"layout", data_path("fiscal174.gml"), "--seed", "1"});
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["positions"].size() == 174);
    CHECK(s < 2.0);
}

TEST_CASE("minimal graph from stdin")
{
    const auto r = cli({"layout", "-"}, "graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 2 ] ]");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["positions"].size() == 2);
}

TEST_CASE("exit codes")
{
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"bogus"}).code == kExitUsage);
    CHECK(cli({"layout"}).code == kExitUsage);
    CHECK(cli({"layout", data_path("triangle.gml"), "--permutation", "magic"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
    const auto missing = cli({"layout", "/nonexistent.gml"});
    CHECK(missing.code == kExitInput);
    const auto parse = cli({"layout", "-"}, "graph [\n node [ id 1 ]\n edge [ source 1 target 2 ]\n]");
    CHECK(parse.code == kExitInput);
    CHECK(parse.err.find("line 3") != std::string::npos);
}

TEST_CASE("batch pipeline through files")
{
    const auto doc = tmp("doc.json"), one = tmp("one.json"), two = tmp("two.json"), svg = tmp("out.svg");
    REQUIRE(cli({"layout", data_path("communities.gml"), "--out", doc.string()}).code == 0);
    const auto c1 = cli({"cluster", doc.string(), "--nodes", "a0,a1,a2,a3", "--out", one.string()});
    REQUIRE(c1.code == 0);
    const auto d1 = nlohmann::json::parse(read_text(one.string()));
    CHECK(d1["clusters"].size() == 1);
    CHECK(cli({"cluster", one.string(), "--nodes", "a0"}).code == kExitInput);
    CHECK(cli({"cluster", one.string(), "--nodes", "zz"}).code == kExitInput);
    CHECK(cli({"cluster", one.string()}).code == kExitInput);

    const auto c2 = cli({"cluster", one.string(), "--nodes", "h7", "--out", two.string()});
    REQUIRE(c2.code == 0);
    const auto d2 = nlohmann::json::parse(read_text(two.string()));
    CHECK(d2["clusters"].size() == 2);
    CHECK(d2["clusters"][1]["arcs"].size() == 1);

    CHECK(cli({"collapse", two.string(), "--cluster", "1", "--out", one.string()}).code == 0);
    CHECK(cli({"render", one.string(), "--labels", "all", "--out", svg.string()}).code == 0);
    CHECK(read_text(svg.string()).find("cluster-node") != std::string::npos);
    CHECK(cli({"expand", two.string(), "--cluster", "1"}).code == kExitInput);
    CHECK(cli({"labels", two.string(), "--labels", "none", "--show", "a0"}).code == 0);
    CHECK(cli({"view", two.string(), "--zoom", "0.5", "--pan", "1,2"}).code == 0);
    CHECK(cli({"render", "-"}, "{}").code == kExitInput);
}

TEST_CASE("oracle chords are never worse than greedy")
{
    const auto doc = tmp("doc2.json");
    REQUIRE(cli({"layout", data_path("communities.gml"), "--out", doc.string()}).code == 0);
    const auto g = cli({"cluster", doc.string(), "--nodes", "b0,b1,b2,b3,b4", "--chords", "greedy"});
    const auto o = cli({"cluster", doc.string(), "--nodes", "b0,b1,b2,b3,b4", "--chords", "oracle"});
    REQUIRE(g.code == 0);
    REQUIRE(o.code == 0);
    const double ga = nlohmann::json::parse(g.out)["clusters"][0]["stats"]["alpha"];
    const double oa = nlohmann::json::parse(o.out)["clusters"][0]["stats"]["alpha"];
    CHECK(oa <= ga + 1e-12);
}

TEST_CASE("serve over stdio answers malformed frames and continues")
{
    std::string in;
    for (const std::string& m : {std::string("garbage"), std::string(R"({"command":"shutdown"})")})
        in += std::to_string(m.size()) + "\n" + m;
    const auto r = cli({"serve"}, in);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"error\"") != std::string::npos);
    CHECK(r.out.find("\"shutdown\"") != std::string::npos);
}
