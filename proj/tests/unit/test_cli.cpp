#include "archlab/cli.hpp"
#include "archlab/io.hpp"
#include "archlab/measures.hpp"

#include "support.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace archlab;
using namespace archlab::test;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "archlab_cli_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string write(const std::string& name, const std::string& text) {
    const std::string path = scratch(name);
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

} // namespace

TEST_CASE("measures prints an aligned table") {
    const std::string td = write("td.arch", serialize(fixture(Family::Td)));
    const Result r = run({"measures", td});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("d_r             2\n") != std::string::npos);
    CHECK(r.out.find("d_f             3\n") != std::string::npos);
    CHECK(r.out.find("s               1\n") != std::string::npos);
}

TEST_CASE("fixture then measures --json") {
    const std::string path = scratch("s21.arch");
    CHECK(run({"fixture", "--family", "skip", "--k", "21", "-o", path}).code == cli::kExitOk);
    const Result r = run({"measures", path, "--json"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("\"skip_coefficient\": \"21\"") != std::string::npos);
    const json j = json::parse(r.out);
    CHECK(j["skip_reciprocal"] == "1/21");
    CHECK(j["orientation"] == "positive");
    CHECK(run({"--json", "measures", path}).out == r.out);
}

TEST_CASE("json key order is fixed") {
    const std::string sh = write("sh.arch", serialize(fixture(Family::Sh)));
    const std::string out = run({"--json", "measures", sh}).out;
    const std::vector<std::string> keys{"orientation", "minimal_period", "recurrent_depth", "feedforward_depth",
                                        "skip_coefficient", "skip_reciprocal"};
    std::size_t last = 0;
    for (const std::string& k : keys) {
        const std::size_t at = out.find("\"" + k + "\"");
        REQUIRE(at != std::string::npos);
        CHECK(at > last);
        last = at;
    }
}

TEST_CASE("validate exit codes") {
    const std::string bad = write("bad.arch", "version 1\nperiod 1\n"
                                              "node input 0 x\nnode hidden 0 A\nnode hidden 0 B\nnode output 0 y\n"
                                              "edge x@0 -> A@0 : 0\nedge A@0 -> B@0 : 1\nedge B@0 -> A@0 : -1\n"
                                              "edge B@0 -> y@0 : 0\n");
    const Result r = run({"validate", bad});
    CHECK(r.code == cli::kExitDomainError);
    CHECK(r.out.find("CONDITION3") != std::string::npos);
    const Result j = run({"validate", bad, "--json"});
    CHECK(json::parse(j.out)["violations"][0]["code"] == "CONDITION3");

    const Result ok = run({"validate", write("sh.arch", serialize(fixture(Family::Sh)))});
    CHECK(ok.code == cli::kExitOk);
    CHECK(ok.out == "valid\n");

    const Result m = run({"measures", bad});
    CHECK(m.code == cli::kExitDomainError);
    CHECK(m.err.find("error[INVALID_GRAPH]") == 0);
}

TEST_CASE("usage and parse errors exit with two") {
    CHECK(run({}).code == cli::kExitUsageError);
    CHECK(run({"frobnicate"}).code == cli::kExitUsageError);
    CHECK(run({"measures"}).code == cli::kExitUsageError);
    CHECK(run({"measures", scratch("does-not-exist.arch")}).code == cli::kExitUsageError);
    const Result p = run({"measures", write("broken.arch", "version 1\nperiod 1\nedge a@0 -> b@0 : 0\n")});
    CHECK(p.code == cli::kExitUsageError);
    CHECK(p.err.find("error[UNKNOWN_NODE_REFERENCE]") == 0);
    CHECK(run({"fixture", "--family", "skip", "--k", "1"}).code == cli::kExitUsageError);
    CHECK(run({"fixture", "--family", "nope"}).code == cli::kExitUsageError);
    CHECK(run({"exec", write("sh2.arch", serialize(fixture(Family::Sh))), "--steps", "3", "--cell", "gru"}).code ==
          cli::kExitUsageError);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("bidirectional graphs are reported per component") {
    const std::string path = write("bi.arch", serialize(fixture(Family::Bidirectional)));
    const Result r = run({"measures", path, "--json"});
    CHECK(r.code == cli::kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["orientation"] == "bidirectional");
    CHECK(j["components"].size() == 2);
    CHECK(run({"converge", path}).code == cli::kExitDomainError);
}

TEST_CASE("unfold, converge, exec, sensitivity and export-dot") {
    const std::string sh = write("sh3.arch", serialize(fixture(Family::Sh)));
    const std::string dot = scratch("sh_window.dot");
    const Result u = run({"--json", "unfold", sh, "--from", "0", "--to", "3", "--dot", dot});
    CHECK(u.code == cli::kExitOk);
    const json uj = json::parse(u.out);
    CHECK(uj["nodes"].size() == 9);
    CHECK(uj["edges"].size() == 8);
    CHECK(uj["acyclic"] == true);
    CHECK(std::filesystem::exists(dot));
    CHECK(run({"unfold", sh, "--from", "3", "--to", "3"}).code == cli::kExitUsageError);

    const Result c = run({"converge", sh, "--json"});
    CHECK(c.code == cli::kExitOk);
    const json cj = json::parse(c.out);
    CHECK(cj["max_n"] == 64);
    CHECK(cj["slope_longest"] == "1");
    CHECK(cj["df_max"] == "2");
    CHECK(cj["agrees_with_closed_form"] == true);
    CHECK(json::parse(run({"converge", sh, "--json", "--max-n", "30"}).out)["max_n"] == 30);

    const Result e = run({"exec", sh, "--steps", "4", "--cell", "mdlstm", "--hidden", "2", "--json"});
    CHECK(e.code == cli::kExitOk);
    const json ej = json::parse(e.out);
    CHECK(ej["states"].size() == 12);
    CHECK(ej["states"][0]["hidden"].size() == 2);
    CHECK(run({"exec", sh, "--steps", "4", "--seed", "3"}).out == run({"--seed", "3", "exec", sh, "--steps", "4"}).out);

    const Result s = run({"sensitivity", sh, "--horizon", "8", "--json"});
    CHECK(s.code == cli::kExitOk);
    CHECK(json::parse(s.out)["matches_reachability"] == true);

    const Result d = run({"export-dot", write("td2.arch", serialize(fixture(Family::Td))), "--report"});
    CHECK(d.code == cli::kExitOk);
    CHECK(d.out.find("digraph cyclic") == 0);
    CHECK(d.out.find("red") != std::string::npos);
}

TEST_CASE("cli output mirrors direct library calls") {
    std::mt19937_64 rng(0);
    RandomGraphOptions options = unidirectional_options();
    const CyclicGraph g = random_valid_graph(rng, options);
    const Result r = run({"--seed", "0", "fixture", "--family", "random"});
    CHECK(r.out == serialize(g));
    const std::string path = write("random.arch", r.out);
    const json j = json::parse(run({"measures", path, "--json"}).out);
    const MeasureReport m = measure(g);
    CHECK(j["recurrent_depth"] == m.recurrent_depth.to_string());
    CHECK(j["feedforward_depth"] == m.feedforward_depth.to_string());
    CHECK(j["skip_coefficient"] == m.skip_coefficient.to_string());
}

TEST_CASE("cycle budget comes from the environment") {
    const std::string td = write("td3.arch", serialize(fixture(Family::Td)));
    ::setenv("ARCHLAB_CYCLE_BUDGET", "2", 1);
    const Result r = run({"measures", td});
    ::unsetenv("ARCHLAB_CYCLE_BUDGET");
    CHECK(r.code == cli::kExitDomainError);
    CHECK(r.err.find("error[CYCLE_BUDGET_EXCEEDED]") == 0);
    CHECK(run({"measures", td}).code == cli::kExitOk);
}
