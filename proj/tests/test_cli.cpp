// End-to-end checks against the installed binary: exit codes, determinism,
// and the documented file formats.

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef JEWELKIT_CLI
#error "JEWELKIT_CLI must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/jewelkit_cli_out.txt";
    std::string cmd = std::string(JEWELKIT_CLI) + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(rc), buf.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("cli: vertices of the truncated segment") {
    std::string rose2 = write_temp(
        "cli_rose2.json",
        R"({"vertices":[{"id":0}],"edges":[{"id":"l1","ends":[0,0]},{"id":"l2","ends":[0,0]}]})");
    RunResult r = run("jewel vertices --graph " + rose2 + " --N 12");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.dump() == R"([["1/4","3/4"],["3/4","1/4"]])");
}

TEST_CASE("cli: fixtures exit zero and reports are deterministic") {
    RunResult a = run("check figure1");
    RunResult b = run("check figure1");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    RunResult f3 = run("check figure3");
    CHECK(f3.exit_code == 0);
    auto j = nlohmann::json::parse(f3.out);
    CHECK(j["report"]["flagged_extra"].size() == 1);
}

TEST_CASE("cli: exit codes") {
    CHECK(run("frobnicate").exit_code == 2);  // usage
    std::string bad = write_temp("cli_bad.json", "{\"vertices\": [");
    CHECK(run("jewel faces --graph " + bad).exit_code == 2);  // malformed JSON
    std::string empty_graph = write_temp(
        "cli_empty.json", R"({"vertices":[{"id":0}],"edges":[]})");
    CHECK(run("jewel faces --graph " + empty_graph).exit_code == 2);  // precondition
}

TEST_CASE("cli: enumeration is independent of --jobs") {
    RunResult one = run("spheres enumerate --n 3 --core --incomplete --jobs 1");
    RunResult four = run("spheres enumerate --n 3 --core --incomplete --jobs 4");
    CHECK(one.exit_code == 0);
    CHECK(one.out == four.out);
    auto j = nlohmann::json::parse(one.out);
    for (const auto& cls : j) {
        CHECK(cls["core"] == true);
        CHECK(cls["complete"] == false);
    }

    RunResult qa = run("quotient-homology --n 3 --jobs 1");
    RunResult qb = run("quotient-homology --n 3 --jobs 3");
    CHECK(qa.exit_code == 0);
    CHECK(qa.out == qb.out);
}

TEST_CASE("cli: graph convert round-trip") {
    std::string path = write_temp(
        "cli_fig2.json",
        R"({"vertices":[{"id":0,"genus":1},{"id":1}],"edges":[{"id":"s2","ends":[0,1]},{"id":"s3","ends":[0,1]}]})");
    RunResult dot = run("graph convert --graph " + path + " --format dot");
    CHECK(dot.exit_code == 0);
    std::string dot_path = write_temp("cli_fig2.dot", dot.out);
    RunResult back = run("graph convert --graph " + dot_path + " --format dot");
    CHECK(back.out == dot.out);
    RunResult as_json = run("graph convert --graph " + dot_path + " --format json");
    auto j = nlohmann::json::parse(as_json.out);
    CHECK(j["vertices"][0]["genus"] == 1);
}

TEST_CASE("cli: jacobian with explicit lengths") {
    std::string theta = write_temp(
        "cli_theta.json",
        R"({"vertices":[{"id":0},{"id":1}],"edges":[{"id":"x1","ends":[0,1]},{"id":"x2","ends":[0,1]},{"id":"x3","ends":[0,1]}]})");
    std::string lens = write_temp("cli_lens.json",
                                  R"({"lengths":{"x1":"1/2","x2":"1/3","x3":"1/6"}})");
    RunResult r = run("jacobian --graph " + theta + " --lengths " + lens);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["positive_definite"] == true);
    CHECK(j["det"] == "11/36");  // ab + bc + ca for (1/2, 1/3, 1/6)
}

TEST_CASE("cli: homology of a stored complex") {
    std::string path = write_temp(
        "cli_sphere.json", R"({"maximal_faces":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]})");
    RunResult r = run("homology --complex " + path);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["groups"][2]["betti"] == 1);  // the 2-sphere
    CHECK(j["groups"][0]["betti"] == 0);
}
