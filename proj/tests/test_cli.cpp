#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(DSTAU_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("json output is byte-identical across runs") {
    for (std::string args : {"--format json derive", "--type A2_1 --format json omega", "--format json verify"}) {
        CAPTURE(args);
        Run a = run(args), b = run(args);
        CHECK(a.status == 0);
        CHECK_FALSE(a.out.empty());
        CHECK(a.out == b.out);
        CHECK_NOTHROW((void)nlohmann::json::parse(a.out));
    }
}

TEST_CASE("derive prints the translation flow") {
    Run r = run("--flows 1:0 derive");
    CHECK(r.status == 0);
    CHECK(r.out.find("u_t = -u_x") != std::string::npos);
    auto j = nlohmann::json::parse(run("--flows 1:0,1:1 --format json derive").out);
    CHECK(j["flows"].size() == 2);
    CHECK(j["flows"][0]["label"] == "1:0");
}

TEST_CASE("verify reports residuals and exit codes") {
    Run ok = run("--format json verify");
    CHECK(ok.status == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["residual_zero"] == true);

    // Negative control: a tampered Omega entry must be caught.
    Run bad = run("--format json verify --corrupt-omega '1,0;1,0'");
    CHECK(bad.status == 1);
    auto jb = nlohmann::json::parse(bad.out);
    CHECK(jb["residual_zero"] == false);
}

TEST_CASE("configuration errors exit with 2") {
    CHECK(run("--type B2_1 derive").status == 2);
    CHECK(run("--flows 1:x derive").status == 2);
    CHECK(run("--flows 3:0 derive").status == 2);
    CHECK(run("--depth 2 --flows 1:1 omega").status == 2);
    CHECK(run("--format yaml derive").status == 2);
    CHECK(run("--lambda-window 5:1 derive").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("--config /nonexistent/dstau.conf derive").status == 2);
}

TEST_CASE("computation errors exit with 3") {
    CHECK(run("--eps-order 2 --jet-depth 0 discrete").status == 3);
}

TEST_CASE("config file mirrors the long flags") {
    auto p = temp_file("dstau_test.conf", "type = A2_1\nformat = json\nflows = 2:0\n");
    Run r = run("--config " + p.string() + " derive");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["type"] == "A2_1");
    CHECK(j["flows"].size() == 1);
    // Flags override the file.
    Run o = run("--config " + p.string() + " --format text derive");
    CHECK(o.status == 0);
    CHECK_THROWS((void)nlohmann::json::parse(o.out));
    std::filesystem::remove(p);
}

TEST_CASE("discrete subcommand reads tuples from JSON") {
    auto p = temp_file("dstau_tuple.json",
                       R"({"tuple":[{"components":[{"eps":0,"terms":[{"coeff":"2","monomial":[[1,0,1]]}]}]}]})");
    Run r = run("--eps-order 2 --format json discrete --input " + p.string());
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["residual_zero"] == true);
    CHECK(j["pair"]["inverse"][0]["side"] == "v");
    CHECK(j["pair"]["inverse"][0]["components"][0]["terms"][0]["coeff"] == "1/2");
    std::filesystem::remove(p);
}
