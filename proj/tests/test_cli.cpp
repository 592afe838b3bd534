#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decomp/cli.hpp"
#include "decomp/gallery.hpp"
#include "decomp/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace decomp;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int rc = run_cli(args, o, e);
    return {rc, o.str(), e.str()};
}

Json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    auto r = run(args);
    REQUIRE(r.rc == 0);
    return Json::parse(r.out);
}

std::string tmpfile(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("decomp_cli_" + name);
    std::ofstream(p) << content;
    return p.string();
}

}  // namespace

TEST_CASE("list: names with descriptions, JSON array") {
    auto r = run({"list"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("forests") != std::string::npos);
    CHECK(r.out.find("Connes-Kreimer") != std::string::npos);
    auto j = run_json({"list"});
    CHECK(j.is_array());
    CHECK(j.size() >= 10);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"frobnicate"}).rc == 2);
    CHECK(run({}).rc == 2);
    CHECK(run({"check"}).rc == 2);
    CHECK(run({"check", "no-such-space"}).rc == 2);
    CHECK(run({"--format", "xml", "list"}).rc == 2);
    CHECK(run({"mu", "binomial", "--connected"}).rc == 2);
}

TEST_CASE("check: forests are a decomposition space but not Segal; binomial passes all") {
    auto f = run_json({"check", "forests", "--n", "3"});
    CHECK(f["results"]["decompositionSpace"] == true);
    CHECK(f["results"]["segalSpace"] == false);
    auto b = run_json({"check", "binomial", "--n", "3"});
    CHECK(b["results"]["segalSpace"] == true);
    CHECK(b["results"]["pass"] == true);
    auto t = run({"check", "forests", "--n", "3"});
    CHECK(t.out.find("segal          ✗") != std::string::npos);
    CHECK(t.out.find("decomposition  ✓") != std::string::npos);
}

TEST_CASE("check: oracle-only spaces exit 3, corrupted files exit nonzero, junk exits 4") {
    CHECK(run({"check", "natplus"}).rc == 3);
    auto bad = tmpfile("bad.json", tsg_to_json(corrupted_poset_nerve(3)).dump());
    CHECK(run({"check", bad}).rc == 1);
    auto junk = tmpfile("junk.json", "{\"levels\": [");
    CHECK(run({"check", junk}).rc == 4);
}

TEST_CASE("check on a dumped and reloaded TSG gives the same report") {
    auto d = run({"dump", "surjections", "--n", "2", "--K", "3", "--what", "tsg"});
    REQUIRE(d.rc == 0);
    auto path = tmpfile("surj.json", d.out);
    auto a = run_json({"check", path});
    auto b = run_json({"check", "surjections", "--n", "2", "--K", "3"});
    CHECK(a["results"] == b["results"]);
}

TEST_CASE("delta: binomial and graphs") {
    auto b = run_json({"delta", "binomial", "--n", "3", "--arrow", "2"});
    auto& t = b["results"]["terms"];
    REQUIRE(t.size() == 3);
    CHECK(t[1] == Json::array({"1", "1", "2/1"}));
    auto g = run_json({"delta", "graphs", "--n", "3", "--arrow", "K2"});
    CHECK(g["results"]["arrow"] == "g2:01");
    CHECK(g["results"]["terms"].size() == 3);
    // degenerate class: counit-like single term
    auto u = run_json({"delta", "binomial", "--n", "3", "--arrow", "0"});
    CHECK(u["results"]["terms"] == Json::array({Json::array({"0", "0", "1/1"})}));
    CHECK(run({"delta", "binomial", "--arrow", "7"}).rc == 5);
}

TEST_CASE("delta on an unsafe class exits 6") {
    auto j = oracle_to_json(nat_plus_oracle(3));
    j["classes"][2]["safe"] = false;
    auto path = tmpfile("unsafe.json", j.dump());
    CHECK(run({"delta", path, "--arrow", "3"}).rc == 6);
    CHECK(run({"delta", path, "--arrow", "1"}).rc == 0);
}

TEST_CASE("mu: q-vector spaces, divisibility, connected surjections") {
    auto q = run_json({"mu", "qvect", "--q", "2", "--n", "3"});
    std::vector<std::string> mu;
    for (auto& c : q["results"]["classes"]) mu.push_back(c["mu"]);
    CHECK(mu == std::vector<std::string>{"1/1", "-1/1", "2/1", "-8/1"});
    CHECK(q["results"]["agree"] == true);
    CHECK(q["results"]["inverse"] == true);

    auto d = run_json({"mu", "divisibility", "--bound", "12"});
    std::vector<std::string> dm;
    for (auto& c : d["results"]["classes"]) dm.push_back(c["mu"]);
    CHECK(dm == std::vector<std::string>{"1/1", "-1/1", "-1/1", "0/1", "-1/1", "1/1", "-1/1", "0/1", "0/1", "1/1", "-1/1", "0/1"});

    auto s = run_json({"mu", "surjections", "--n", "3", "--connected"});
    REQUIRE(s["results"]["classes"].size() == 3);
    CHECK(s["results"]["classes"][2]["id"] == "3->1:3");
    CHECK(s["results"]["classes"][2]["mu"] == "2/1");
}

TEST_CASE("mu with too small rmax exits 7 and names the classes") {
    auto r = run({"mu", "binomial", "--n", "4", "--rmax", "3"});
    CHECK(r.rc == 7);
    CHECK(r.err.find("3, 4") != std::string::npos);
}

TEST_CASE("convolve, length, zetapoly") {
    auto c = run_json({"convolve", "natplus", "--bound", "8", "zeta", "zeta"});
    CHECK(c["results"]["values"]["3"] == "4/1");
    auto e = run_json({"convolve", "binomial", "zeta", "mu"});
    for (auto& [k, v] : e["results"]["values"].items()) CHECK(v == (k == "0" ? "1/1" : "0/1"));
    auto fpath = tmpfile("fn.json", R"({"1":"1/2","2":"1/1"})");
    auto f = run_json({"convolve", "natplus", "--bound", "3", fpath, "zeta", "--arrow", "2"});
    CHECK(f["results"]["values"]["2"] == "3/2");

    auto l = run_json({"length", "nongraded"});
    CHECK(l["results"]["lengths"]["b<=t"] == 3);

    auto z = run_json({"zetapoly", "binomial", "--n", "3", "--arrow", "2", "--rmax", "5"});
    CHECK(z["results"]["coefficients"] == Json::array({"0/1", "0/1", "1/1"}));
    CHECK(z["results"]["atMinusOne"] == "1/1");
    auto zt = run({"zetapoly", "binomial", "--n", "3", "--arrow", "2", "--rmax", "5"});
    CHECK(zt.out.find("r^2") != std::string::npos);
}

TEST_CASE("verify: forests pass everything including the cherry fixture") {
    auto r = run_json({"verify", "forests", "--n", "3", "--jobs", "2"});
    CHECK(r["results"]["pass"] == true);
    bool cherry = false;
    for (auto& c : r["results"]["checks"])
        if (c["check"] == "cherry: 5-point cut fibre") cherry = c["pass"];
    CHECK(cherry);
    CHECK(run({"verify", "qvect", "--q", "2", "--n", "3"}).rc == 0);
    CHECK(run({"verify", "divisibility"}).rc == 0);
}

TEST_CASE("determinism: identical invocations give identical JSON, jobs do not matter") {
    auto a = run({"--format", "json", "mu", "surjections", "--n", "3"});
    auto b = run({"--format", "json", "mu", "surjections", "--n", "3", "--jobs", "3"});
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("DECOMP_CACHE_DIR memoizes constructor output without changing reports") {
    auto dir = std::filesystem::temp_directory_path() / "decomp_cli_cache";
    std::filesystem::remove_all(dir);
    auto plain = run({"--format", "json", "check", "binomial", "--n", "2", "--K", "3"});
    setenv("DECOMP_CACHE_DIR", dir.c_str(), 1);
    auto first = run({"--format", "json", "check", "binomial", "--n", "2", "--K", "3"});
    auto second = run({"--format", "json", "check", "binomial", "--n", "2", "--K", "3"});
    auto m1 = run({"--format", "json", "mu", "qvect", "--n", "2"});
    auto m2 = run({"--format", "json", "mu", "qvect", "--n", "2"});
    unsetenv("DECOMP_CACHE_DIR");
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 2);
    CHECK(first.out == plain.out);
    CHECK(second.out == plain.out);
    CHECK(m1.out == m2.out);
    std::filesystem::remove_all(dir);
}
