#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gwp1/rational.hpp"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
    std::string cmd = env + (env.empty() ? "" : " ") + GWP1_CLI_PATH + std::string(" ") + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("invariant command") {
    auto r = run("invariant --g 0 --ins 0:1,0:1,0:1");
    CHECK(r.code == 0);
    CHECK(r.out == "1\nd = 1\n");
    r = run("invariant --g 0 --ins 1:0");
    CHECK(r.code == 0);
    CHECK(r.out == "-2\nd = 1\n");
    r = run("invariant --g 0 --ins 0:0,0:1");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("0\nd = 1/2", 0) == 0);
    CHECK(r.out.find("non-integer") != std::string::npos);
    r = run("invariant --g 2 --ins 0:1");
    CHECK(r.code == 0);
    CHECK(r.out.find("negative") != std::string::npos);
    r = run("invariant --g 1 --ins 0:1");
    CHECK(r.out == "-1/24\nd = 0\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("correlator --g 0 --n 2").code == 2);
    CHECK(run("correlator --g 0 --n 2").out.find("unstable; see gw02") != std::string::npos);
    CHECK(run("invariant --g 0 --ins 0:2").code == 2);
    CHECK(run("invariant --g 0 --ins zz").code == 2);
    CHECK(run("correlator --g 1").code == 2);
    CHECK(run("correlator --g 1 --n 1 --format xml").code == 2);
    CHECK(run("verify nothing").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("budget exhaustion exits with 3") {
    auto r = run("correlator --g 2 --n 2 --chi-max 3");
    CHECK(r.code == 3);
}

TEST_CASE("correlator output is identical across thread counts and round-trips") {
    auto a = run("correlator --g 1 --n 3 --threads 1");
    auto b = run("correlator --g 1 --n 3 --threads 4");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["g"] == 1);
    for (const auto& e : j["entries"]) {
        auto s = e["val"].get<std::string>();
        CHECK(gwp1::to_string(gwp1::parse_rational(s)) == s);
    }
    auto c = run("correlator --g 1 --n 3 --format csv");
    CHECK(c.out.rfind("k1,a1,k2,a2,k3,a3,value\n", 0) == 0);
}

TEST_CASE("cache directory and environment override") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(GWP1_TEST_TMP) / "cache";
    const fs::path env_dir = fs::path(GWP1_TEST_TMP) / "env_cache";
    fs::remove_all(GWP1_TEST_TMP);
    fs::create_directories(GWP1_TEST_TMP);
    auto a = run("correlator --g 1 --n 2 --cache-dir " + dir.string());
    CHECK(fs::exists(dir / "omega_g1_n2_chi6_v1.json"));
    auto b = run("correlator --g 1 --n 2 --cache-dir " + dir.string());
    CHECK(a.out == b.out);
    run("correlator --g 0 --n 4 --cache-dir " + dir.string(), "GWP1_CACHE=" + env_dir.string());
    CHECK(fs::exists(env_dir / "omega_g0_n4_chi6_v1.json"));
    CHECK_FALSE(fs::exists(dir / "omega_g0_n4_chi6_v1.json"));
}

TEST_CASE("output file") {
    namespace fs = std::filesystem;
    fs::create_directories(GWP1_TEST_TMP);
    const fs::path out = fs::path(GWP1_TEST_TMP) / "s.csv";
    CHECK(run("smatrix --b-max 3 --format csv --out " + out.string()).code == 0);
    CHECK(slurp(out) == "k,S00,S01,S10,S11\n0,1,0,0,1\n1,0,0,1,0\n2,-1,0,0,1\n3,0,-2,1/2,0\n");
    CHECK(run("smatrix --bmax 2").code == 0);
}

TEST_CASE("verify suites") {
    auto r = run("verify loop --chi-max 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("loop: PASS") != std::string::npos);
    r = run("verify tables");
    CHECK(r.code == 0);
    CHECK(r.out.find("expected-mismatch  printed L_m closed form") != std::string::npos);
    r = run("verify virasoro --g 1 --n 2 --b-max 3 --depth 2 --threads 2");
    CHECK(r.code == 0);
    r = run("verify virasoro --printed --g 0 --n 1 --b-max 2 --depth 2");
    CHECK(r.code == 1);
}
