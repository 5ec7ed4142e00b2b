#include <filesystem>

#include "doctest.h"
#include "gwp1/serialize.hpp"
#include "json.hpp"

using namespace gwp1;

TEST_CASE("tensor JSON round-trip") {
    Engine e;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 3}, {2, 2}}) {
        auto t = e.correlator(g, n);
        auto back = tensor_from_json(tensor_to_json(g, *t));
        CHECK(back.g == g);
        CHECK(back.n == n);
        REQUIRE(back.tensor.size() == t->size());
        bool same = true;
        for (std::size_t i = 0; i < t->size(); ++i) same = same && back.tensor[i] == (*t)[i];
        CHECK(same);
    }
}

TEST_CASE("every printed rational parses back") {
    Engine e;
    auto t = e.correlator(2, 2);
    auto j = nlohmann::json::parse(tensor_to_json(2, *t));
    std::size_t count = 0;
    for (const auto& entry : j["entries"]) {
        auto idx = entry["idx"];
        std::vector<XiIndex> ix;
        for (const auto& p : idx) ix.push_back({p[0].get<int>(), p[1].get<int>()});
        CHECK(parse_rational(entry["val"].get<std::string>()) == t->get(ix));
        ++count;
    }
    CHECK(count == t->nnz());
}

TEST_CASE("malformed tensor JSON is rejected") {
    CHECK_THROWS(tensor_from_json("{}"));
    CHECK_THROWS(tensor_from_json(R"({"g":0,"n":3,"entries":[{"idx":[[0,0]],"val":"1"}]})"));
    CHECK_THROWS(tensor_from_json(R"({"g":0,"n":3,"entries":[{"idx":[[0,0],[0,0],[0,1]],"val":"x"}]})"));
}

TEST_CASE("CSV has one line per nonzero entry") {
    Engine e;
    auto t = e.correlator(1, 1);
    CHECK(tensor_to_csv(1, *t) == "k1,a1,value\n0,1,-1/24\n1,0,1/12\n");
}

TEST_CASE("S dump") {
    auto j = nlohmann::json::parse(smatrix_to_json(3));
    REQUIRE(j.size() == 4);
    CHECK(j[3]["S"][0][1] == "-2");
    CHECK(j[3]["S"][1][0] == "1/2");
}

TEST_CASE("correlator cache") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gwp1_cache_test";
    fs::remove_all(dir);
    CorrelatorCache cache(dir.string());
    Engine a;
    a.correlator(1, 2);
    cache.save(a, 1, 2);
    CHECK(fs::exists(cache.path(1, 2, a.budget())));
    Engine b;
    CHECK(cache.load(b, 1, 2));
    CHECK(b.cached(1, 2));
    CHECK_FALSE(cache.load(b, 2, 1));
    CHECK(tensor_to_json(1, *b.correlator(1, 2)) == tensor_to_json(1, *a.correlator(1, 2)));
    // another budget is another key
    Engine c(RecursionBudget{4, 1});
    CHECK_FALSE(cache.load(c, 1, 2));
    fs::remove_all(dir);
}
