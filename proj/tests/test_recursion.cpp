#include "doctest.h"
#include "gwp1/recursion.hpp"

using namespace gwp1;

namespace {

XiTensor corrupted_copy(const XiTensor& t) {
    XiTensor c = t;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!is_zero(c[i])) {
            // change every permutation of the entry so symmetry survives
            auto codes = c.codes_of(i);
            std::sort(codes.begin(), codes.end());
            do {
                c[c.flat(codes)] += frac(1, 3);
            } while (std::next_permutation(codes.begin(), codes.end()));
            break;
        }
    return c;
}

}  // namespace

TEST_CASE("omega_{0,3}") {
    Engine e;
    auto t = e.correlator(0, 3);
    CHECK(t->is_symmetric());
    CHECK(t->nnz() == 4);
    CHECK(t->get({{0, 0}, {0, 0}, {0, 1}}) == 1);
    CHECK(t->get({{0, 1}, {0, 0}, {0, 0}}) == 1);
    CHECK(t->get({{0, 1}, {0, 1}, {0, 1}}) == 1);
    CHECK(t->get({{0, 0}, {0, 0}, {0, 0}}) == 0);
}

TEST_CASE("omega_{1,1}") {
    Engine e;
    auto t = e.correlator(1, 1);
    CHECK(t->nnz() == 2);
    CHECK(t->get({{0, 1}}) == frac(-1, 24));
    CHECK(t->get({{1, 0}}) == frac(1, 12));
}

TEST_CASE("correlators are symmetric and respect the degree selection") {
    Engine e;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {0, 5}, {1, 2}, {1, 3}, {2, 1}, {2, 2}}) {
        auto t = e.correlator(g, n);
        CHECK(t->is_symmetric());
        CHECK(t->kmax() == max_k(g, n));
        for (auto& [idx, v] : t->entries()) CHECK(degree_allowed(g, idx));
    }
}

TEST_CASE("budget exhaustion is reported") {
    Engine e(RecursionBudget{2, 1});
    CHECK_NOTHROW(e.correlator(1, 2));
    CHECK_THROWS_AS(e.correlator(2, 1), BudgetExhausted);
    CHECK_THROWS_AS(e.correlator(0, 5), BudgetExhausted);
}

TEST_CASE("unstable requests are refused") {
    Engine e;
    CHECK_THROWS_AS(e.correlator(0, 2), DomainError);
    CHECK_THROWS_AS(e.correlator(1, 0), DomainError);
}

TEST_CASE("results do not depend on the thread count") {
    Engine a(RecursionBudget{5, 1}), b(RecursionBudget{5, 4});
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 6}, {1, 4}, {2, 2}, {2, 3}}) {
        auto ta = a.correlator(g, n), tb = b.correlator(g, n);
        REQUIRE(ta->size() == tb->size());
        bool same = true;
        for (std::size_t i = 0; i < ta->size(); ++i) same = same && (*ta)[i] == (*tb)[i];
        CHECK(same);
    }
}

TEST_CASE("loop equations hold for 2g - 2 + n <= 3") {
    CHECK(check_linear_loop_bergman().pass);
    Engine e;
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; 2 * g - 2 + n <= 3; ++n) {
            if (!is_stable(g, n)) continue;
            CAPTURE(g);
            CAPTURE(n);
            CHECK(check_linear_loop(e, g, n).pass);
            CHECK(check_quadratic_loop(e, g, n).pass);
        }
}

TEST_CASE("a corrupted coefficient breaks the quadratic loop equation") {
    Engine e;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {0, 4}}) {
        XiTensor bad = corrupted_copy(*e.correlator(g, n));
        CHECK_FALSE(check_quadratic_loop(e, g, n, &bad).pass);
    }
}

TEST_CASE("stationary expansion of low correlators") {
    Engine e;
    CHECK(stationary_expansion_check(e, 0, 3, 4).pass);
    CHECK(stationary_expansion_check(e, 1, 1, 4).pass);
    CHECK(stationary_expansion_check(e, 1, 2, 4).pass);
}
