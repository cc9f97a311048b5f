#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ttr/linear_order.hpp"
#include "oracles.hpp"

using ttr::LinearOrder;

TEST_CASE("construction validates permutations") {
    CHECK_NOTHROW(LinearOrder({2, 0, 1}));
    CHECK_THROWS_AS(LinearOrder({}), ttr::InvalidInputError);
    CHECK_THROWS_AS(LinearOrder({0, 0, 2}), ttr::InvalidInputError);
    CHECK_THROWS_AS(LinearOrder({0, 3}), ttr::InvalidInputError);
    CHECK_THROWS_AS(LinearOrder({-1, 0}), ttr::InvalidInputError);
    CHECK_THROWS_WITH_AS(LinearOrder({0, 0, 2}), doctest::Contains("duplicate"),
                         ttr::InvalidInputError);
}

TEST_CASE("positions and ranks are inverse views") {
    const LinearOrder order({2, 0, 1});
    CHECK(order.size() == 3);
    CHECK(order.at(0) == 2);
    CHECK(order.at(2) == 1);
    CHECK(order.position_of(2) == 0);
    CHECK(order.position_of(1) == 2);
    CHECK(order.rank_of(2) == 1);
    CHECK(order.rank_of(0) == 2);
    CHECK(ttr::rank_of(order, 1) == 3);
    CHECK_THROWS_AS(order.at(3), ttr::InvalidInputError);
    CHECK_THROWS_AS(order.position_of(5), ttr::InvalidInputError);

    const LinearOrder id = LinearOrder::identity(4);
    for (int a = 0; a < 4; ++a) CHECK(id.rank_of(a) == a + 1);
}

TEST_CASE("reversal and comparison") {
    const LinearOrder order({2, 0, 1});
    CHECK(order.reversed() == LinearOrder({1, 0, 2}));
    CHECK(order != order.reversed());
    CHECK(LinearOrder({0, 1, 2}) < LinearOrder({0, 2, 1}));
    CHECK(ttr::to_string(order) == "2,0,1");
}

TEST_CASE("kendall tau matches the pair-scan definition") {
    const LinearOrder id = LinearOrder::identity(4);
    CHECK(ttr::kendall_tau(id, id) == 0);
    CHECK(ttr::kendall_tau(id, id.reversed()) == 6);
    CHECK(ttr::kendall_tau(LinearOrder({3, 2, 0, 1}), id) == 5);

    ttr::RandomSource rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 1 + rng.uniform_int(12);
        const LinearOrder a = ttr::random_order(m, rng);
        const LinearOrder b = ttr::random_order(m, rng);
        const long long d = ttr::kendall_tau(a, b);
        CHECK(d == oracle::kendall_tau_pairs(a, b));
        CHECK(d == ttr::kendall_tau(b, a));
        CHECK(d <= static_cast<long long>(m) * (m - 1) / 2);
    }
    CHECK_THROWS_AS(ttr::kendall_tau(id, LinearOrder({0, 1})), ttr::InvalidInputError);
}

TEST_CASE("prefix sets") {
    const LinearOrder order({3, 1, 0, 2});
    const ttr::PrefixSet top2 = ttr::prefix(order, 2);
    CHECK(top2.size() == 2);
    CHECK(top2.contains(3));
    CHECK(top2.contains(1));
    CHECK_FALSE(top2.contains(0));
    CHECK(top2.members() == std::vector<int>{1, 3});

    CHECK(ttr::prefix(order, 0).members().empty());
    CHECK(ttr::prefix(order, 4).contains(2));
    CHECK_THROWS_AS(ttr::prefix(order, 5), ttr::InvalidInputError);
    CHECK_THROWS_AS(ttr::prefix(order, -1), ttr::InvalidInputError);
    CHECK_THROWS_AS(top2.contains(9), ttr::InvalidInputError);
}

TEST_CASE("order enumeration is lexicographic and capped") {
    const auto orders = ttr::all_orders(3);
    REQUIRE(orders.size() == 6);
    CHECK(orders.front() == LinearOrder({0, 1, 2}));
    CHECK(orders.back() == LinearOrder({2, 1, 0}));
    CHECK(std::is_sorted(orders.begin(), orders.end()));
    CHECK_THROWS_AS(ttr::all_orders(10), ttr::ResourceLimitError);
    CHECK_NOTHROW(ttr::all_orders(10, 10));
}

TEST_CASE("random orders are reproducible valid permutations") {
    ttr::RandomSource a(99), b(99), c(100);
    const LinearOrder first = ttr::random_order(8, a);
    CHECK(first == ttr::random_order(8, b));
    CHECK(first != ttr::random_order(8, c));  // equal only with probability 1/8!

    // Every alternative appears exactly once, across many draws.
    ttr::RandomSource rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const LinearOrder order = ttr::random_order(6, rng);
        std::set<int> seen(order.items().begin(), order.items().end());
        CHECK(seen.size() == 6);
    }

    // All 6 orders of m = 3 show up at roughly uniform frequency.
    ttr::RandomSource census_rng(123);
    std::map<std::string, int> census;
    const int draws = 6000;
    for (int i = 0; i < draws; ++i)
        ++census[ttr::to_string(ttr::random_order(3, census_rng))];
    REQUIRE(census.size() == 6);
    for (const auto& [key, count] : census) {
        CAPTURE(key);
        CHECK(count > 800);
        CHECK(count < 1200);
    }
}
