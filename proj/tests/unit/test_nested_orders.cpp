#include "support.hpp"

#include <nestord/errors.hpp>
#include <nestord/fprec.hpp>
#include <nestord/nested_orders.hpp>
#include <nestord/representability.hpp>
#include <nestord/serialize.hpp>

#include <doctest.h>

using namespace nestord;
using test_support::fam;

namespace {

auto orders_of(std::initializer_list<const char *> digits) -> std::vector<LinearOrder>
{
    std::vector<LinearOrder> out;
    for (const char * d : digits)
        out.push_back(LinearOrder::parse(d));
    return out;
}

/// All intersections of one initial segment per order.
auto segment_family(const std::vector<LinearOrder> & orders) -> Family
{
    const int m = orders.front().size();
    std::vector<Mask> sets;
    std::vector<int> pos(orders.size(), 0);
    while (true) {
        Mask a = full_mask(m);
        for (std::size_t j = 0; j < orders.size(); ++j)
            a &= initial_segment(orders[j], orders[j].at(pos[j]));
        sets.push_back(a);
        std::size_t j = 0;
        while (j < pos.size() && ++pos[j] == m)
            pos[j++] = 0;
        if (j == pos.size())
            break;
    }
    return Family(m, sets);
}

} // namespace

TEST_SUITE("nested_orders")
{
    TEST_CASE("trie storage")
    {
        NestedOrders s(3, 1);
        s.insert(Seq{2, 1});
        CHECK(s.contains(Seq{2, 1}));
        CHECK_FALSE(s.contains(Seq{2}));
        CHECK(s.contains(Seq{}));
        CHECK(s.extensions(Seq{2}) == bit(1));
        CHECK(s.size() == 1);
        CHECK(s.erase(Seq{2, 1}));
        CHECK_FALSE(s.erase(Seq{2, 1}));
        CHECK_THROWS_AS(s.insert(Seq{4}), PreconditionError);
    }

    TEST_CASE("validate: the two-order family S[<] on 5 points passes at n = 1")
    {
        const auto s = sprec(PrecOrder::usual(5));
        const auto r = validate(s, 1);
        CHECK(r.valid());
        CHECK(r.valid_through_n());
    }

    TEST_CASE("validate: forced violations are reported with witnesses")
    {
        auto s = sprec(PrecOrder::usual(5));
        auto missing = s;
        missing.erase(Seq{3});
        const auto r1 = validate(missing, 1);
        CHECK_FALSE(r1.singletons.pass);
        CHECK(r1.singletons.witness == std::vector<Seq>{{3}});

        // (3,2,1) stays while its prefix (3,2) goes.
        auto broken = s;
        REQUIRE(broken.contains(Seq{3, 2, 1}));
        broken.erase(Seq{3, 2});
        CHECK_FALSE(validate(broken, 1).closed.pass);

        NestedOrders dup(3, 1);
        for (Element t = 1; t <= 3; ++t)
            dup.insert(Seq{t});
        dup.insert(Seq{2, 2});
        CHECK_FALSE(validate(dup, 1).distinct.pass);

        NestedOrders too_long = s;
        too_long.insert(Seq{5, 4, 3, 2});
        CHECK_FALSE(validate(too_long, 1).length_bound.pass);
    }

    TEST_CASE("validate: comparability is reported per prefix length")
    {
        // Only singletons: n = 0 literal reading passes, through-n reading fails at k = 0.
        NestedOrders s(3, 0);
        for (Element t = 1; t <= 3; ++t)
            s.insert(Seq{t});
        const auto r = validate(s, 0);
        CHECK(r.valid());
        CHECK_FALSE(r.valid_through_n());
        REQUIRE(r.comparable.size() == 1);
        CHECK_FALSE(r.comparable[0].pass);
    }

    TEST_CASE("family_of: intervals from the usual order and its reverse")
    {
        const auto s = nested_from_orders(orders_of({"123", "321"}));
        CHECK(family_of(s, 1) == families::intervals(3));
        CHECK(family_of(s, -1) == fam("3: 123"));
    }

    TEST_CASE("nested_from_orders: membership follows the order conditions")
    {
        const auto s = nested_from_orders(orders_of({"123", "321"}));
        CHECK(s.nesting() == 1);
        CHECK(s.contains(Seq{3, 1, 2}));
        CHECK(s.contains(Seq{3, 2}));
        CHECK_FALSE(s.contains(Seq{1, 2}));
        CHECK_FALSE(s.contains(Seq{3, 2, 1}));

        const auto single = nested_from_orders(orders_of({"12"}));
        CHECK(single.sequences() == std::vector<Seq>{{1}, {2}, {2, 1}});
        CHECK(single.nesting() == 0);
    }

    TEST_CASE("segment intersections lie in the nested family: exhaustive m <= 4, up to 3 orders")
    {
        for (int m = 1; m <= 4; ++m) {
            const auto all = all_orders(m);
            for (std::size_t i = 0; i < all.size(); ++i) {
                std::vector<LinearOrder> one{all[i]};
                REQUIRE(is_subfamily(segment_family(one), family_of(nested_from_orders(one), 0)));
                for (std::size_t j = 0; j < all.size(); ++j) {
                    std::vector<LinearOrder> two{all[i], all[j]};
                    const auto s2 = nested_from_orders(two);
                    REQUIRE(validate(s2, 1).valid_through_n());
                    REQUIRE(is_subfamily(segment_family(two), family_of(s2, 1)));
                    if (m > 3 && j % 5 != 0)
                        continue;
                    for (const auto & third : all) {
                        std::vector<LinearOrder> three{all[i], all[j], third};
                        REQUIRE(is_subfamily(segment_family(three), family_of(nested_from_orders(three), 2)));
                    }
                }
            }
        }
    }

    TEST_CASE("extend keeps prefixes and grows the family")
    {
        const auto s = sprec(PrecOrder::usual(5));
        const auto e = extend(s, 1);
        CHECK(e.nesting() == 2);
        CHECK(validate(e, 2).valid_through_n());
        for (int len = 1; len <= 3; ++len)
            CHECK(e.sequences_of_length(len) == s.sequences_of_length(len));
        CHECK(is_subfamily(family_of(s, 1), family_of(e, 2)));

        // Full depth already: only the nesting label changes.
        const auto full = nested_from_orders(orders_of({"12", "21"}));
        auto relabelled = full;
        relabelled.set_nesting(2);
        CHECK(extend(full, 1) == relabelled);

        NestedOrders bad(2, 0);
        bad.insert(Seq{1});
        CHECK_THROWS_AS(extend(bad, 0), PreconditionError);
    }

    TEST_CASE("extend property: exhaustive over order trees m <= 4, n <= 2")
    {
        for (int m = 1; m <= 4; ++m)
            for (int n = 0; n <= 2; ++n)
                for_each_order_tree(m, n, [&](const OrderTree & t) {
                    const auto s = to_nested(t);
                    const auto e = extend(s, n);
                    REQUIRE(validate(e, n + 1).valid_through_n());
                    REQUIRE(is_subfamily(family_of(s, n), family_of(e, n + 1)));
                    return true;
                });
    }

    TEST_CASE("order tree enumeration counts")
    {
        auto count = [](int m, int n) {
            std::uint64_t c = 0;
            for_each_order_tree(m, n, [&](const OrderTree &) {
                ++c;
                return true;
            });
            return c;
        };
        CHECK(count(2, 1) == 2);
        CHECK(count(3, 1) == 12);
        for (int m = 0; m <= 4; ++m)
            for (int n = -1; n <= 2; ++n)
                CHECK(count(m, n) == count_order_trees(m, n));
        CHECK_THROWS_AS(count(7, 1), ResourceGuardError);
        CHECK_THROWS_AS(count(4, 4), ResourceGuardError);
    }

    TEST_CASE("trees produce valid families with the expected members: m <= 4, n <= 2")
    {
        for (int m = 1; m <= 4; ++m)
            for (int n = 0; n <= 2; ++n)
                for_each_order_tree(m, n, [&](const OrderTree & t) {
                    const auto s = to_nested(t);
                    REQUIRE(validate(s, n).valid_through_n());
                    const auto f = family_of(s, n);
                    REQUIRE(f.contains(f.ground_mask()));
                    REQUIRE(f.contains(0));
                    if (n >= 1)
                        for (Element x = 1; x <= m; ++x)
                            REQUIRE(f.contains(bit(x)));
                    REQUIRE(is_intersection_closed(f));
                    return true;
                });
    }

    TEST_CASE("monotone in n for full-depth families: m <= 4")
    {
        for (int m = 1; m <= 4; ++m)
            for_each_order_tree(m, 2, [&](const OrderTree & t) {
                const auto s = to_nested(t);
                REQUIRE(is_subfamily(family_of(s, 0), family_of(s, 1)));
                REQUIRE(is_subfamily(family_of(s, 1), family_of(s, 2)));
                return true;
            });
    }

    TEST_CASE("JSON form round-trips and is sorted")
    {
        const auto s = nested_from_orders(orders_of({"12", "21"}));
        const auto j = to_json(s);
        CHECK(j.dump() == R"({"m":2,"n":1,"seqs":[[1],[2],[2,1]]})");
        CHECK(nested_from_json(j) == s);
    }
}
