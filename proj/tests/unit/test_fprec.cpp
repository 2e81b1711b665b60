#include "support.hpp"

#include <nestord/bracket.hpp>
#include <nestord/errors.hpp>
#include <nestord/fprec.hpp>
#include <nestord/index.hpp>

#include <doctest.h>

using namespace nestord;
using test_support::fam;

namespace {

/// {1..k} ∪ {p} for 0 ≤ k ≤ p ≤ m, with p = 0 adding nothing.
auto prefix_point(int m) -> Family
{
    std::vector<Mask> sets;
    for (int p = 0; p <= m; ++p)
        for (int k = 0; k <= p; ++k)
            sets.push_back(full_mask(k) | (p > 0 ? bit(p) : Mask{0}));
    return Family(m, sets);
}

} // namespace

TEST_SUITE("fprec")
{
    TEST_CASE("prec order parsing")
    {
        const auto p = PrecOrder::parse("53241", 6);
        CHECK(p.m == 6);
        CHECK(p.order.least() == 5);
        CHECK_THROWS_AS(PrecOrder::parse("1234", 6), PreconditionError);
        CHECK_THROWS(PrecOrder::parse("1224", 5));
        CHECK_THROWS_AS(PrecOrder::usual(1), PreconditionError);
    }

    TEST_CASE("sprec membership")
    {
        const auto s = sprec(PrecOrder::usual(5));
        CHECK(s.nesting() == 1);
        CHECK(s.contains(Seq{3, 2, 1}));
        CHECK_FALSE(s.contains(Seq{3, 1, 2}));
        for (Element a = 1; a <= 5; ++a)
            for (Element b = 1; b <= 5; ++b)
                CHECK(s.contains(Seq{a, b}) == (b < a));
    }

    TEST_CASE("sprec validates for every order on 4 points, m = 5")
    {
        for (const auto & o : all_orders(4)) {
            const PrecOrder p{5, o};
            REQUIRE(validate(sprec(p), 1).valid_through_n());
        }
    }

    TEST_CASE("F[<] is the prefix-plus-point family")
    {
        for (int m = 2; m <= 7; ++m)
            CHECK(fprec(PrecOrder::usual(m)) == prefix_point(m));
    }

    TEST_CASE("F[53241]: the printed family is a strict subfamily of the computed one")
    {
        const auto printed = fam("6: 0,1,2,3,4,5,6,12,23,34,35,56,123,235,356,2356,123456");
        const auto computed = fprec(PrecOrder::parse("53241", 6));
        CHECK(computed.size() == 22);
        CHECK(is_subfamily(printed, computed));
        CHECK(computed != printed);
        // The extra members, all omitted from the display.
        std::vector<Mask> extra;
        std::set_difference(computed.sets().begin(), computed.sets().end(), printed.sets().begin(),
                            printed.sets().end(), std::back_inserter(extra));
        CHECK(Family(6, extra) == fam("6: 234,1234,2345,12345,23456"));
        // Its Problem-2 core is still there.
        CHECK(is_subfamily(families::problem2(), computed));
    }

    TEST_CASE("every F[prec] has the empty set, singletons and X; closed; index 1")
    {
        for (int m = 2; m <= 5; ++m)
            for (const auto & o : all_orders(m - 1)) {
                const PrecOrder p{m, o};
                const auto f = fprec(p);
                REQUIRE(f.contains(0));
                REQUIRE(f.contains(f.ground_mask()));
                for (Element x = 1; x <= m; ++x)
                    REQUIRE(f.contains(bit(x)));
                REQUIRE(is_intersection_closed(f));
                REQUIRE(f == family_of(sprec(p), 1));
                if (m >= 3)
                    REQUIRE(no_rec_value(f) == 1);
            }
    }

    TEST_CASE("onemin pivot")
    {
        CHECK(onemin_pivot(PrecOrder::usual(6)) == 1);
        CHECK_FALSE(onemin_pivot(PrecOrder::parse("53241", 6)));
        CHECK(onemin_pivot(PrecOrder::parse("54321", 6)) == 5);
        CHECK(onemin_pivot(PrecOrder::parse("3241", 5)) == 3);
        CHECK(onemin_pivot(PrecOrder::parse("2314", 5)) == 2);
        CHECK_FALSE(onemin_pivot(PrecOrder::parse("3142", 5)));
    }

    TEST_CASE("onemin orders: 2^(m-2) of them, sum of C(m-2, t-1) by pivot")
    {
        for (int m = 2; m <= 7; ++m) {
            const auto orders = onemin_orders(m);
            std::vector<int> by_pivot(static_cast<std::size_t>(m), 0);
            for (const auto & p : orders)
                ++by_pivot[static_cast<std::size_t>(*onemin_pivot(p))];
            CHECK(orders.size() == (std::size_t{1} << (m - 2)));
            for (int t = 1; t <= m - 1; ++t)
                CHECK(by_pivot[static_cast<std::size_t>(t)] == binomial(m - 2, t - 1));
        }
    }

    TEST_CASE("onemin certificates")
    {
        const auto f = fprec(PrecOrder::usual(5));
        const auto c = onemin_certificate(f);
        REQUIRE(c);
        CHECK(c->relabeling == identity_relabeling(5));
        CHECK(c->prec == PrecOrder::usual(5));
        CHECK(c->pivot == 1);

        CHECK_FALSE(onemin_certificate(families::full_cube(3)));
        CHECK(onemin_certificate(fam("4: 3,34,134")));
        CHECK_FALSE(onemin_certificate(Family(1, {1})));
        CHECK_THROWS_AS(onemin_certificate(Family(7, {1})), ResourceGuardError);
    }

    TEST_CASE("a onemin certificate implies index at most 1: exhaustive m = 4")
    {
        for (std::uint64_t b = 0; b < test_support::family_count(4); ++b) {
            const auto f = Family::from_bitmap(4, b);
            if (auto c = onemin_certificate(f)) {
                REQUIRE(no_rec_value(f) <= 1);
                REQUIRE(is_subfamily(relabel(f, c->relabeling), fprec(c->prec)));
            }
        }
    }

    TEST_CASE("chains always have a onemin certificate: exhaustive m <= 4")
    {
        for (int m = 2; m <= 4; ++m)
            for (std::uint64_t b = 0; b < test_support::family_count(m); ++b) {
                const auto f = Family::from_bitmap(m, b);
                if (is_chain(f))
                    REQUIRE(onemin_certificate(f));
            }
    }
}
