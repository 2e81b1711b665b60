#include "support.hpp"

#include <nestord/errors.hpp>
#include <nestord/index.hpp>
#include <nestord/structure.hpp>

#include <doctest.h>

using namespace nestord;
using test_support::fam;

TEST_SUITE("structure")
{
    TEST_CASE("cycle examples")
    {
        const auto triangle = contains_cycle(fam("3: 12,23,13"));
        REQUIRE(triangle);
        CHECK(triangle->support == 0b111);
        CHECK(triangle->cycle == std::vector<Element>{1, 2, 3});

        const auto restricted = contains_cycle(fam("4: 123,124,134"));
        REQUIRE(restricted);
        CHECK(restricted->support == 0b1110);

        CHECK_FALSE(contains_cycle(fam("4: 12,23,34")));
        CHECK_FALSE(contains_cycle(families::full_cube(2)));
    }

    TEST_CASE("cycle witnesses are genuine: sampled m <= 5")
    {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 500; ++i) {
            const int m = 3 + static_cast<int>(rng() % 3);
            const auto f = test_support::random_family(rng, m);
            const auto w = contains_cycle(f);
            if (!w)
                continue;
            REQUIRE(w->cycle.size() >= 3);
            REQUIRE(static_cast<int>(w->cycle.size()) == cardinality(w->support));
            for (std::size_t j = 0; j < w->cycle.size(); ++j) {
                const Mask edge = bit(w->cycle[j]) | bit(w->cycle[(j + 1) % w->cycle.size()]);
                REQUIRE(std::any_of(f.sets().begin(), f.sets().end(),
                                    [&](Mask b) { return (b & w->support) == edge; }));
            }
        }
    }

    TEST_CASE("cycles survive relabeling and enlargement: sampled m <= 5")
    {
        std::mt19937_64 rng(32);
        for (int i = 0; i < 1000; ++i) {
            const int m = 3 + static_cast<int>(rng() % 3);
            std::vector<Mask> sets;
            for (Mask a = 0; a <= full_mask(m); ++a)
                if (rng() % 4 == 0)
                    sets.push_back(a);
            const Family f(m, sets);
            const bool has = contains_cycle(f).has_value();
            REQUIRE(contains_cycle(relabel(f, test_support::random_relabeling(rng, m))).has_value() == has);
            if (has) {
                auto more = sets;
                more.push_back(static_cast<Mask>(rng()) & full_mask(m));
                REQUIRE(contains_cycle(Family(m, more)));
            }
        }
    }

    TEST_CASE("classify4 examples")
    {
        CHECK(classify4(families::full_cube(4)) == Class4Label::full_cube);
        CHECK(classify4(intersection_closure(fam("4: 12,23,13"))) == Class4Label::cyclic);
        CHECK(classify4(fam("4: 0,1,12,123,1234")) == Class4Label::chain);
        CHECK(classify4(intersection_closure(fam("4: 12,23,34"))) == Class4Label::acyclic);
    }

    TEST_CASE("classify4 preconditions")
    {
        CHECK_THROWS_AS(classify4(fam("3: 123")), PreconditionError);
        CHECK_THROWS_AS(classify4(fam("4: 12,23")), PreconditionError);
        CHECK_THROWS_AS(classify4(fam("4: 1")), PreconditionError);
    }

    TEST_CASE("classify4 matches the natural index on every closure")
    {
        for (std::uint64_t b = 0; b < test_support::family_count(4); ++b) {
            const auto g = intersection_closure(Family::from_bitmap(4, b));
            REQUIRE(static_cast<int>(classify4(g)) == std::max(0, no_rec_value(g)));
        }
    }

    TEST_CASE("cycles force index at least 2: exhaustive m = 4")
    {
        for (std::uint64_t b = 0; b < test_support::family_count(4); ++b) {
            const auto f = Family::from_bitmap(4, b);
            if (contains_cycle(f))
                REQUIRE(no_rec_value(f) >= 2);
        }
    }
}
