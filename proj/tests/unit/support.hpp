#pragma once

#include <nestord/family.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace test_support {

inline auto fam(const char * text) -> nestord::Family { return nestord::parse_family(text); }

inline auto family_count(int m) -> std::uint64_t { return std::uint64_t{1} << (std::uint64_t{1} << m); }

inline auto random_family(std::mt19937_64 & rng, int m) -> nestord::Family
{
    std::vector<nestord::Mask> sets;
    for (nestord::Mask a = 0; a <= nestord::full_mask(m); ++a)
        if (rng() & 1U)
            sets.push_back(a);
    return nestord::Family(m, std::move(sets));
}

inline auto random_relabeling(std::mt19937_64 & rng, int m) -> nestord::Relabeling
{
    auto r = nestord::identity_relabeling(m);
    for (int i = m - 1; i > 0; --i)
        std::swap(r[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
    return r;
}

} // namespace test_support
