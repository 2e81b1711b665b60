#include <nestord/representability.hpp>

#include <nestord/errors.hpp>

#include <algorithm>
#include <array>
#include <numeric>

namespace nestord {

auto segment_intersection(std::span<const LinearOrder> orders, std::span<const Element> selectors) -> Mask
{
    Mask out = full_mask(orders.empty() ? 0 : orders.front().size());
    for (std::size_t j = 0; j < orders.size(); ++j)
        out &= initial_segment(orders[j], selectors[j]);
    return out;
}

auto is_representable(const Family & f, std::span<const LinearOrder> orders) -> Representation
{
    if (orders.empty())
        throw PreconditionError("is_representable needs at least one order");
    for (const auto & o : orders)
        if (o.size() != f.ground_size())
            throw PreconditionError("order and family grounds differ");

    Representation rep;
    for (Mask a : f.sets()) {
        // The smallest usable segment in each order ends at the order's maximum
        // of a; for the empty set it is the order's least element.
        std::vector<Element> chosen;
        chosen.reserve(orders.size());
        for (const auto & o : orders)
            chosen.push_back(a == 0 ? o.least() : o.maximum_of(a));
        if (segment_intersection(orders, chosen) != a) {
            rep.ok = false;
            rep.selectors.clear();
            rep.failing_set = a;
            return rep;
        }
        rep.selectors.push_back(std::move(chosen));
    }
    rep.ok = true;
    return rep;
}

namespace {

/// Order on the ground compatible with `before` (x after every member of
/// before[x]), whose least element differs from `avoid_first` when nonzero.
/// Smallest available label first, so the result is deterministic.
auto linear_extension(int m, const std::array<Mask, max_ground_size> & before, Element avoid_first)
    -> std::optional<LinearOrder>
{
    std::vector<Element> seq;
    seq.reserve(static_cast<std::size_t>(m));
    Mask placed = 0;
    for (int step = 0; step < m; ++step) {
        Element pick = 0;
        for (Element x = 1; x <= m; ++x) {
            if ((placed & bit(x)) != 0 || !is_subset(before[static_cast<std::size_t>(x - 1)], placed))
                continue;
            if (step == 0 && x == avoid_first)
                continue;
            pick = x;
            break;
        }
        if (pick == 0)
            return std::nullopt;
        seq.push_back(pick);
        placed |= bit(pick);
    }
    return LinearOrder(std::move(seq));
}

auto count_multisets(std::uint64_t n, int r) -> std::uint64_t
{
    // C(n+r-1, r), saturating.
    long double out = 1;
    for (int i = 1; i <= r; ++i)
        out = out * static_cast<long double>(n + static_cast<std::uint64_t>(i) - 1) / i;
    return out > 1e18L ? std::uint64_t{1'000'000'000'000'000'000} : static_cast<std::uint64_t>(out + 0.5L);
}

struct PrefixSearch {
    const Family & family;
    int m;
    int k;
    std::vector<LinearOrder> all;
    std::vector<std::size_t> prefix;
    std::uint64_t examined = 0;

    /// Per member, the intersection of its smallest segments in the prefix orders.
    auto reach(Mask a) const -> Mask
    {
        Mask out = full_mask(m);
        for (std::size_t idx : prefix) {
            const auto & o = all[idx];
            out &= initial_segment(o, a == 0 ? o.least() : o.maximum_of(a));
        }
        return out;
    }

    auto solve_last() const -> std::optional<LinearOrder>
    {
        std::array<Mask, max_ground_size> before{};
        Element avoid = 0;
        for (Mask a : family.sets()) {
            const Mask r = reach(a);
            if (a == 0) {
                if (r == 0)
                    continue;
                // A single order never yields ∅; otherwise r is the common
                // least element and the last order must start elsewhere.
                if (prefix.empty())
                    return std::nullopt;
                avoid = std::countr_zero(r) + 1;
                continue;
            }
            for (Element x : elements_of(r & ~a))
                before[static_cast<std::size_t>(x - 1)] |= a;
        }
        return linear_extension(m, before, avoid);
    }

    auto run(std::size_t from) -> std::optional<std::vector<LinearOrder>>
    {
        if (static_cast<int>(prefix.size()) == k - 1) {
            ++examined;
            if (auto last = solve_last()) {
                std::vector<LinearOrder> out;
                for (std::size_t idx : prefix)
                    out.push_back(all[idx]);
                out.push_back(std::move(*last));
                return out;
            }
            return std::nullopt;
        }
        for (std::size_t i = from; i < all.size(); ++i) {
            prefix.push_back(i);
            auto found = run(i);
            prefix.pop_back();
            if (found)
                return found;
        }
        return std::nullopt;
    }
};

} // namespace

auto search_orders(const Family & f, int k) -> OrderSearchResult
{
    if (k < 1)
        throw PreconditionError("search_orders needs k >= 1");
    const int m = f.ground_size();
    if (m > max_canonical_ground_size)
        throw ResourceGuardError("order search limited to m <= 8");
    std::uint64_t factorial = 1;
    for (int i = 2; i <= m; ++i)
        factorial *= static_cast<std::uint64_t>(i);
    if (count_multisets(factorial, k - 1) > max_search_prefixes)
        throw ResourceGuardError("order search space exceeds the prefix budget");

    PrefixSearch search{f, m, k, all_orders(m), {}, 0};
    OrderSearchResult result;
    result.orders = search.run(0);
    result.prefixes_examined = search.examined;
    result.tuples_covered = search.examined * factorial;
    if (result.orders && !is_representable(f, *result.orders).ok)
        throw std::logic_error("order search produced a witness that does not verify");
    return result;
}

auto proper_orders(int m, Mask missing) -> std::vector<LinearOrder>
{
    if (m < 3 || m > max_ground_size)
        throw PreconditionError("proper_orders needs 3 <= m <= 16");
    if (!is_subset(missing, full_mask(m)) || cardinality(missing) != m - 1)
        throw PreconditionError("missing set must have m-1 elements of the ground");
    const Element z = std::countr_zero(full_mask(m) & ~missing) + 1;
    std::vector<LinearOrder> out;
    for (Element k : elements_of(missing)) {
        auto seq = elements_of(missing & ~bit(k));
        seq.push_back(z);
        seq.push_back(k);
        out.emplace_back(std::move(seq));
    }
    return out;
}

auto proper_selectors(int m, Mask missing, Mask a) -> std::vector<Element>
{
    if (a == missing)
        throw PreconditionError("the missing set has no selectors");
    const auto orders = proper_orders(m, missing);
    const Element z = std::countr_zero(full_mask(m) & ~missing) + 1;
    std::vector<Element> out;
    std::size_t j = 0;
    for (Element i : elements_of(missing)) {
        const auto & o = orders[j++];
        if ((a & bit(i)) != 0)
            out.push_back(i);
        else if ((a & bit(z)) != 0)
            out.push_back(z);
        else
            out.push_back(o.at(o.rank(z) - 1));
    }
    return out;
}

auto full_cube_orders(int m) -> std::vector<LinearOrder>
{
    if (m < 2 || m > max_ground_size)
        throw PreconditionError("full_cube_orders needs 2 <= m <= 16");
    std::vector<LinearOrder> out;
    for (Element k = 1; k <= m; ++k) {
        auto seq = elements_of(full_mask(m) & ~bit(k));
        seq.push_back(k);
        out.emplace_back(std::move(seq));
    }
    return out;
}

auto full_cube_selectors(int m, Mask a) -> std::vector<Element>
{
    const auto orders = full_cube_orders(m);
    std::vector<Element> out;
    for (Element k = 1; k <= m; ++k) {
        const auto & o = orders[static_cast<std::size_t>(k - 1)];
        out.push_back((a & bit(k)) != 0 ? k : o.at(m - 2));
    }
    return out;
}

} // namespace nestord
