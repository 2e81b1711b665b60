#include <nestord/fprec.hpp>

#include <nestord/errors.hpp>

#include <algorithm>

namespace nestord {

auto PrecOrder::parse(std::string_view digits, int m) -> PrecOrder
{
    if (m < 2)
        throw PreconditionError("a prec order needs m >= 2");
    auto order = LinearOrder::parse(digits);
    if (order.size() != m - 1)
        throw PreconditionError("a prec order must list exactly 1..m-1");
    return PrecOrder{m, std::move(order)};
}

auto PrecOrder::usual(int m) -> PrecOrder
{
    if (m < 2)
        throw PreconditionError("a prec order needs m >= 2");
    return PrecOrder{m, LinearOrder::identity(m - 1)};
}

auto sprec(const PrecOrder & p) -> NestedOrders
{
    if (p.m < 2 || p.order.size() != p.m - 1)
        throw PreconditionError("malformed prec order");
    // m goes on top of ≺; it never occurs as t2 or t3.
    std::vector<Element> second(p.order.sequence().begin(), p.order.sequence().end());
    second.push_back(p.m);
    const std::vector<LinearOrder> orders{LinearOrder::identity(p.m), LinearOrder(std::move(second))};
    return nested_from_orders(orders);
}

auto fprec(const PrecOrder & p) -> Family { return family_of(sprec(p), 1); }

auto onemin_pivot(const PrecOrder & p) -> std::optional<Element>
{
    const int top = p.m - 1;
    for (Element t = 1; t <= top; ++t) {
        bool up = true;
        for (Element x = t; x + 1 <= top && up; ++x)
            up = p.order.less(x, x + 1);
        bool down = true;
        for (Element x = t; x - 1 >= 1 && down; --x)
            down = p.order.less(x, x - 1);
        if (up && down)
            return t;
    }
    return std::nullopt;
}

auto onemin_orders(int m) -> std::vector<PrecOrder>
{
    std::vector<PrecOrder> out;
    for (auto & o : all_orders(m - 1)) {
        PrecOrder p{m, std::move(o)};
        if (onemin_pivot(p))
            out.push_back(std::move(p));
    }
    return out;
}

auto onemin_certificate(const Family & f) -> std::optional<OneminCertificate>
{
    const int m = f.ground_size();
    if (m > max_onemin_ground_size)
        throw ResourceGuardError("onemin certificate search limited to m <= 6");
    if (m < 2)
        return std::nullopt;
    const auto candidates = onemin_orders(m);
    std::vector<Family> targets;
    targets.reserve(candidates.size());
    for (const auto & p : candidates)
        targets.push_back(fprec(p));

    auto relabeling = identity_relabeling(m);
    do {
        const Family moved = relabel(f, relabeling);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (is_subfamily(moved, targets[i]))
                return OneminCertificate{relabeling, candidates[i], *onemin_pivot(candidates[i])};
    } while (std::next_permutation(relabeling.begin(), relabeling.end()));
    return std::nullopt;
}

} // namespace nestord
