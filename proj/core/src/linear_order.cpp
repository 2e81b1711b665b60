#include <nestord/linear_order.hpp>

#include <nestord/errors.hpp>

#include <algorithm>
#include <numeric>

namespace nestord {

LinearOrder::LinearOrder(std::vector<Element> least_first) : seq_(std::move(least_first))
{
    const int m = static_cast<int>(seq_.size());
    if (m > max_ground_size)
        throw PreconditionError("order longer than the maximum ground size");
    rank_.assign(seq_.size(), -1);
    for (int position = 0; position < m; ++position) {
        const Element e = seq_[static_cast<std::size_t>(position)];
        if (e < 1 || e > m || rank_[static_cast<std::size_t>(e - 1)] != -1)
            throw PreconditionError("order is not a permutation of 1.." + std::to_string(m));
        rank_[static_cast<std::size_t>(e - 1)] = position;
    }
}

auto LinearOrder::identity(int m) -> LinearOrder { return LinearOrder(identity_relabeling(m)); }

auto LinearOrder::reversed(int m) -> LinearOrder
{
    auto seq = identity_relabeling(m);
    std::reverse(seq.begin(), seq.end());
    return LinearOrder(std::move(seq));
}

auto LinearOrder::parse(std::string_view digits) -> LinearOrder
{
    std::vector<Element> seq;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        if (c < '1' || c > '9')
            throw ParseError("orders are written as digit strings 1-9", i);
        seq.push_back(c - '0');
    }
    try {
        return LinearOrder(std::move(seq));
    }
    catch (const PreconditionError & e) {
        throw ParseError(e.what(), 0);
    }
}

auto LinearOrder::maximum_of(Mask a) const -> Element
{
    Element best = 0;
    for (Element e : elements_of(a))
        if (best == 0 || rank(e) > rank(best))
            best = e;
    return best;
}

auto LinearOrder::to_string() const -> std::string
{
    std::string out;
    if (size() <= 9) {
        for (Element e : seq_)
            out += static_cast<char>('0' + e);
        return out;
    }
    out = "[";
    for (std::size_t i = 0; i < seq_.size(); ++i)
        out += (i == 0 ? "" : ",") + std::to_string(seq_[i]);
    return out + "]";
}

auto initial_segment(const LinearOrder & order, Element s) -> Mask
{
    Mask out = 0;
    for (int position = 0; position <= order.rank(s); ++position)
        out |= bit(order.at(position));
    return out;
}

auto all_orders(int m) -> std::vector<LinearOrder>
{
    std::vector<LinearOrder> out;
    auto seq = identity_relabeling(m);
    do
        out.emplace_back(seq);
    while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

auto all_arrangements(Mask domain) -> std::vector<std::vector<Element>>
{
    std::vector<std::vector<Element>> out;
    auto seq = elements_of(domain);
    do
        out.push_back(seq);
    while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

} // namespace nestord
