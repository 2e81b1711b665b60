#include <nestord/nested_orders.hpp>

#include <nestord/errors.hpp>

#include <algorithm>

namespace nestord {

NestedOrders::NestedOrders(int ground_size, std::optional<int> nesting)
    : ground_size_(ground_size), nesting_(nesting), nodes_(1)
{
    if (ground_size < 0 || ground_size > max_ground_size)
        throw PreconditionError("ground size out of range");
    if (nesting && *nesting < -1)
        throw PreconditionError("nesting degree must be at least -1");
    nodes_[0].present = true;
}

void NestedOrders::insert(std::span<const Element> seq)
{
    std::int32_t node = 0;
    for (Element e : seq) {
        if (e < 1 || e > ground_size_)
            throw PreconditionError("sequence entry " + std::to_string(e) + " outside the ground set");
        auto & slot = nodes_[static_cast<std::size_t>(node)].child[static_cast<std::size_t>(e - 1)];
        if (slot < 0) {
            slot = static_cast<std::int32_t>(nodes_.size());
            nodes_.emplace_back();
        }
        node = nodes_[static_cast<std::size_t>(node)].child[static_cast<std::size_t>(e - 1)];
    }
    auto & target = nodes_[static_cast<std::size_t>(node)];
    if (!target.present) {
        target.present = true;
        ++count_;
    }
}

auto NestedOrders::erase(std::span<const Element> seq) -> bool
{
    if (seq.empty())
        return false;
    const auto node = find(seq);
    if (node < 0 || !nodes_[static_cast<std::size_t>(node)].present)
        return false;
    nodes_[static_cast<std::size_t>(node)].present = false;
    --count_;
    return true;
}

auto NestedOrders::find(std::span<const Element> seq) const -> std::int32_t
{
    std::int32_t node = 0;
    for (Element e : seq) {
        if (e < 1 || e > ground_size_)
            return -1;
        node = nodes_[static_cast<std::size_t>(node)].child[static_cast<std::size_t>(e - 1)];
        if (node < 0)
            return -1;
    }
    return node;
}

auto NestedOrders::contains(std::span<const Element> seq) const -> bool
{
    const auto node = find(seq);
    return node >= 0 && nodes_[static_cast<std::size_t>(node)].present;
}

auto NestedOrders::extensions(std::span<const Element> prefix) const -> Mask
{
    const auto node = find(prefix);
    if (node < 0)
        return 0;
    Mask out = 0;
    const auto & n = nodes_[static_cast<std::size_t>(node)];
    for (int e = 0; e < ground_size_; ++e) {
        const auto c = n.child[static_cast<std::size_t>(e)];
        if (c >= 0 && nodes_[static_cast<std::size_t>(c)].present)
            out |= Mask{1} << e;
    }
    return out;
}

void NestedOrders::collect(std::int32_t node, Seq & prefix, std::vector<Seq> & out, int only_length) const
{
    const auto & n = nodes_[static_cast<std::size_t>(node)];
    const int length = static_cast<int>(prefix.size());
    if (n.present && (only_length < 0 ? length > 0 : length == only_length))
        out.push_back(prefix);
    if (only_length >= 0 && length >= only_length)
        return;
    for (int e = 0; e < ground_size_; ++e) {
        const auto c = n.child[static_cast<std::size_t>(e)];
        if (c < 0)
            continue;
        prefix.push_back(e + 1);
        collect(c, prefix, out, only_length);
        prefix.pop_back();
    }
}

auto NestedOrders::sequences() const -> std::vector<Seq>
{
    std::vector<Seq> out;
    Seq prefix;
    collect(0, prefix, out, -1);
    return out;
}

auto NestedOrders::sequences_of_length(int length) const -> std::vector<Seq>
{
    std::vector<Seq> out;
    Seq prefix;
    collect(0, prefix, out, length);
    return out;
}

auto NestedOrders::max_length() const -> int
{
    int best = 0;
    for (const auto & s : sequences())
        best = std::max(best, static_cast<int>(s.size()));
    return best;
}

auto NestedOrders::operator==(const NestedOrders & other) const -> bool
{
    return ground_size_ == other.ground_size_ && nesting_ == other.nesting_ && sequences() == other.sequences();
}

auto ValidationReport::base_clauses() const -> bool
{
    return singletons.pass && distinct.pass && closed.pass && transitive.pass && length_bound.pass;
}

auto ValidationReport::valid() const -> bool
{
    if (!base_clauses())
        return false;
    for (std::size_t k = 0; k < comparable.size(); ++k)
        if (!comparable[k].pass && (!nesting || static_cast<int>(k) < *nesting))
            return false;
    return true;
}

auto ValidationReport::valid_through_n() const -> bool
{
    return base_clauses() &&
           std::all_of(comparable.begin(), comparable.end(), [](const ClauseCheck & c) { return c.pass; });
}

namespace {

auto concat(const Seq & p, std::initializer_list<Element> tail) -> Seq
{
    Seq out = p;
    out.insert(out.end(), tail);
    return out;
}

} // namespace

auto validate(const NestedOrders & s, std::optional<int> n) -> ValidationReport
{
    ValidationReport report;
    report.nesting = n;
    const int m = s.ground_size();

    for (Element t = 1; t <= m; ++t)
        if (!s.contains(std::array{t}))
            report.singletons.fail({Seq{t}}, "length-1 sequence missing");

    auto present = s.sequences();
    for (const auto & q : present) {
        Seq sorted = q;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            report.distinct.fail({q}, "repeated entry");

        if (n && static_cast<int>(q.size()) > *n + 2)
            report.length_bound.fail({q}, "longer than n+2");

        const Seq drop_last(q.begin(), q.end() - 1);
        if (!s.contains(drop_last))
            report.closed.fail({q, drop_last}, "dropping the last entry leaves the family");
        if (q.size() >= 2) {
            Seq drop_second(q.begin(), q.end() - 2);
            drop_second.push_back(q.back());
            if (!s.contains(drop_second))
                report.closed.fail({q, drop_second}, "dropping the second-to-last entry leaves the family");
        }
    }

    // Prefix-local clauses, evaluated at the empty prefix and every present one.
    present.insert(present.begin(), Seq{});
    const int deepest_k = n ? *n : m;
    if (deepest_k >= 0)
        report.comparable.resize(static_cast<std::size_t>(deepest_k + 1));
    for (const auto & p : present) {
        const Mask ext = s.extensions(p);
        for (Element a : elements_of(ext)) {
            const Seq pa = concat(p, {a});
            for (Element b : elements_of(s.extensions(pa))) {
                const Seq pb = concat(p, {b});
                for (Element c : elements_of(s.extensions(pb)))
                    if ((s.extensions(pa) & bit(c)) == 0)
                        report.transitive.fail({concat(p, {a, b}), concat(p, {b, c})}, "missing transitive sequence");
            }
        }
        const auto k = static_cast<std::size_t>(p.size());
        if (k >= report.comparable.size())
            continue;
        const auto elems = elements_of(ext);
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                const Element a = elems[i];
                const Element b = elems[j];
                if (!s.contains(concat(p, {a, b})) && !s.contains(concat(p, {b, a})))
                    report.comparable[k].fail({concat(p, {a}), concat(p, {b})}, "incomparable extensions");
            }
    }
    return report;
}

auto family_of(const NestedOrders & s, int n) -> Family
{
    if (n < -1)
        throw PreconditionError("family_of needs n >= -1");
    const int m = s.ground_size();
    struct Rule {
        Mask premise;
        Mask conclusion;
        auto operator<=>(const Rule &) const = default;
    };
    std::vector<Rule> rules;
    for (const auto & q : s.sequences_of_length(n + 2)) {
        Mask premise = 0;
        for (std::size_t i = 0; i + 1 < q.size(); ++i)
            premise |= bit(q[i]);
        rules.push_back({premise, bit(q.back())});
    }
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());

    std::vector<Mask> members;
    for (Mask a = 0; a <= full_mask(m); ++a) {
        const bool closed = std::all_of(rules.begin(), rules.end(), [a](const Rule & r) {
            return !is_subset(r.premise, a) || (a & r.conclusion) != 0;
        });
        if (closed)
            members.push_back(a);
    }
    return Family(m, std::move(members));
}

auto nested_from_orders(std::span<const LinearOrder> orders) -> NestedOrders
{
    if (orders.empty())
        throw PreconditionError("need at least one order");
    const int m = orders[0].size();
    for (const auto & o : orders)
        if (o.size() != m)
            throw PreconditionError("orders on different ground sets");
    const int k = static_cast<int>(orders.size());
    NestedOrders out(m, k - 1);

    Seq q;
    const std::function<void()> grow = [&] {
        if (!q.empty())
            out.insert(q);
        if (static_cast<int>(q.size()) == k + 1)
            return;
        for (Element x = 1; x <= m; ++x) {
            bool admissible = std::find(q.begin(), q.end(), x) == q.end();
            for (std::size_t j = 0; admissible && j < q.size(); ++j)
                admissible = orders[j].less(x, q[j]);
            if (!admissible)
                continue;
            q.push_back(x);
            grow();
            q.pop_back();
        }
    };
    grow();
    return out;
}

auto extend(const NestedOrders & s, int n) -> NestedOrders
{
    const auto report = validate(s, n);
    if (!report.valid_through_n())
        throw PreconditionError("extend needs a valid n-nested-orders family");
    NestedOrders out = s;
    out.set_nesting(n + 1);
    for (const auto & t : s.sequences_of_length(n + 1)) {
        const auto domain = elements_of(s.extensions(t));
        for (Element x : domain)
            for (Element y : domain)
                if (y < x) {
                    Seq q = t;
                    q.push_back(x);
                    q.push_back(y);
                    out.insert(q);
                }
    }
    return out;
}

namespace {

void emit_sequences(const OrderTreeNode & node, Seq & prefix, NestedOrders & out)
{
    for (Element s : elements_of(node.domain)) {
        prefix.push_back(s);
        out.insert(prefix);
        prefix.pop_back();
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        prefix.push_back(node.order[i]);
        emit_sequences(node.children[i], prefix, out);
        prefix.pop_back();
    }
}

using NodeSink = std::function<bool(OrderTreeNode &&)>;

auto enumerate_nodes(Mask domain, int k, int n, const NodeSink & sink) -> bool;

auto enumerate_children(const std::vector<Element> & order, std::size_t i, Mask placed, int k, int n,
                        std::vector<OrderTreeNode> & built, Mask domain, const NodeSink & sink) -> bool
{
    if (i == order.size())
        return sink(OrderTreeNode{domain, order, built});
    return enumerate_nodes(placed, k + 1, n, [&](OrderTreeNode && child) {
        built.push_back(std::move(child));
        const bool more = enumerate_children(order, i + 1, placed | bit(order[i]), k, n, built, domain, sink);
        built.pop_back();
        return more;
    });
}

auto enumerate_nodes(Mask domain, int k, int n, const NodeSink & sink) -> bool
{
    if (k == n + 1)
        return sink(OrderTreeNode{domain, {}, {}});
    for (const auto & order : all_arrangements(domain)) {
        std::vector<OrderTreeNode> built;
        if (!enumerate_children(order, 0, 0, k, n, built, domain, sink))
            return false;
    }
    return true;
}

auto count_nodes(int domain_size, int k, int n) -> std::uint64_t
{
    if (k == n + 1)
        return 1;
    std::uint64_t total = 1;
    for (int i = 0; i < domain_size; ++i)
        total *= static_cast<std::uint64_t>(i + 1) * count_nodes(i, k + 1, n);
    return total;
}

} // namespace

auto to_nested(const OrderTree & tree) -> NestedOrders
{
    NestedOrders out(tree.ground_size, tree.nesting);
    Seq prefix;
    emit_sequences(tree.root, prefix, out);
    return out;
}

void for_each_order_tree(int m, int n, const std::function<bool(const OrderTree &)> & visit)
{
    if (m < 0 || m > max_tree_ground_size || n < -1 || n > max_tree_nesting)
        throw ResourceGuardError("order-tree enumeration limited to m <= 6 and -1 <= n <= 3");
    enumerate_nodes(full_mask(m), 0, n, [&](OrderTreeNode && root) {
        return visit(OrderTree{m, n, std::move(root)});
    });
}

auto count_order_trees(int m, int n) -> std::uint64_t { return count_nodes(m, 0, n); }

} // namespace nestord
