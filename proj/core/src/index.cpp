#include <nestord/index.hpp>

#include <nestord/errors.hpp>

#include <algorithm>
#include <array>
#include <climits>
#include <unordered_map>
#include <unordered_set>

namespace nestord {

auto to_string(CertificateKind kind) -> std::string
{
    switch (kind) {
    case CertificateKind::chain: return "chain";
    case CertificateKind::orders: return "orders";
    case CertificateKind::onemin: return "onemin";
    case CertificateKind::proper: return "proper";
    case CertificateKind::full_cube: return "full_cube";
    }
    return "unknown";
}

auto IndexCertificate::best_upper() const -> std::optional<int>
{
    std::optional<int> best;
    for (const auto & c : fr_upper)
        if (!best || c.bound < *best)
            best = c.bound;
    return best;
}

auto IndexCertificate::tight() const -> bool
{
    const auto best = best_upper();
    return best && *best == fr_lower;
}

namespace {

/// Nonempty subsets of {1..m}, largest first, then by increasing mask.
auto subsets_by_size(int m) -> const std::vector<Mask> &
{
    static const auto tables = [] {
        std::array<std::vector<Mask>, max_canonical_ground_size + 1> out;
        for (int g = 0; g <= max_canonical_ground_size; ++g) {
            for (Mask a = 1; a <= full_mask(g); ++a)
                out[static_cast<std::size_t>(g)].push_back(a);
            std::stable_sort(out[static_cast<std::size_t>(g)].begin(), out[static_cast<std::size_t>(g)].end(),
                             [](Mask x, Mask y) { return cardinality(x) > cardinality(y); });
        }
        return out;
    }();
    return tables.at(static_cast<std::size_t>(m));
}

} // namespace

auto RecursiveIndex::lookup(const std::string & key) const -> std::optional<int>
{
    if (auto v = local_.find(key))
        return v;
    if (snapshot_ != nullptr)
        return snapshot_->find(key);
    return std::nullopt;
}

auto RecursiveIndex::value(const Family & f) -> int
{
    if (is_within_ground_singleton(f))
        return -1;
    if (is_chain(f))
        return 0;
    const auto key = canonical_key(f);
    if (auto v = lookup(key))
        return *v;
    const int v = expand(f);
    local_.insert(key, v);
    return v;
}

auto RecursiveIndex::expand(const Family & f) -> int
{
    ++expansions_;
    int best = -1;
    for (Mask a_set : subsets_by_size(f.ground_size())) {
        // A link over |A|-1 elements has index at most |A|-2.
        if (cardinality(a_set) - 2 <= best)
            break;
        int smallest = INT_MAX;
        for (Element a : elements_of(a_set)) {
            smallest = std::min(smallest, value(link_family(f, a_set, a)));
            if (smallest <= best)
                break;
        }
        best = std::max(best, smallest);
    }
    return best + 1;
}

auto RecursiveIndex::certificate(const Family & f) -> IndexCertificate
{
    const std::uint64_t before = expansions_;
    IndexCertificate cert;
    cert.method = IndexMethod::recursion;
    cert.value = value(f);

    Family current = f;
    std::vector<Element> labels = identity_relabeling(f.ground_size());
    int target = cert.value;
    while (target >= 1) {
        bool stepped = false;
        for (Mask a_set : subsets_by_size(current.ground_size())) {
            Element chosen = 0;
            int smallest = INT_MAX;
            for (Element a : elements_of(a_set)) {
                const int v = value(link_family(current, a_set, a));
                if (v < smallest) {
                    smallest = v;
                    chosen = a;
                }
            }
            if (smallest != target - 1)
                continue;
            Mask original = 0;
            for (Element e : elements_of(a_set))
                original |= bit(labels[static_cast<std::size_t>(e - 1)]);
            cert.trace.push_back({original, labels[static_cast<std::size_t>(chosen - 1)], smallest});

            std::vector<Element> next_labels;
            for (Element e : elements_of(a_set & ~bit(chosen)))
                next_labels.push_back(labels[static_cast<std::size_t>(e - 1)]);
            current = link_family(current, a_set, chosen);
            labels = std::move(next_labels);
            target = smallest;
            stepped = true;
            break;
        }
        if (!stepped)
            break;
    }
    cert.fr_lower = std::max(0, cert.value);
    cert.expansions = expansions_ - before;
    return cert;
}

auto no_rec(const Family & f) -> IndexCertificate
{
    thread_local RecursiveIndex solver;
    return solver.certificate(f);
}

auto no_rec_value(const Family & f) -> int
{
    thread_local RecursiveIndex solver;
    return solver.value(f);
}

namespace {

/// Backtracking over order trees for one nesting level n. A node is the
/// set of entries chosen so far (its prefix, as a set) plus its segment
/// domain; its order is built from the least element upward and each
/// placement must leave a solvable child. Outcomes are memoized per
/// (prefix, domain) and dead partial placements are recorded per node.
class TreeSearch {
  public:
    TreeSearch(const Family & f, int n) : family_(f), n_(n) {}

    auto solve(Mask prefix, int k, Mask domain) -> std::optional<OrderTreeNode>
    {
        const std::uint32_t key = prefix | (domain << 16);
        if (const auto it = memo_.find(key); it != memo_.end())
            return it->second;

        std::optional<OrderTreeNode> result;
        if (k == n_ + 1) {
            if (is_subset(domain, forced(prefix)))
                result = OrderTreeNode{domain, {}, {}};
        }
        else {
            OrderTreeNode node{domain, {}, {}};
            std::unordered_set<Mask> dead;
            if (place(prefix, k, domain, 0, node, dead))
                result = std::move(node);
        }
        memo_.emplace(key, result);
        return result;
    }

  private:
    /// Elements every member containing `prefix` also contains.
    auto forced(Mask prefix) const -> Mask
    {
        Mask out = family_.ground_mask();
        for (Mask b : family_.sets())
            if (is_subset(prefix, b))
                out &= b;
        return out;
    }

    auto place(Mask prefix, int k, Mask domain, Mask placed, OrderTreeNode & node, std::unordered_set<Mask> & dead)
        -> bool
    {
        if (placed == domain)
            return true;
        if (dead.contains(placed))
            return false;
        for (Element s : elements_of(domain & ~placed)) {
            auto child = solve(prefix | bit(s), k + 1, placed);
            if (!child)
                continue;
            node.order.push_back(s);
            node.children.push_back(std::move(*child));
            if (place(prefix, k, domain, placed | bit(s), node, dead))
                return true;
            node.order.pop_back();
            node.children.pop_back();
        }
        dead.insert(placed);
        return false;
    }

    const Family & family_;
    int n_;
    std::unordered_map<std::uint32_t, std::optional<OrderTreeNode>> memo_;
};

} // namespace

auto find_order_tree(const Family & f, int n) -> std::optional<OrderTree>
{
    if (f.ground_size() > max_direct_ground_size || n < -1 || n > max_direct_nesting)
        throw ResourceGuardError("direct search limited to m <= 6 and -1 <= n <= 3");
    TreeSearch search(f, n);
    auto root = search.solve(0, 0, f.ground_mask());
    if (!root)
        return std::nullopt;
    return OrderTree{f.ground_size(), n, std::move(*root)};
}

auto no_direct(const Family & f, int n_max) -> IndexCertificate
{
    if (f.ground_size() > max_direct_ground_size || n_max < -1 || n_max > max_direct_nesting)
        throw ResourceGuardError("direct search limited to m <= 6 and -1 <= n_max <= 3");
    IndexCertificate cert;
    cert.method = IndexMethod::direct;
    for (int n = -1; n <= n_max; ++n) {
        if (auto tree = find_order_tree(f, n)) {
            cert.value = n;
            cert.witness = to_nested(*tree);
            cert.fr_lower = std::max(0, n);
            return cert;
        }
    }
    cert.value = n_max + 1;
    cert.exceeded = true;
    cert.fr_lower = std::max(0, cert.value);
    return cert;
}

auto binomial(int n, int r) -> std::int64_t
{
    if (n < 0 || r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    std::int64_t out = 1;
    for (int i = 1; i <= r; ++i)
        out = out * (n - r + i) / i;
    return out;
}

auto NestboundReport::printed_holds() const -> bool
{
    return std::all_of(rows.begin(), rows.end(), [](const NestboundRow & r) { return r.pass_printed; });
}

auto NestboundReport::derived_holds() const -> bool
{
    return std::all_of(rows.begin(), rows.end(), [](const NestboundRow & r) { return r.pass_derived; });
}

auto nestbound_check(const Family & f, int index_value) -> NestboundReport
{
    NestboundReport report;
    const int m = f.ground_size();
    report.index = std::max(0, index_value);
    for (int k = 0; k <= m - report.index; ++k) {
        NestboundRow row;
        row.k = k;
        row.set_size = report.index + k;
        row.count = std::count_if(f.sets().begin(), f.sets().end(),
                                  [&](Mask a) { return cardinality(a) == row.set_size; });
        row.bound_printed = binomial(report.index, m - k);
        row.bound_derived = binomial(m - k, report.index);
        row.pass_printed = row.count <= row.bound_printed;
        row.pass_derived = row.count <= row.bound_derived;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace nestord
