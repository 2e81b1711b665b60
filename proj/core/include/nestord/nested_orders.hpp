#pragma once

#include <nestord/family.hpp>
#include <nestord/linear_order.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nestord {

/// A finite sequence of ground elements.
using Seq = std::vector<Element>;

/// A set of sequences over {1..m}, stored as a prefix trie. The empty sequence
/// is always considered present. `nesting()` is n for an n-nested family
/// (sequences of length at most n+2) or empty when unbounded.
class NestedOrders {
  public:
    NestedOrders() : NestedOrders(0, std::nullopt) {}
    NestedOrders(int ground_size, std::optional<int> nesting);

    [[nodiscard]] auto ground_size() const noexcept -> int { return ground_size_; }
    [[nodiscard]] auto nesting() const noexcept -> std::optional<int> { return nesting_; }
    void set_nesting(std::optional<int> nesting) { nesting_ = nesting; }

    /// Elements must lie in 1..m; repeated entries are stored as given.
    void insert(std::span<const Element> seq);
    auto erase(std::span<const Element> seq) -> bool;

    [[nodiscard]] auto contains(std::span<const Element> seq) const -> bool;

    /// Mask of s with prefix⌢(s) present. The prefix itself need not be present.
    [[nodiscard]] auto extensions(std::span<const Element> prefix) const -> Mask;

    /// Present nonempty sequences, lexicographically sorted.
    [[nodiscard]] auto sequences() const -> std::vector<Seq>;

    /// Present sequences of exactly this length (the empty one for length 0).
    [[nodiscard]] auto sequences_of_length(int length) const -> std::vector<Seq>;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return count_; }
    [[nodiscard]] auto max_length() const -> int;

    auto operator==(const NestedOrders & other) const -> bool;

  private:
    struct Node {
        std::array<std::int32_t, max_ground_size> child;
        bool present = false;
        Node() { child.fill(-1); }
    };

    [[nodiscard]] auto find(std::span<const Element> seq) const -> std::int32_t;
    void collect(std::int32_t node, Seq & prefix, std::vector<Seq> & out, int only_length) const;

    int ground_size_;
    std::optional<int> nesting_;
    std::vector<Node> nodes_;
    std::size_t count_ = 0;
};

/// Result of one defining clause: pass flag plus a concrete violating
/// sequence (or pair of sequences) on failure.
struct ClauseCheck {
    bool pass = true;
    std::vector<Seq> witness;
    std::string note;

    void fail(std::vector<Seq> w, std::string why)
    {
        if (pass) {
            pass = false;
            witness = std::move(w);
            note = std::move(why);
        }
    }
};

struct ValidationReport {
    std::optional<int> nesting;
    ClauseCheck singletons;   ///< every (t) present
    ClauseCheck distinct;     ///< no repeated entries
    ClauseCheck closed;       ///< drop last / drop second-to-last
    ClauseCheck transitive;   ///< (p,s,t),(p,t,u) ⇒ (p,s,u)
    ClauseCheck length_bound; ///< n-nested mode: length ≤ n+2
    /// Comparability with prefix length k, one entry per k checked. In
    /// n-nested mode k runs over 0..n; unbounded mode covers every prefix.
    std::vector<ClauseCheck> comparable;

    /// Literal n-nested reading: comparability required only for k < n.
    [[nodiscard]] auto valid() const -> bool;
    /// Comparability required for every k ≤ n (what order trees produce).
    [[nodiscard]] auto valid_through_n() const -> bool;

  private:
    [[nodiscard]] auto base_clauses() const -> bool;
};

/// `n` empty checks the unbounded definition.
auto validate(const NestedOrders & s, std::optional<int> n) -> ValidationReport;

/// {A ⊆ X : every present (t1..t_{n+2}) with t1..t_{n+1} ∈ A has t_{n+2} ∈ A}.
/// n = -1 uses the length-1 sequences. Requires n ≥ -1.
auto family_of(const NestedOrders & s, int n) -> Family;

/// All sequences of length ≤ k+1 with t_i <_j t_j whenever j < i, for k orders.
/// The result is (k-1)-nested.
auto nested_from_orders(std::span<const LinearOrder> orders) -> NestedOrders;

/// Grows a valid n-nested family (comparability through k = n) into an
/// (n+1)-nested one. Each new segment order is increasing label order.
auto extend(const NestedOrders & s, int n) -> NestedOrders;

/// One node of an order tree: the segment `domain` of admissible next
/// entries, and unless the node is a leaf a linear order on it (least first)
/// with one child per element. children[i] has domain = order[0..i).
struct OrderTreeNode {
    Mask domain = 0;
    std::vector<Element> order;
    std::vector<OrderTreeNode> children;

    auto operator==(const OrderTreeNode &) const -> bool = default;
};

/// Generator form of an n-nested family: nodes at prefix length ≤ n carry
/// orders, nodes at prefix length n+1 are leaves.
struct OrderTree {
    int ground_size = 0;
    int nesting = -1;
    OrderTreeNode root;
};

auto to_nested(const OrderTree & tree) -> NestedOrders;

inline constexpr int max_tree_ground_size = 6;
inline constexpr int max_tree_nesting = 3;

/// Calls `visit` on every order tree of the given depth until it returns
/// false. Throws ResourceGuardError beyond m ≤ 6, n ≤ 3.
void for_each_order_tree(int m, int n, const std::function<bool(const OrderTree &)> & visit);

/// Number of trees for_each_order_tree would visit (no resource guard).
auto count_order_trees(int m, int n) -> std::uint64_t;

} // namespace nestord
