#pragma once

#include <nestord/family.hpp>
#include <nestord/linear_order.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nestord {

/// Outcome of an intersection-of-initial-segments test. On success
/// selectors[i][j] is the element of orders[j] whose segment is used for the
/// i-th member of the family; on failure failing_set is the first member that
/// cannot be written.
struct Representation {
    bool ok = false;
    std::vector<std::vector<Element>> selectors;
    std::optional<Mask> failing_set;
};

/// Whether every member of f is ⋂_j {t : t ≤_j s_j} for some s_j.
/// Requires at least one order, all on f's ground.
auto is_representable(const Family & f, std::span<const LinearOrder> orders) -> Representation;

/// Intersection of the segments {t ≤_j selectors[j]}.
auto segment_intersection(std::span<const LinearOrder> orders, std::span<const Element> selectors) -> Mask;

struct OrderSearchResult {
    std::optional<std::vector<LinearOrder>> orders;
    std::uint64_t prefixes_examined = 0;
    std::uint64_t tuples_covered = 0; ///< order tuples ruled in or out, counting the solved last order
};

inline constexpr std::uint64_t max_search_prefixes = 5'000'000;

/// Exhaustive search for k orders representing f. The first k-1 orders run
/// over non-decreasing index tuples of all_orders(m) (the answer does not
/// depend on their arrangement); the last order is solved directly as a
/// linear extension of the precedence constraints the prefix imposes.
/// Throws ResourceGuardError when the prefix count exceeds max_search_prefixes.
auto search_orders(const Family & f, int k) -> OrderSearchResult;

/// The m-1 orders for a ground {1..m} and an (m-1)-subset `missing`: with z
/// the element outside `missing`, the order for k ∈ missing lists
/// missing∖{k} increasingly, then z, then k. Requires m ≥ 3.
auto proper_orders(int m, Mask missing) -> std::vector<LinearOrder>;

/// Selectors of the two explicit recipes for a ≠ missing, in the order of
/// proper_orders. Strict segments below z use z's predecessor.
auto proper_selectors(int m, Mask missing, Mask a) -> std::vector<Element>;

/// m orders, the k-th listing the other elements increasingly and ending in k.
/// Requires 2 ≤ m ≤ max_ground_size.
auto full_cube_orders(int m) -> std::vector<LinearOrder>;

/// Per order k: k when k ∈ a, else its predecessor.
auto full_cube_selectors(int m, Mask a) -> std::vector<Element>;

} // namespace nestord
