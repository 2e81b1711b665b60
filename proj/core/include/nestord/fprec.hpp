#pragma once

#include <nestord/family.hpp>
#include <nestord/linear_order.hpp>
#include <nestord/nested_orders.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace nestord {

/// An order ≺ on {1..m-1} together with the ambient ground size m.
struct PrecOrder {
    int m = 2;
    LinearOrder order;

    /// Digit string of ≺, least first, e.g. ("53241", 6). Throws ParseError or
    /// PreconditionError when the digits are not a permutation of 1..m-1.
    static auto parse(std::string_view digits, int m) -> PrecOrder;
    static auto usual(int m) -> PrecOrder;

    auto operator==(const PrecOrder &) const -> bool = default;
};

/// 1-nested family of (t1), (t1,t2), (t1,t2,t3) with t2 < t1, t3 < t1 in the
/// usual order and t3 ≺ t2.
auto sprec(const PrecOrder & p) -> NestedOrders;

/// family_of(sprec(p), 1).
auto fprec(const PrecOrder & p) -> Family;

/// Least t with t ≺ t+1 ≺ ... ≺ m-1 and t ≺ t-1 ≺ ... ≺ 1.
auto onemin_pivot(const PrecOrder & p) -> std::optional<Element>;

/// Every ≺ on {1..m-1} admitting a pivot, in lexicographic order (2^(m-2) of them).
auto onemin_orders(int m) -> std::vector<PrecOrder>;

struct OneminCertificate {
    Relabeling relabeling; ///< relabel(f, relabeling) ⊆ fprec(prec)
    PrecOrder prec;
    Element pivot = 0;
};

inline constexpr int max_onemin_ground_size = 6;

/// First (relabeling, ≺) pair over lexicographic relabelings and onemin
/// orders. Throws ResourceGuardError above m = 6; none when m < 2.
auto onemin_certificate(const Family & f) -> std::optional<OneminCertificate>;

} // namespace nestord
