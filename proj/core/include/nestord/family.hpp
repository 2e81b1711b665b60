#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nestord {

/// Ground elements are labelled 1..m.
using Element = int;

/// Subset of the ground set: bit i-1 is set iff element i is a member.
using Mask = std::uint32_t;

inline constexpr int max_ground_size = 16;

/// Largest ground set on which canonical forms are computed (brute force over m!).
inline constexpr int max_canonical_ground_size = 8;

constexpr auto bit(Element e) -> Mask { return Mask{1} << (e - 1); }

constexpr auto full_mask(int m) -> Mask { return m <= 0 ? Mask{0} : (Mask{1} << m) - 1; }

constexpr auto is_subset(Mask a, Mask b) -> bool { return (a & ~b) == 0; }

inline auto cardinality(Mask a) -> int { return std::popcount(a); }

auto elements_of(Mask a) -> std::vector<Element>;

/// Relabeling of {1..m}: `relabeling[i-1]` is the new label of element i.
using Relabeling = std::vector<Element>;

auto identity_relabeling(int m) -> Relabeling;

auto relabel_mask(Mask a, const Relabeling & relabeling) -> Mask;

/// Maps the members of `a` lying in `onto` to {1..|onto|}, preserving label order.
auto compress_mask(Mask a, Mask onto) -> Mask;

/// Inverse of compress_mask: element i of the compressed ground becomes the
/// i-th smallest member of `onto`.
auto expand_mask(Mask a, Mask onto) -> Mask;

/// A finite family of subsets of {1..m}. Members are distinct and stored in
/// increasing numeric order; the ground set is explicit and may exceed the
/// union of the members.
class Family {
  public:
    Family() = default;

    /// Sorts and deduplicates `sets`. Throws PreconditionError when m is out of
    /// range or a member leaves the ground set.
    explicit Family(int ground_size, std::vector<Mask> sets = {});

    [[nodiscard]] auto ground_size() const noexcept -> int { return ground_size_; }
    [[nodiscard]] auto ground_mask() const noexcept -> Mask { return full_mask(ground_size_); }
    [[nodiscard]] auto sets() const noexcept -> std::span<const Mask> { return sets_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return sets_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return sets_.empty(); }
    [[nodiscard]] auto contains(Mask a) const -> bool;

    /// Members as a bitmap indexed by mask; only meaningful for m <= 6.
    [[nodiscard]] auto bitmap() const -> std::uint64_t;
    static auto from_bitmap(int ground_size, std::uint64_t bitmap) -> Family;

    auto operator==(const Family &) const -> bool = default;
    auto operator<=>(const Family &) const = default;

  private:
    int ground_size_ = 0;
    std::vector<Mask> sets_;
};

/// Parses the simplified notation, e.g. "6: 12,23,356", "3: 0", "{1,2,10},{3}".
/// An explicit prefix "m:" may be followed by nothing to denote the empty family.
auto parse_family(std::string_view text) -> Family;

/// Digit form when m <= 9, bracketed form otherwise; always carries the "m:" prefix.
auto format_family(const Family & f) -> std::string;

auto is_chain(const Family & f) -> bool;

/// True when every member equals the ground set (including the empty family).
auto is_within_ground_singleton(const Family & f) -> bool;

/// `a` is a subfamily of `b` over the same ground.
auto is_subfamily(const Family & a, const Family & b) -> bool;

/// Smallest intersection-closed family containing f and the ground set.
auto intersection_closure(const Family & f) -> Family;

auto is_intersection_closed(const Family & f) -> bool;

/// {A ∩ Y : A ∈ f} over ground Y, relabelled to {1..|Y|} by increasing label.
auto restrict_family(const Family & f, Mask y) -> Family;

/// {B ∩ A \ {a} : a ∈ B ∈ f} over ground A \ {a}, relabelled.
auto link_family(const Family & f, Mask a_set, Element a) -> Family;

auto relabel(const Family & f, const Relabeling & relabeling) -> Family;

struct CanonicalForm {
    Family family;
    Relabeling relabeling; ///< relabel(original, relabeling) == family
};

/// Lexicographically least member list over all relabelings. Throws
/// ResourceGuardError above max_canonical_ground_size.
auto canonicalize(const Family & f) -> CanonicalForm;

/// "m|h1.h2...": members in increasing order, lowercase hex. No canonicalization.
auto serialize_key(const Family & f) -> std::string;

/// serialize_key(canonicalize(f).family)
auto canonical_key(const Family & f) -> std::string;

/// Inverse of serialize_key.
auto parse_key(std::string_view key) -> Family;

/// f ∪ {X} ∪ {{x} : x ∈ X}
auto augment(const Family & f) -> Family;

namespace families {

auto full_cube(int m) -> Family;
auto intervals(int m) -> Family; ///< includes ∅
auto uniform(int m, int size) -> Family;
auto problem2() -> Family;

} // namespace families

} // namespace nestord
