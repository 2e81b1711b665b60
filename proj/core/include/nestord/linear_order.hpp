#pragma once

#include <nestord/family.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nestord {

/// A linear order on {1..m}, listed from least to greatest.
class LinearOrder {
  public:
    LinearOrder() = default;

    /// Throws PreconditionError unless `least_first` is a permutation of 1..m.
    explicit LinearOrder(std::vector<Element> least_first);

    static auto identity(int m) -> LinearOrder;
    static auto reversed(int m) -> LinearOrder;

    /// Digit string, least first: "4321" is 4 < 3 < 2 < 1. Only for m <= 9.
    static auto parse(std::string_view digits) -> LinearOrder;

    [[nodiscard]] auto size() const noexcept -> int { return static_cast<int>(seq_.size()); }
    [[nodiscard]] auto sequence() const noexcept -> std::span<const Element> { return seq_; }
    [[nodiscard]] auto at(int position) const -> Element { return seq_[static_cast<std::size_t>(position)]; }

    /// 0-based position of e.
    [[nodiscard]] auto rank(Element e) const -> int { return rank_[static_cast<std::size_t>(e - 1)]; }
    [[nodiscard]] auto less(Element a, Element b) const -> bool { return rank(a) < rank(b); }
    [[nodiscard]] auto least() const -> Element { return seq_.front(); }
    [[nodiscard]] auto greatest() const -> Element { return seq_.back(); }

    /// Largest member of a nonempty mask in this order.
    [[nodiscard]] auto maximum_of(Mask a) const -> Element;

    /// Digit string when m <= 9, otherwise a bracketed list.
    [[nodiscard]] auto to_string() const -> std::string;

    auto operator==(const LinearOrder & other) const -> bool { return seq_ == other.seq_; }
    auto operator<=>(const LinearOrder & other) const { return seq_ <=> other.seq_; }

  private:
    std::vector<Element> seq_;
    std::vector<int> rank_;
};

/// {t : t ≤ s} in the given order.
auto initial_segment(const LinearOrder & order, Element s) -> Mask;

/// All m! orders of {1..m} in lexicographic order of their sequences.
auto all_orders(int m) -> std::vector<LinearOrder>;

/// All linear orders of the members of `domain` (least first), lexicographic.
auto all_arrangements(Mask domain) -> std::vector<std::vector<Element>>;

} // namespace nestord
