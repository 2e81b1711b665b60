#pragma once

#include <nestord/family.hpp>
#include <nestord/linear_order.hpp>
#include <nestord/memo.hpp>
#include <nestord/nested_orders.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nestord {

enum class IndexMethod { recursion, direct };

/// One level of the recursion: the maximizing set A, the minimizing a ∈ A
/// (both in the labels of the top-level family) and the index of the link.
struct RecursionStep {
    Mask a_set = 0;
    Element a = 0;
    int link_value = -1;
};

enum class CertificateKind { chain, orders, onemin, proper, full_cube };

auto to_string(CertificateKind kind) -> std::string;

/// Intersection-of-initial-segments witness: selectors[i][j] is the element
/// chosen in orders[j] for the i-th member of the family.
struct OrdersWitness {
    std::vector<LinearOrder> orders;
    std::vector<std::vector<Element>> selectors;
};

/// f relabelled by `relabeling` is a subfamily of F[prec] with hypothesis pivot.
struct OneminWitness {
    Relabeling relabeling;
    LinearOrder prec;
    Element pivot = 0;
};

struct UpperCertificate {
    CertificateKind kind = CertificateKind::chain;
    int bound = 0;
    std::variant<std::monostate, OrdersWitness, OneminWitness> witness;
    bool contradiction = false; ///< bound below the computed lower bound
};

/// Index of a family together with its witness, and (after fr_bracket) the
/// bracket [fr_lower, best upper] with the certificates found.
struct IndexCertificate {
    int value = -1;
    bool exceeded = false; ///< direct search hit n_max without success; value = n_max + 1
    IndexMethod method = IndexMethod::recursion;
    std::optional<NestedOrders> witness;
    std::vector<RecursionStep> trace;
    std::uint64_t expansions = 0;

    int fr_lower = 0;
    std::vector<UpperCertificate> fr_upper;
    std::vector<std::string> findings;

    [[nodiscard]] auto best_upper() const -> std::optional<int>;
    [[nodiscard]] auto tight() const -> bool;
};

/// Evaluates the index by
///   no(F) = 1 + max_{∅≠A⊆X} min_{a∈A} no{B∩A∖{a} : a∈B∈F}
/// with no(F) = -1 for F ⊆ {X} and 0 for other chains. Results are memoized
/// on canonical keys in a local table layered over an optional read-only
/// snapshot; take_local() hands the new entries back for merging.
class RecursiveIndex {
  public:
    explicit RecursiveIndex(const IndexMemo * snapshot = nullptr) : snapshot_(snapshot) {}

    auto value(const Family & f) -> int;

    /// Value plus one optimal (A, a) chain.
    auto certificate(const Family & f) -> IndexCertificate;

    /// Non-base evaluations performed (memo misses).
    [[nodiscard]] auto expansions() const noexcept -> std::uint64_t { return expansions_; }
    [[nodiscard]] auto local() const noexcept -> const IndexMemo & { return local_; }
    auto take_local() -> IndexMemo { return std::exchange(local_, {}); }

  private:
    auto lookup(const std::string & key) const -> std::optional<int>;
    auto expand(const Family & f) -> int;

    const IndexMemo * snapshot_;
    IndexMemo local_;
    std::uint64_t expansions_ = 0;
};

/// Recursive index through a per-thread solver.
auto no_rec(const Family & f) -> IndexCertificate;
auto no_rec_value(const Family & f) -> int;

inline constexpr int max_direct_ground_size = 6;
inline constexpr int max_direct_nesting = 3;

/// Least n in -1..n_max with an n-nested family 𝔖 satisfying F ⊆ F_{𝔖,n},
/// found by backtracking over order trees. Throws ResourceGuardError beyond
/// m ≤ 6, n_max ≤ 3.
auto no_direct(const Family & f, int n_max = max_direct_nesting) -> IndexCertificate;

/// Same search for one level, returning the witnessing tree.
auto find_order_tree(const Family & f, int n) -> std::optional<OrderTree>;

auto binomial(int n, int r) -> std::int64_t;

struct NestboundRow {
    int k = 0;
    int set_size = 0;
    std::int64_t count = 0;
    std::int64_t bound_printed = 0; ///< C(no, |X|-k)
    std::int64_t bound_derived = 0; ///< C(|X|-k, no)
    bool pass_printed = true;
    bool pass_derived = true;
};

/// Counting check |F ∩ [X]^{no+k}| against both binomial readings for
/// 0 ≤ k ≤ |X| - no. The natural index max(0, value) is used.
struct NestboundReport {
    int index = 0;
    std::vector<NestboundRow> rows;

    [[nodiscard]] auto printed_holds() const -> bool;
    [[nodiscard]] auto derived_holds() const -> bool;
};

auto nestbound_check(const Family & f, int index_value) -> NestboundReport;

} // namespace nestord
