#pragma once

#include <nestord/family.hpp>
#include <nestord/index.hpp>

namespace nestord {

inline constexpr int default_bracket_orders = 3;

/// Recursive index plus every upper-bound certificate that applies:
/// chain (0), k-order representability (k-1, least k ≤ max_orders), onemin
/// (1, m ≤ 6), a missing (m-1)-subset (m-2, m ≥ 3) and the full-cube orders
/// (m-1, m ≥ 2). The lower end is max(0, index). A certificate below it is
/// flagged and recorded as a finding. Searches that hit a resource guard
/// are skipped and noted in findings.
/// `solver` supplies the index (and its memo); the per-thread solver otherwise.
auto fr_bracket(const Family & f, int max_orders = default_bracket_orders, RecursiveIndex * solver = nullptr)
    -> IndexCertificate;

} // namespace nestord
