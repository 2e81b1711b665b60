#pragma once

#include <nestord/family.hpp>

#include <optional>
#include <vector>

namespace nestord {

/// A support A with |A| ≥ 3 and a cyclic listing of A whose consecutive
/// pairs (wrapping around) all lie in f restricted to A.
struct CycleWitness {
    Mask support = 0;
    std::vector<Element> cycle;

    auto operator==(const CycleWitness &) const -> bool = default;
};

/// Scans supports by size, then by mask; the first Hamiltonian cycle found
/// from the least element, trying neighbours in increasing label order.
auto contains_cycle(const Family & f) -> std::optional<CycleWitness>;

enum class Class4Label { chain = 0, acyclic = 1, cyclic = 2, full_cube = 3 };

/// Case analysis for an intersection-closed family on {1,2,3,4} (which
/// includes the ground set). Throws PreconditionError otherwise.
auto classify4(const Family & f) -> Class4Label;

} // namespace nestord
