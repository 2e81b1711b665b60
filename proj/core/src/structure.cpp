#include <nestord/structure.hpp>

#include <nestord/errors.hpp>

#include <array>

namespace nestord {

namespace {

auto extend_path(const std::array<Mask, max_ground_size> & adj, Mask support, Element start,
                 std::vector<Element> & path, Mask visited) -> bool
{
    const Element last = path.back();
    if (visited == support)
        return (adj[static_cast<std::size_t>(last - 1)] & bit(start)) != 0;
    for (Element next : elements_of(adj[static_cast<std::size_t>(last - 1)] & support & ~visited)) {
        path.push_back(next);
        if (extend_path(adj, support, start, path, visited | bit(next)))
            return true;
        path.pop_back();
    }
    return false;
}

auto hamiltonian_cycle(const Family & f, Mask support) -> std::optional<std::vector<Element>>
{
    std::array<Mask, max_ground_size> adj{};
    for (Mask b : f.sets()) {
        const Mask edge = b & support;
        if (cardinality(edge) != 2)
            continue;
        const auto ends = elements_of(edge);
        adj[static_cast<std::size_t>(ends[0] - 1)] |= bit(ends[1]);
        adj[static_cast<std::size_t>(ends[1] - 1)] |= bit(ends[0]);
    }
    for (Element x : elements_of(support))
        if (cardinality(adj[static_cast<std::size_t>(x - 1)] & support) < 2)
            return std::nullopt;
    const Element start = std::countr_zero(support) + 1;
    std::vector<Element> path{start};
    if (extend_path(adj, support, start, path, bit(start)))
        return path;
    return std::nullopt;
}

} // namespace

auto contains_cycle(const Family & f) -> std::optional<CycleWitness>
{
    const int m = f.ground_size();
    for (int size = 3; size <= m; ++size) {
        for (Mask support = 1; support <= f.ground_mask(); ++support) {
            if (cardinality(support) != size)
                continue;
            if (auto cycle = hamiltonian_cycle(f, support))
                return CycleWitness{support, std::move(*cycle)};
        }
    }
    return std::nullopt;
}

auto classify4(const Family & f) -> Class4Label
{
    if (f.ground_size() != 4)
        throw PreconditionError("classify4 needs the ground set {1,2,3,4}");
    if (f != intersection_closure(f))
        throw PreconditionError("classify4 needs an intersection-closed family containing the ground set");
    if (is_chain(f))
        return Class4Label::chain;
    if (f.size() == 16)
        return Class4Label::full_cube;
    if (contains_cycle(f))
        return Class4Label::cyclic;
    return Class4Label::acyclic;
}

} // namespace nestord
