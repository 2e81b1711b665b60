#include <nestord/explorer.hpp>

#include <nestord/bracket.hpp>
#include <nestord/errors.hpp>
#include <nestord/fprec.hpp>
#include <nestord/index.hpp>
#include <nestord/representability.hpp>

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace nestord {

auto parallel_index_loop(std::size_t n, const ExplorerOptions & options,
                         const std::function<void(std::size_t, RecursiveIndex &)> & fn, IndexMemo * learned)
    -> std::uint64_t
{
    std::size_t workers = options.jobs > 0 ? static_cast<std::size_t>(options.jobs)
                                           : std::max(1U, std::thread::hardware_concurrency());
    workers = std::max<std::size_t>(1, std::min(workers, n));

    std::vector<RecursiveIndex> solvers;
    solvers.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        solvers.emplace_back(options.snapshot);

    const std::size_t block = (n + workers - 1) / std::max<std::size_t>(workers, 1);
    auto run = [&](std::size_t w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(n, begin + block);
        for (std::size_t i = begin; i < end; ++i)
            fn(i, solvers[w]);
    };

    if (workers == 1) {
        run(0);
    }
    else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w)
            threads.emplace_back([&, w] {
                try {
                    run(w);
                }
                catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto & t : threads)
            t.join();
        for (auto & e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    std::uint64_t expansions = 0;
    for (auto & s : solvers) {
        expansions += s.expansions();
        if (learned != nullptr)
            learned->merge(s.local());
    }
    return expansions;
}

auto family_from_index(int m, std::uint64_t index) -> Family
{
    if (m < 0 || m > 4)
        throw ResourceGuardError("exhaustive family enumeration limited to m <= 4");
    return Family::from_bitmap(m, index);
}

auto to_string(CaseStatus status) -> std::string
{
    switch (status) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skipped_resource: return "skipped-resource";
    }
    return "unknown";
}

auto to_json(const VerificationCase & c) -> Json
{
    Json j;
    j["id"] = c.id;
    j["description"] = c.description;
    j["anchor"] = c.anchor;
    j["status"] = to_string(c.status);
    j["details"] = c.details;
    j["witness"] = c.witness;
    return j;
}

namespace {

constexpr std::uint64_t family_count(int m) { return std::uint64_t{1} << (std::uint64_t{1} << m); }

/// Independent stream per use so adding a case never shifts another's samples.
auto stream(std::uint64_t seed, std::uint64_t salt) -> std::mt19937_64
{
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
}

/// Uniform family on {1..m} from raw generator bits (portable across standard libraries).
auto random_family(std::mt19937_64 & rng, int m) -> Family
{
    const int masks = 1 << m;
    std::vector<Mask> sets;
    std::uint64_t bits = 0;
    for (int a = 0; a < masks; ++a) {
        if (a % 64 == 0)
            bits = rng();
        if ((bits >> (a % 64)) & 1U)
            sets.push_back(static_cast<Mask>(a));
    }
    return Family(m, std::move(sets));
}

auto random_relabeling(std::mt19937_64 & rng, int m) -> Relabeling
{
    auto r = identity_relabeling(m);
    for (int i = m - 1; i > 0; --i)
        std::swap(r[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
    return r;
}

/// Collects at most a few counterexamples per check, keeping the first by index.
struct Failures {
    std::uint64_t count = 0;
    Json first = nullptr;

    void add(const Json & witness)
    {
        if (count++ == 0)
            first = witness;
    }
};

/// Per-index failure slots filled in parallel, folded in index order.
struct FailureSlots {
    std::vector<Json> slots;
    explicit FailureSlots(std::size_t n) : slots(n, nullptr) {}

    auto fold() const -> Failures
    {
        Failures out;
        for (const auto & s : slots)
            if (!s.is_null())
                out.add(s);
        return out;
    }
};

auto failure_json(const Failures & f) -> Json
{
    Json j;
    j["violations"] = f.count;
    if (f.count > 0)
        j["first"] = f.first;
    return j;
}

auto case_chain0(const ExplorerOptions & options) -> VerificationCase
{
    VerificationCase c{"chain0", "index 0 exactly for chains not contained in {X}, all families on 4 points",
                       "a family has index 0 iff it is linearly ordered by inclusion", CaseStatus::pass, Json::object(),
                       nullptr};
    const auto n = family_count(4);
    FailureSlots slots(n);
    parallel_index_loop(n, options, [&](std::size_t i, RecursiveIndex & solver) {
        const auto f = family_from_index(4, i);
        const bool zero = solver.value(f) == 0;
        const bool expected = is_chain(f) && !is_within_ground_singleton(f);
        if (zero != expected)
            slots.slots[i] = Json{{"family", format_family(f)}, {"index", solver.value(f)}, {"chain", is_chain(f)}};
    });
    const auto fails = slots.fold();
    c.details["families"] = n;
    c.details["exceptions"] = fails.count;
    if (fails.count > 0) {
        c.status = CaseStatus::fail;
        c.witness = fails.first;
    }
    return c;
}

auto case_noall(const ExplorerOptions &) -> VerificationCase
{
    VerificationCase c{"noall", "full cube on m points has index m-1 (m = 1..5), direct search agrees for m <= 4",
                       "the family of all subsets of X has index |X|-1", CaseStatus::pass, Json::object(), nullptr};
    Json rows = Json::array();
    for (int m = 1; m <= 5; ++m) {
        const auto f = families::full_cube(m);
        Json row;
        row["m"] = m;
        const int rec = no_rec_value(f);
        row["no_rec"] = rec;
        bool ok = rec == m - 1;
        if (m <= 4) {
            const auto direct = no_direct(f, max_direct_nesting);
            row["no_direct"] = direct.value;
            ok = ok && !direct.exceeded && direct.value == m - 1;
        }
        row["pass"] = ok;
        if (!ok && c.status == CaseStatus::pass) {
            c.status = CaseStatus::fail;
            c.witness = Json{{"family", format_family(f)}, {"row", row}};
        }
        rows.push_back(std::move(row));
    }
    c.details["rows"] = std::move(rows);
    return c;
}

auto case_oracle(const ExplorerOptions & options) -> VerificationCase
{
    VerificationCase c{"oracle",
                       "recursive index equals direct order-tree search: all 256 families on 3 points and 2000 seeded "
                       "families on 4 points",
                       "the recursive formula (with base cases -1 for F within {X}, 0 for chains) computes the index",
                       CaseStatus::pass, Json::object(), nullptr};
    std::vector<Family> work;
    for (std::uint64_t i = 0; i < family_count(3); ++i)
        work.push_back(family_from_index(3, i));
    auto rng = stream(options.seed, 3);
    for (int i = 0; i < 2000; ++i)
        work.push_back(random_family(rng, 4));

    FailureSlots slots(work.size());
    parallel_index_loop(work.size(), options, [&](std::size_t i, RecursiveIndex & solver) {
        const int rec = solver.value(work[i]);
        const auto direct = no_direct(work[i], max_direct_nesting);
        if (direct.exceeded || direct.value != rec)
            slots.slots[i] = Json{{"family", format_family(work[i])}, {"no_rec", rec}, {"no_direct", direct.value}};
    });
    Json disagreements = Json::array();
    for (const auto & s : slots.slots)
        if (!s.is_null())
            disagreements.push_back(s);
    c.details["exhaustive_m3"] = family_count(3);
    c.details["sampled_m4"] = 2000;
    c.details["disagreements"] = disagreements.size();
    if (!disagreements.empty()) {
        c.status = CaseStatus::fail;
        // A mismatch would say the recursion does not compute the index.
        c.details["finding"] = "recursive formula disagrees with the direct definition";
        c.witness = disagreements;
    }
    return c;
}

auto case_classify4(const ExplorerOptions & options) -> VerificationCase
{
    VerificationCase c{"classify4",
                       "case analysis on {1,2,3,4} matches max(0, index) on the closures of all 65536 generator families",
                       "for closed families on 4 points: 0 chain, 3 all subsets, 2 with a cycle, 1 otherwise",
                       CaseStatus::pass, Json::object(), nullptr};
    const auto n = family_count(4);
    FailureSlots slots(n);
    std::vector<std::uint64_t> closure_bitmap(n);
    parallel_index_loop(n, options, [&](std::size_t i, RecursiveIndex & solver) {
        const auto g = intersection_closure(family_from_index(4, i));
        closure_bitmap[i] = g.bitmap();
        const int label = static_cast<int>(classify4(g));
        const int index = std::max(0, solver.value(g));
        if (label != index)
            slots.slots[i] = Json{{"closure", format_family(g)}, {"classify4", label}, {"index", index}};
    });
    std::sort(closure_bitmap.begin(), closure_bitmap.end());
    const auto distinct = std::unique(closure_bitmap.begin(), closure_bitmap.end()) - closure_bitmap.begin();
    const auto fails = slots.fold();
    c.details["closures_checked"] = n;
    c.details["distinct_closures"] = distinct;
    c.details["mismatches"] = fails.count;
    if (fails.count > 0) {
        c.status = CaseStatus::fail;
        c.witness = fails.first;
    }
    return c;
}

auto prefix_point_family(int m) -> Family
{
    std::vector<Mask> sets;
    for (int p = 0; p <= m; ++p)
        for (int k = 0; k <= p; ++k)
            sets.push_back(full_mask(k) | (p > 0 ? bit(p) : Mask{0}));
    return Family(m, std::move(sets));
}

auto case_fprec(const ExplorerOptions &) -> VerificationCase
{
    VerificationCase c{"fprec",
                       "F[53241] on 6 points equals the printed 17-set family; F[<] on 5 points is {1..k} u {p}",
                       "two-order families built from the usual order and a second order on 1..m-1",
                       CaseStatus::pass, Json::object(), nullptr};
    const auto printed = parse_family("6: 0,1,2,3,4,5,6,12,23,34,35,56,123,235,356,2356,123456");
    const auto computed = fprec(PrecOrder::parse("53241", 6));
    const bool a_pass = computed == printed;

    Json a;
    a["pass"] = a_pass;
    a["computed"] = format_family(computed);
    a["printed"] = format_family(printed);
    std::vector<Mask> extra;
    std::vector<Mask> missing;
    std::set_difference(computed.sets().begin(), computed.sets().end(), printed.sets().begin(), printed.sets().end(),
                        std::back_inserter(extra));
    std::set_difference(printed.sets().begin(), printed.sets().end(), computed.sets().begin(), computed.sets().end(),
                        std::back_inserter(missing));
    a["computed_only"] = format_family(Family(6, extra));
    a["printed_only"] = format_family(Family(6, missing));

    const auto usual = fprec(PrecOrder::usual(5));
    const auto expected = prefix_point_family(5);
    Json b;
    b["pass"] = usual == expected;
    b["computed"] = format_family(usual);
    b["expected"] = format_family(expected);

    c.details["printed_vector"] = a;
    c.details["prefix_point_vector"] = b;
    if (!a_pass || usual != expected) {
        c.status = CaseStatus::fail;
        c.witness = a_pass ? b : a;
    }
    return c;
}

auto case_repr(const ExplorerOptions &) -> VerificationCase
{
    VerificationCase c{"repr",
                       "explicit order pairs represent their families; no two orders represent F[<] on 5 points",
                       "every member is an intersection of one initial segment per order", CaseStatus::pass,
                       Json::object(), nullptr};
    struct Vector {
        Family family;
        std::vector<std::string> orders;
    };
    const std::vector<Vector> vectors{
        {families::intervals(6), {"123456", "654321"}},
        {parse_family("4: 12,23,34,123,234"), {"1234", "4321"}},
        {parse_family("4: 12,13,14,123,124"), {"1423", "1324"}},
        {parse_family("4: 12,123,124"), {"3124", "4213"}},
    };
    Json rows = Json::array();
    for (const auto & v : vectors) {
        std::vector<LinearOrder> orders;
        for (const auto & o : v.orders)
            orders.push_back(LinearOrder::parse(o));
        const auto rep = is_representable(v.family, orders);
        Json row{{"family", format_family(v.family)}, {"orders", v.orders}, {"pass", rep.ok}};
        if (rep.ok)
            row["selectors"] = rep.selectors;
        else if (c.status == CaseStatus::pass) {
            c.status = CaseStatus::fail;
            c.witness = Json{{"family", format_family(v.family)}, {"orders", v.orders},
                             {"failing_set", set_json(*rep.failing_set)}};
        }
        rows.push_back(std::move(row));
    }
    c.details["vectors"] = std::move(rows);

    const auto target = fprec(PrecOrder::usual(5));
    const auto search = search_orders(target, 2);
    const bool none = !search.orders.has_value();
    const bool within = search.tuples_covered <= 14400;
    c.details["search"] = Json{{"family", format_family(target)},
                               {"k", 2},
                               {"found", !none},
                               {"prefixes_examined", search.prefixes_examined},
                               {"tuples_covered", search.tuples_covered}};
    if ((!none || !within) && c.status == CaseStatus::pass) {
        c.status = CaseStatus::fail;
        Json w{{"family", format_family(target)}, {"tuples_covered", search.tuples_covered}};
        if (search.orders)
            w["orders"] = Json{to_json((*search.orders)[0]), to_json((*search.orders)[1])};
        c.witness = w;
    }
    return c;
}

auto case_nestbound(const ExplorerOptions & options) -> VerificationCase
{
    VerificationCase c{"nestbound",
                       "counting bound C(|X|-k, no) holds for all families on m <= 4; the printed C(no, |X|-k) fails "
                       "on the intervals of {1..4} at k = 2",
                       "|F restricted to sets of size no+k| is bounded for k <= |X| - no", CaseStatus::pass,
                       Json::object(), nullptr};
    Failures derived;
    std::uint64_t printed_failures = 0;
    std::uint64_t checked = 0;
    for (int m = 0; m <= 4; ++m) {
        const auto n = family_count(m);
        FailureSlots slots(n);
        std::vector<char> printed_bad(n, 0);
        parallel_index_loop(n, options, [&](std::size_t i, RecursiveIndex & solver) {
            const auto f = family_from_index(m, i);
            const auto report = nestbound_check(f, solver.value(f));
            if (!report.derived_holds())
                slots.slots[i] = Json{{"family", format_family(f)}, {"report", to_json(report)}};
            printed_bad[i] = report.printed_holds() ? 0 : 1;
        });
        for (const auto & s : slots.slots)
            if (!s.is_null())
                derived.add(s);
        printed_failures += static_cast<std::uint64_t>(std::count(printed_bad.begin(), printed_bad.end(), 1));
        checked += n;
    }

    const auto intervals = families::intervals(4);
    const auto report = nestbound_check(intervals, no_rec_value(intervals));
    const auto row = std::find_if(report.rows.begin(), report.rows.end(), [](const auto & r) { return r.k == 2; });
    const bool discrepancy = row != report.rows.end() && !row->pass_printed && row->pass_derived;

    c.details["families"] = checked;
    c.details["derived"] = failure_json(derived);
    c.details["printed_violations"] = printed_failures;
    c.details["discrepancy"] = Json{{"family", format_family(intervals)}, {"report", to_json(report)}};
    if (derived.count > 0) {
        c.status = CaseStatus::fail;
        c.witness = derived.first;
    }
    else if (!discrepancy) {
        c.status = CaseStatus::fail;
        c.witness = c.details["discrepancy"];
    }
    return c;
}

auto case_cycle(const ExplorerOptions & options) -> VerificationCase
{
    VerificationCase c{"cycle", "families containing a cycle have index >= 2: all on 4 points, 500 seeded on 5 points",
                       "a cycle forces index greater than 1", CaseStatus::pass, Json::object(), nullptr};
    std::vector<Family> work;
    for (std::uint64_t i = 0; i < family_count(4); ++i) {
        auto f = family_from_index(4, i);
        if (contains_cycle(f))
            work.push_back(std::move(f));
    }
    const std::size_t exhaustive = work.size();
    auto rng = stream(options.seed, 8);
    std::size_t sampled = 0;
    while (sampled < 500) {
        auto f = random_family(rng, 5);
        if (!contains_cycle(f))
            continue;
        work.push_back(std::move(f));
        ++sampled;
    }
    FailureSlots slots(work.size());
    parallel_index_loop(work.size(), options, [&](std::size_t i, RecursiveIndex & solver) {
        const int v = solver.value(work[i]);
        if (v < 2)
            slots.slots[i] =
                Json{{"family", format_family(work[i])}, {"index", v}, {"cycle", to_json(*contains_cycle(work[i]))}};
    });
    const auto fails = slots.fold();
    c.details["cyclic_m4"] = exhaustive;
    c.details["sampled_m5"] = sampled;
    c.details["violations"] = fails.count;
    if (fails.count > 0) {
        c.status = CaseStatus::fail;
        c.witness = fails.first;
    }
    return c;
}

auto case_monotone(const ExplorerOptions & options) -> VerificationCase
{
    VerificationCase c{"monotone",
                       "restriction, subfamily, relabeling, closure and augmentation properties of the index",
                       "the index does not grow under restriction or passing to subfamilies, ignores labels, "
                       "closure and added singletons",
                       CaseStatus::pass, Json::object(), nullptr};
    auto note = [&](const char * name, const Failures & f, std::uint64_t checked) {
        Json j = failure_json(f);
        j["checked"] = checked;
        c.details[name] = j;
        if (f.count > 0 && c.status == CaseStatus::pass) {
            c.status = CaseStatus::fail;
            c.witness = Json{{"property", name}, {"counterexample", f.first}};
        }
    };

    {
        const auto n = family_count(4);
        FailureSlots slots(n);
        parallel_index_loop(n, options, [&](std::size_t i, RecursiveIndex & solver) {
            const auto f = family_from_index(4, i);
            const int v = solver.value(f);
            for (Mask b = 0; b <= f.ground_mask(); ++b) {
                const auto r = restrict_family(f, b);
                if (solver.value(r) > v) {
                    slots.slots[i] = Json{{"family", format_family(f)}, {"B", set_json(b)}};
                    return;
                }
            }
        });
        note("restriction", slots.fold(), n * 16);
    }
    {
        auto rng = stream(options.seed, 91);
        std::vector<std::pair<Family, Family>> pairs;
        for (int m = 1; m <= 4; ++m)
            for (int i = 0; i < 1000; ++i) {
                auto f = random_family(rng, m);
                std::vector<Mask> keep;
                for (Mask a : f.sets())
                    if (rng() & 1U)
                        keep.push_back(a);
                pairs.emplace_back(Family(m, std::move(keep)), std::move(f));
            }
        FailureSlots slots(pairs.size());
        parallel_index_loop(pairs.size(), options, [&](std::size_t i, RecursiveIndex & solver) {
            if (solver.value(pairs[i].first) > solver.value(pairs[i].second))
                slots.slots[i] =
                    Json{{"sub", format_family(pairs[i].first)}, {"family", format_family(pairs[i].second)}};
        });
        note("subfamily", slots.fold(), pairs.size());
    }
    {
        auto rng = stream(options.seed, 92);
        std::vector<std::pair<Family, Relabeling>> work;
        for (int i = 0; i < 2000; ++i) {
            auto f = random_family(rng, 4);
            work.emplace_back(std::move(f), random_relabeling(rng, 4));
        }
        // Bypass the canonical memo: compare direct search values.
        FailureSlots slots(work.size());
        parallel_index_loop(work.size(), options, [&](std::size_t i, RecursiveIndex & solver) {
            const auto & [f, pi] = work[i];
            const auto moved = relabel(f, pi);
            if (solver.value(moved) != solver.value(f) || no_direct(moved).value != no_direct(f).value)
                slots.slots[i] = Json{{"family", format_family(f)}, {"relabeling", pi}};
        });
        note("relabeling", slots.fold(), work.size());
    }
    {
        std::vector<Family> work;
        for (int m = 0; m <= 3; ++m)
            for (std::uint64_t i = 0; i < family_count(m); ++i)
                work.push_back(family_from_index(m, i));
        FailureSlots slots(work.size());
        parallel_index_loop(work.size(), options, [&](std::size_t i, RecursiveIndex &) {
            const auto closed = intersection_closure(work[i]);
            const int a = no_direct(work[i]).value;
            const int b = no_direct(closed).value;
            if (a != b)
                slots.slots[i] = Json{{"family", format_family(work[i])}, {"direct", a}, {"closure_direct", b}};
        });
        note("closure", slots.fold(), work.size());
    }
    {
        std::vector<Family> work;
        for (int m = 2; m <= 4; ++m)
            for (std::uint64_t i = 0; i < family_count(m); ++i)
                work.push_back(family_from_index(m, i));
        FailureSlots slots(work.size());
        parallel_index_loop(work.size(), options, [&](std::size_t i, RecursiveIndex & solver) {
            const int v = solver.value(work[i]);
            const int w = solver.value(augment(work[i]));
            if (w != std::max(1, v))
                slots.slots[i] = Json{{"family", format_family(work[i])}, {"index", v}, {"augmented", w}};
        });
        note("augmentation", slots.fold(), work.size());
    }
    return c;
}

auto case_problem1(const ExplorerOptions &) -> VerificationCase
{
    VerificationCase c{"problem1", "all 2-subsets of {1..5}: recursion and direct search agree, witness re-validates",
                       "exploration of the uniform families [X]^m", CaseStatus::pass, Json::object(), nullptr};
    const auto f = families::uniform(5, 2);
    const auto rec = no_rec(f);
    const auto direct = no_direct(f, max_direct_nesting);
    c.details["family"] = format_family(f);
    c.details["no_rec"] = rec.value;
    c.details["no_direct"] = direct.exceeded ? Json("> 3") : Json(direct.value);
    bool ok = !direct.exceeded && direct.value == rec.value;
    if (!direct.exceeded && direct.witness) {
        const auto report = validate(*direct.witness, direct.value);
        const bool contained = is_subfamily(f, family_of(*direct.witness, direct.value));
        c.details["witness_valid"] = report.valid_through_n();
        c.details["witness_contains_family"] = contained;
        c.details["witness"] = to_json(*direct.witness);
        ok = ok && report.valid_through_n() && contained;
    }
    else if (direct.exceeded) {
        ok = rec.value > max_direct_nesting;
    }
    if (!ok) {
        c.status = CaseStatus::fail;
        c.witness = Json{{"family", format_family(f)}, {"no_rec", rec.value}, {"no_direct", direct.value}};
    }
    return c;
}

} // namespace

auto verification_case_ids() -> const std::vector<std::string> &
{
    static const std::vector<std::string> ids{"chain0",    "noall",  "oracle", "classify4", "fprec",
                                              "repr",      "nestbound", "cycle", "monotone", "problem1"};
    return ids;
}

auto run_verification(const std::string & id, const ExplorerOptions & options) -> VerificationCase
{
    try {
        if (id == "chain0")
            return case_chain0(options);
        if (id == "noall")
            return case_noall(options);
        if (id == "oracle")
            return case_oracle(options);
        if (id == "classify4")
            return case_classify4(options);
        if (id == "fprec")
            return case_fprec(options);
        if (id == "repr")
            return case_repr(options);
        if (id == "nestbound")
            return case_nestbound(options);
        if (id == "cycle")
            return case_cycle(options);
        if (id == "monotone")
            return case_monotone(options);
        if (id == "problem1")
            return case_problem1(options);
    }
    catch (const ResourceGuardError & e) {
        VerificationCase c;
        c.id = id;
        c.status = CaseStatus::skipped_resource;
        c.details["reason"] = e.what();
        return c;
    }
    throw PreconditionError("unknown verification case: " + id);
}

auto run_sweep(const SweepOptions & sweep, const ExplorerOptions & options) -> SweepReport
{
    const int m = sweep.m;
    if (m < 0 || m > max_canonical_ground_size)
        throw ResourceGuardError("sweeps limited to m <= 8");
    if (m > 4 && !sweep.samples)
        throw ResourceGuardError("m >= 5 needs a sample budget");
    if (sweep.oracle && m > max_direct_ground_size)
        throw ResourceGuardError("direct oracle limited to m <= 6");

    std::vector<Family> work;
    if (!sweep.samples) {
        for (std::uint64_t i = 0; i < family_count(m); ++i) {
            auto f = family_from_index(m, i);
            if (sweep.filter == SweepFilter::closed && f != intersection_closure(f))
                continue;
            work.push_back(std::move(f));
        }
    }
    else {
        auto rng = stream(options.seed, 17);
        for (std::uint64_t i = 0; i < *sweep.samples; ++i) {
            auto f = random_family(rng, m);
            work.push_back(sweep.filter == SweepFilter::closed ? intersection_closure(f) : std::move(f));
        }
    }

    SweepReport report;
    report.params = sweep;
    report.seed = options.seed;
    report.records.resize(work.size());
    std::vector<Json> found(work.size(), nullptr);

    report.expansions = parallel_index_loop(
        work.size(), options,
        [&](std::size_t i, RecursiveIndex & solver) {
            const auto & f = work[i];
            auto & r = report.records[i];
            r.key = serialize_key(f);
            r.canonical = canonical_key(f);
            const auto cert = fr_bracket(f, sweep.max_orders, &solver);
            r.index = cert.value;
            r.fr_lower = cert.fr_lower;
            Json issues = Json::array();
            if (const auto best = cert.best_upper()) {
                r.fr_upper = *best;
                for (const auto & u : cert.fr_upper)
                    if (u.bound == *best) {
                        r.upper_kind = to_string(u.kind);
                        break;
                    }
            }
            for (const auto & s : cert.findings)
                if (s.find("skipped") == std::string::npos)
                    issues.push_back(s);
            if (sweep.oracle) {
                const auto direct = no_direct(f, max_direct_nesting);
                r.direct = direct.value;
                if (direct.value != r.index)
                    issues.push_back("oracle disagreement: direct " + std::to_string(direct.value));
            }
            if (m == 4 && f == intersection_closure(f)) {
                r.class4 = classify4(f);
                if (static_cast<int>(*r.class4) != std::max(0, r.index))
                    issues.push_back("classification disagrees with index");
            }
            if (!nestbound_check(f, r.index).derived_holds())
                issues.push_back("derived counting bound violated");
            if (r.index < 2 && contains_cycle(f))
                issues.push_back("cycle with index below 2");
            if (!issues.empty())
                found[i] = Json{{"family", format_family(f)}, {"issues", issues}};
        },
        &report.learned);

    for (const auto & r : report.records)
        ++report.histogram[r.index];
    for (const auto & j : found)
        if (!j.is_null())
            report.findings.push_back(j);
    std::sort(report.records.begin(), report.records.end(), [](const SweepRecord & a, const SweepRecord & b) {
        return std::tie(a.canonical, a.key) < std::tie(b.canonical, b.key);
    });
    return report;
}

auto to_json(const SweepReport & r) -> Json
{
    Json j;
    j["params"] = Json{{"m", r.params.m},
                       {"filter", r.params.filter == SweepFilter::all ? "all" : "closed"},
                       {"samples", r.params.samples ? Json(*r.params.samples) : Json(nullptr)},
                       {"oracle", r.params.oracle},
                       {"max_orders", r.params.max_orders},
                       {"seed", r.seed}};
    Json hist = Json::object();
    for (const auto & [v, n] : r.histogram)
        hist[std::to_string(v)] = n;
    j["histogram"] = hist;
    j["records_count"] = r.records.size();
    j["expansions"] = r.expansions;
    j["findings"] = r.findings;
    Json records = Json::array();
    for (const auto & x : r.records) {
        Json e;
        e["key"] = x.key;
        e["canonical"] = x.canonical;
        e["no"] = x.index;
        if (x.direct)
            e["no_direct"] = *x.direct;
        if (x.class4)
            e["class4"] = static_cast<int>(*x.class4);
        e["fr_lower"] = x.fr_lower;
        e["fr_upper"] = x.fr_upper ? Json(*x.fr_upper) : Json(nullptr);
        e["upper_kind"] = x.upper_kind;
        records.push_back(std::move(e));
    }
    j["records"] = std::move(records);
    return j;
}

namespace {

auto explore_problem1(std::uint64_t budget) -> Json
{
    const int top = static_cast<int>(std::min<std::uint64_t>(budget == 0 ? 5 : budget, 6));
    Json rows = Json::array();
    for (int j = 2; j <= top; ++j)
        for (int i = 1; i < j; ++i) {
            const auto f = families::uniform(j, i);
            const auto cert = fr_bracket(f);
            Json row;
            row["ground"] = j;
            row["size"] = i;
            row["no_rec"] = cert.value;
            if (j <= max_direct_ground_size) {
                const auto direct = no_direct(f, max_direct_nesting);
                row["no_direct"] = direct.exceeded ? Json("> 3") : Json(direct.value);
                if (direct.witness) {
                    row["witness_valid"] = validate(*direct.witness, direct.value).valid_through_n() &&
                                           is_subfamily(f, family_of(*direct.witness, direct.value));
                }
            }
            row["fr_lower"] = cert.fr_lower;
            row["fr_upper"] = cert.best_upper() ? Json(*cert.best_upper()) : Json(nullptr);
            row["question_value"] = i;
            rows.push_back(std::move(row));
        }
    return Json{{"problem", 1}, {"question", "is fr([X]^m) = m"}, {"rows", rows}};
}

auto explore_problem2() -> Json
{
    const auto f = families::problem2();
    Json j{{"problem", 2}, {"family", format_family(f)}};
    const auto cert = fr_bracket(f, 3);
    j["no_rec"] = cert.value;
    const auto direct = no_direct(f, max_direct_nesting);
    j["no_direct"] = direct.value;
    Json battery;
    for (int k = 1; k <= 3; ++k) {
        const auto s = search_orders(f, k);
        Json row{{"found", s.orders.has_value()}, {"prefixes_examined", s.prefixes_examined}};
        if (s.orders) {
            Json orders = Json::array();
            for (const auto & o : *s.orders)
                orders.push_back(to_json(o));
            row["orders"] = orders;
        }
        battery["orders_k" + std::to_string(k)] = row;
    }
    const auto om = onemin_certificate(f);
    battery["onemin"] = om ? Json{{"relabeling", om->relabeling}, {"prec", to_json(om->prec.order)}} : Json(nullptr);
    j["certificates"] = battery;
    j["bracket"] = to_json(cert);
    j["fr_lower"] = cert.fr_lower;
    j["fr_upper"] = cert.best_upper() ? Json(*cert.best_upper()) : Json(nullptr);
    return j;
}

auto explore_problem3(std::uint64_t budget, const ExplorerOptions & options) -> Json
{
    std::vector<Family> work;
    for (int m = 0; m <= 3; ++m)
        for (std::uint64_t i = 0; i < family_count(m); ++i)
            work.push_back(family_from_index(m, i));
    const std::size_t exhaustive = work.size();
    auto rng = stream(options.seed, 33);
    for (std::uint64_t i = 0; i < budget; ++i)
        work.push_back(random_family(rng, 4));
    std::vector<Json> hits(work.size(), nullptr);
    parallel_index_loop(work.size(), options, [&](std::size_t i, RecursiveIndex & solver) {
        const int rec = solver.value(work[i]);
        const auto direct = no_direct(work[i], max_direct_nesting);
        if (direct.value != rec)
            hits[i] = Json{{"family", format_family(work[i])}, {"no_rec", rec}, {"no_direct", direct.value}};
    });
    Json disagreements = Json::array();
    for (const auto & h : hits)
        if (!h.is_null())
            disagreements.push_back(h);
    return Json{{"problem", 3},
                {"exhaustive_m_le_3", exhaustive},
                {"sampled_m4", budget},
                {"disagreements", disagreements}};
}

} // namespace

auto explore(int problem, std::uint64_t budget, const ExplorerOptions & options) -> Json
{
    switch (problem) {
    case 1: return explore_problem1(budget);
    case 2: return explore_problem2();
    case 3: return explore_problem3(budget, options);
    default: throw PreconditionError("problem must be 1, 2 or 3");
    }
}

} // namespace nestord
