#pragma once

#include <nestord/family.hpp>
#include <nestord/memo.hpp>
#include <nestord/serialize.hpp>
#include <nestord/structure.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nestord {

struct ExplorerOptions {
    int jobs = 1;                        ///< worker threads; ≤ 0 uses the hardware count
    std::uint64_t seed = 0;              ///< all sampling derives from this
    const IndexMemo * snapshot = nullptr; ///< read-only memo shared by workers
};

/// Runs fn(i, solver) for i in [0, n) on contiguous blocks, one solver per
/// worker over the snapshot. New memo entries are merged into `learned` (if
/// given) in worker order after all workers finish; returns total expansions.
auto parallel_index_loop(std::size_t n, const ExplorerOptions & options,
                         const std::function<void(std::size_t, RecursiveIndex &)> & fn,
                         IndexMemo * learned = nullptr) -> std::uint64_t;

/// Every family on {1..m}, indexed by its membership bitmap; m ≤ 4.
auto family_from_index(int m, std::uint64_t index) -> Family;

enum class CaseStatus { pass, fail, skipped_resource };

auto to_string(CaseStatus status) -> std::string;

struct VerificationCase {
    std::string id;
    std::string description;
    std::string anchor; ///< the statement being checked, in words
    CaseStatus status = CaseStatus::pass;
    Json details = Json::object();
    Json witness = nullptr; ///< replayable counterexample when status is fail
};

auto to_json(const VerificationCase & c) -> Json;

/// chain0, noall, oracle, classify4, fprec, repr, nestbound, cycle, monotone, problem1.
auto verification_case_ids() -> const std::vector<std::string> &;

/// Throws PreconditionError on an unknown id.
auto run_verification(const std::string & id, const ExplorerOptions & options) -> VerificationCase;

enum class SweepFilter { all, closed };

struct SweepOptions {
    int m = 3;
    SweepFilter filter = SweepFilter::all;
    std::optional<std::uint64_t> samples; ///< required for m ≥ 5
    bool oracle = false;                  ///< cross-run the direct search (m ≤ 6)
    int max_orders = 2;
};

struct SweepRecord {
    std::string key;       ///< serialization of the family itself
    std::string canonical; ///< canonical serialization
    int index = -1;
    std::optional<int> direct;
    std::optional<Class4Label> class4;
    int fr_lower = 0;
    std::optional<int> fr_upper;
    std::string upper_kind;
};

struct SweepReport {
    SweepOptions params;
    std::uint64_t seed = 0;
    std::vector<SweepRecord> records;  ///< sorted by (canonical, key)
    std::map<int, std::uint64_t> histogram;
    Json findings = Json::array();
    std::uint64_t expansions = 0;
    IndexMemo learned;
};

/// Exhaustive for m ≤ 4 without samples; sampled (seeded) otherwise. Throws
/// ResourceGuardError for m ≥ 5 without a sample budget or m > 8.
auto run_sweep(const SweepOptions & sweep, const ExplorerOptions & options) -> SweepReport;

auto to_json(const SweepReport & r) -> Json;

/// Problem 1 (budget = largest ground, ≤ 6), 2, or 3 (budget = random
/// families on 4 points after the exhaustive pass on m ≤ 3).
auto explore(int problem, std::uint64_t budget, const ExplorerOptions & options) -> Json;

} // namespace nestord
