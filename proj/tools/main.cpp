#include <nestord/bracket.hpp>
#include <nestord/errors.hpp>
#include <nestord/explorer.hpp>
#include <nestord/fprec.hpp>
#include <nestord/index.hpp>
#include <nestord/memo.hpp>
#include <nestord/representability.hpp>
#include <nestord/serialize.hpp>
#include <nestord/structure.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using nestord::Json;

enum class Format { json, md, csv };

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_guard = 3;

struct Globals {
    Format format = Format::md;
    std::string cache_path;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool witness = false;
    bool oracle = false;
};

auto scalar_text(const Json & v) -> std::string
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

auto is_flat_table(const Json & v) -> bool
{
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json & e) { return e.is_object(); });
}

auto table_columns(const Json & rows) -> std::vector<std::string>
{
    std::vector<std::string> cols;
    for (const auto & row : rows)
        for (const auto & [k, _] : row.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end())
                cols.push_back(k);
    return cols;
}

auto md_cell(const Json & v) -> std::string
{
    auto s = scalar_text(v);
    std::string out;
    for (char ch : s)
        out += ch == '|' ? std::string("\\|") : std::string(1, ch);
    return out;
}

void render_md(std::ostream & out, const Json & j, int depth)
{
    std::vector<std::pair<std::string, const Json *>> nested;
    for (const auto & [k, v] : j.items()) {
        if (v.is_object() || is_flat_table(v))
            nested.emplace_back(k, &v);
        else
            out << "- **" << k << "**: " << md_cell(v) << '\n';
    }
    for (const auto & [k, v] : nested) {
        out << '\n' << std::string(static_cast<std::size_t>(std::min(depth + 1, 6)), '#') << ' ' << k << "\n\n";
        if (v->is_object()) {
            render_md(out, *v, depth + 1);
            continue;
        }
        const auto cols = table_columns(*v);
        out << '|';
        for (const auto & c : cols)
            out << ' ' << c << " |";
        out << "\n|";
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << "---|";
        out << '\n';
        for (const auto & row : *v) {
            out << '|';
            for (const auto & c : cols)
                out << ' ' << (row.contains(c) ? md_cell(row.at(c)) : "") << " |";
            out << '\n';
        }
    }
}

auto csv_field(const Json & v) -> std::string
{
    const auto s = scalar_text(v);
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

void flatten(const Json & j, const std::string & prefix, std::vector<std::pair<std::string, std::string>> & out)
{
    if (j.is_object()) {
        for (const auto & [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    out.emplace_back(prefix, csv_field(j));
}

/// The named array becomes the CSV table; without one, key/value pairs.
void render_csv(std::ostream & out, const Json & j, const std::string & table)
{
    if (!table.empty() && j.contains(table) && is_flat_table(j.at(table))) {
        const auto & rows = j.at(table);
        const auto cols = table_columns(rows);
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << cols[i];
        out << '\n';
        for (const auto & row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                out << (i ? "," : "") << (row.contains(cols[i]) ? csv_field(row.at(cols[i])) : "");
            out << '\n';
        }
        return;
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    flatten(j, "", pairs);
    out << "key,value\n";
    for (const auto & [k, v] : pairs)
        out << k << ',' << v << '\n';
}

void emit(const Globals & g, const std::string & title, const Json & j, const std::string & csv_table = {})
{
    switch (g.format) {
    case Format::json: std::cout << j.dump(2) << '\n'; break;
    case Format::md:
        std::cout << "# " << title << "\n\n";
        render_md(std::cout, j, 1);
        break;
    case Format::csv: render_csv(std::cout, j, csv_table); break;
    }
}

/// Memo loaded from --cache, written back with whatever the command learned.
struct Cache {
    nestord::IndexMemo memo;
    nestord::CacheLoadStats stats;
    std::string path;

    explicit Cache(std::string p) : path(std::move(p))
    {
        if (!path.empty()) {
            stats = nestord::load_cache(path, memo);
            if (stats.skipped > 0)
                std::cerr << "warning: skipped " << stats.skipped << " corrupt cache line(s)\n";
        }
    }

    [[nodiscard]] auto snapshot() const -> const nestord::IndexMemo * { return path.empty() ? nullptr : &memo; }

    void commit(const nestord::IndexMemo & learned)
    {
        if (path.empty())
            return;
        memo.merge(learned);
        nestord::save_cache(path, memo);
    }
};

auto orders_json(const std::vector<nestord::LinearOrder> & orders) -> Json
{
    Json out = Json::array();
    for (const auto & o : orders)
        out.push_back(nestord::to_json(o));
    return out;
}

auto cmd_no(const Globals & g, const std::string & text) -> int
{
    const auto f = nestord::parse_family(text);
    Cache cache(g.cache_path);
    nestord::RecursiveIndex solver(cache.snapshot());
    const auto cert = solver.certificate(f);

    Json j;
    j["family"] = nestord::format_family(f);
    j["no"] = cert.value;
    j["expansions"] = cert.expansions;
    int code = exit_ok;
    if (g.witness)
        j["certificate"] = nestord::to_json(cert);
    if (g.oracle) {
        const auto direct = nestord::no_direct(f, nestord::max_direct_nesting);
        j["no_direct"] = direct.exceeded ? Json("> 3") : Json(direct.value);
        const bool agree = !direct.exceeded && direct.value == cert.value;
        j["oracle_agrees"] = agree;
        if (g.witness && direct.witness)
            j["direct_witness"] = nestord::to_json(*direct.witness);
        if (!agree) {
            j["finding"] = "recursive formula disagrees with the direct search";
            code = exit_failed;
        }
    }
    cache.commit(solver.local());
    if (g.format == Format::md && !g.witness && !g.oracle)
        std::cout << cert.value << '\n';
    else
        emit(g, "Index", j);
    return code;
}

auto cmd_bracket(const Globals & g, const std::string & text, int max_orders) -> int
{
    const auto f = nestord::parse_family(text);
    Cache cache(g.cache_path);
    nestord::RecursiveIndex solver(cache.snapshot());
    const auto cert = nestord::fr_bracket(f, max_orders, &solver);
    cache.commit(solver.local());

    Json j;
    j["family"] = nestord::format_family(f);
    j["no"] = cert.value;
    j["fr_lower"] = cert.fr_lower;
    j["fr_upper"] = cert.best_upper() ? Json(*cert.best_upper()) : Json(nullptr);
    j["tight"] = cert.tight();
    Json certs = Json::array();
    for (const auto & u : cert.fr_upper) {
        auto c = nestord::to_json(u);
        if (!g.witness) {
            c.erase("selectors");
            c.erase("relabeling");
        }
        certs.push_back(std::move(c));
    }
    j["certificates"] = certs;
    if (!cert.findings.empty())
        j["findings"] = cert.findings;
    emit(g, "Bracket", j, "certificates");
    return exit_ok;
}

auto cmd_classify4(const Globals & g, const std::string & text, bool close) -> int
{
    auto f = nestord::parse_family(text);
    if (close)
        f = nestord::intersection_closure(f);
    const auto label = nestord::classify4(f);
    Json j;
    j["family"] = nestord::format_family(f);
    j["class"] = static_cast<int>(label);
    j["label"] = nestord::to_string(label);
    if (g.witness)
        if (auto w = nestord::contains_cycle(f))
            j["cycle"] = nestord::to_json(*w);
    if (g.format == Format::md && !g.witness)
        std::cout << static_cast<int>(label) << '\n';
    else
        emit(g, "Classification", j);
    return exit_ok;
}

auto cmd_fprec(const Globals & g, const std::string & digits, int m) -> int
{
    const auto p = nestord::PrecOrder::parse(digits, m);
    const auto f = nestord::fprec(p);
    Json j;
    j["prec"] = digits;
    j["m"] = m;
    j["family"] = nestord::format_family(f);
    j["size"] = f.size();
    const auto pivot = nestord::onemin_pivot(p);
    j["onemin_pivot"] = pivot ? Json(*pivot) : Json(nullptr);
    if (g.witness)
        j["sprec"] = nestord::to_json(nestord::sprec(p));
    emit(g, "Two-order family", j);
    return exit_ok;
}

auto cmd_orders_search(const Globals & g, const std::string & text, int k) -> int
{
    const auto f = nestord::parse_family(text);
    const auto result = nestord::search_orders(f, k);
    Json j;
    j["family"] = nestord::format_family(f);
    j["k"] = k;
    j["found"] = result.orders.has_value();
    j["prefixes_examined"] = result.prefixes_examined;
    j["tuples_covered"] = result.tuples_covered;
    if (result.orders) {
        j["orders"] = orders_json(*result.orders);
        if (g.witness)
            j["selectors"] = nestord::is_representable(f, *result.orders).selectors;
    }
    emit(g, "Order search", j);
    return exit_ok;
}

auto cmd_sweep(const Globals & g, int m, const std::string & filter, std::optional<std::uint64_t> samples,
               int max_orders, const std::string & out_path) -> int
{
    nestord::SweepOptions sweep;
    sweep.m = m;
    sweep.filter = filter == "closed" ? nestord::SweepFilter::closed : nestord::SweepFilter::all;
    sweep.samples = samples;
    sweep.oracle = g.oracle || (m <= 3 && !samples);
    sweep.max_orders = max_orders;

    Cache cache(g.cache_path);
    nestord::ExplorerOptions options{g.jobs, g.seed, cache.snapshot()};
    const auto report = nestord::run_sweep(sweep, options);
    cache.commit(report.learned);

    auto j = nestord::to_json(report);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << j.dump(2) << '\n';
        if (!out)
            throw std::runtime_error("cannot write " + out_path);
    }
    if (g.format == Format::json) {
        std::cout << j.dump(2) << '\n';
    }
    else if (g.format == Format::csv) {
        render_csv(std::cout, j, "records");
    }
    else {
        j.erase("records");
        emit(g, "Sweep", j);
    }
    return report.findings.empty() ? exit_ok : exit_failed;
}

auto cmd_verify(const Globals & g, const std::string & which) -> int
{
    std::vector<std::string> ids;
    if (which == "all")
        ids = nestord::verification_case_ids();
    else
        ids.push_back(which);

    Cache cache(g.cache_path);
    nestord::ExplorerOptions options{g.jobs, g.seed, cache.snapshot()};
    Json cases = Json::array();
    std::map<std::string, int> tally{{"pass", 0}, {"fail", 0}, {"skipped-resource", 0}};
    for (const auto & id : ids) {
        const auto c = nestord::run_verification(id, options);
        ++tally[nestord::to_string(c.status)];
        cases.push_back(nestord::to_json(c));
    }
    Json j;
    j["seed"] = g.seed;
    j["summary"] = Json{{"pass", tally["pass"]}, {"fail", tally["fail"]}, {"skipped", tally["skipped-resource"]}};
    j["cases"] = cases;

    if (g.format == Format::md) {
        std::cout << "# Verification\n\n| id | status | description |\n|---|---|---|\n";
        for (const auto & c : cases)
            std::cout << "| " << md_cell(c["id"]) << " | " << md_cell(c["status"]) << " | "
                      << md_cell(c["description"]) << " |\n";
        for (const auto & c : cases) {
            std::cout << "\n## " << c["id"].get<std::string>() << "\n\n```json\n" << c["details"].dump(2) << "\n```\n";
            if (!c["witness"].is_null())
                std::cout << "\nWitness:\n\n```json\n" << c["witness"].dump(2) << "\n```\n";
        }
    }
    else {
        Json table = j;
        if (g.format == Format::csv)
            for (auto & c : table["cases"]) {
                c.erase("details");
                c.erase("witness");
            }
        emit(g, "Verification", table, "cases");
    }
    return tally["fail"] > 0 ? exit_failed : exit_ok;
}

auto cmd_explore(const Globals & g, int problem, std::uint64_t budget) -> int
{
    nestord::ExplorerOptions options{g.jobs, g.seed, nullptr};
    const auto j = nestord::explore(problem, budget, options);
    emit(g, "Problem " + std::to_string(problem), j, "rows");
    if (problem == 3 && !j.at("disagreements").empty())
        return exit_failed;
    return exit_ok;
}

auto cmd_cache(const Globals & g, const std::string & action) -> int
{
    if (g.cache_path.empty())
        throw CLI::ValidationError("cache", "--cache PATH is required");
    if (action == "clear") {
        std::filesystem::remove(g.cache_path);
        std::cout << "cleared " << g.cache_path << '\n';
        return exit_ok;
    }
    Cache cache(g.cache_path);
    std::map<int, std::size_t> per_ground;
    for (const auto & [key, _] : cache.memo.entries())
        ++per_ground[std::stoi(key.substr(0, key.find('|')))];
    Json j;
    j["path"] = g.cache_path;
    j["entries"] = cache.stats.loaded;
    j["skipped"] = cache.stats.skipped;
    Json by = Json::array();
    for (const auto & [m, n] : per_ground)
        by.push_back(Json{{"m", m}, {"entries", n}});
    j["by_ground"] = by;
    emit(g, "Cache", j, "by_ground");
    return exit_ok;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Nested-orders index toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::map<std::string, Format> formats{{"json", Format::json}, {"md", Format::md}, {"csv", Format::csv}};
    app.add_option("--format", g.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--cache", g.cache_path, "Index memo cache (JSON lines)");
    app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->check(CLI::Range(0, 1024));
    app.add_option("--seed", g.seed, "Sampling seed");
    app.add_flag("--witness", g.witness, "Include witnesses");
    app.add_flag("--oracle", g.oracle, "Cross-check with the direct search");

    std::string family;
    int result = exit_ok;

    auto * no = app.add_subcommand("no", "Index of a family");
    no->add_option("family", family, "Family, e.g. \"3: 12,23\"")->required();

    int max_orders = nestord::default_bracket_orders;
    auto * bracket = app.add_subcommand("bracket", "Lower bound and upper certificates for fr");
    bracket->add_option("family", family)->required();
    bracket->add_option("--max-orders", max_orders, "Largest order tuple to search")->check(CLI::Range(0, 4));

    bool close = false;
    auto * classify = app.add_subcommand("classify4", "Case analysis on {1,2,3,4}");
    classify->add_option("family", family)->required();
    classify->add_flag("--close", close, "Take the intersection closure first");

    std::string digits;
    int m = 0;
    auto * fprec = app.add_subcommand("fprec", "Family F[prec] for an order on 1..m-1");
    fprec->add_option("order", digits, "Digit string, least first")->required();
    fprec->add_option("--m", m, "Ground size")->required()->check(CLI::Range(2, 10));

    int k = 2;
    auto * search = app.add_subcommand("orders-search", "Search k orders representing a family");
    search->add_option("family", family)->required();
    search->add_option("--k", k)->check(CLI::Range(1, 4));

    std::string filter = "all";
    std::optional<std::uint64_t> samples;
    std::string out_path;
    int sweep_orders = 2;
    auto * sweep = app.add_subcommand("sweep", "Exhaustive or sampled sweep");
    sweep->add_option("--m", m)->required()->check(CLI::Range(0, 8));
    sweep->add_option("--filter", filter)->check(CLI::IsMember({"all", "closed"}));
    sweep->add_option("--samples", samples, "Random families (needed for m >= 5)");
    sweep->add_option("--max-orders", sweep_orders)->check(CLI::Range(0, 3));
    sweep->add_option("--out", out_path, "Write the JSON report here");

    std::string which = "all";
    auto * verify = app.add_subcommand("verify", "Run verification cases");
    std::vector<std::string> choices = nestord::verification_case_ids();
    choices.emplace_back("all");
    verify->add_option("case", which)->check(CLI::IsMember(choices));

    int problem = 1;
    std::uint64_t budget = 0;
    auto * explore = app.add_subcommand("explore", "Open-problem exploration");
    explore->add_option("problem", problem)->required()->check(CLI::Range(1, 3));
    explore->add_option("--budget", budget, "Problem 1: largest ground; problem 3: random families");

    std::string action;
    auto * cache = app.add_subcommand("cache", "Inspect or clear the memo cache");
    cache->add_option("action", action)->required()->check(CLI::IsMember({"stats", "clear"}));

    try {
        app.parse(argc, argv);
        if (*no)
            result = cmd_no(g, family);
        else if (*bracket)
            result = cmd_bracket(g, family, max_orders);
        else if (*classify)
            result = cmd_classify4(g, family, close);
        else if (*fprec)
            result = cmd_fprec(g, digits, m);
        else if (*search)
            result = cmd_orders_search(g, family, k);
        else if (*sweep)
            result = cmd_sweep(g, m, filter, samples, sweep_orders, out_path);
        else if (*verify)
            result = cmd_verify(g, which);
        else if (*explore)
            result = cmd_explore(g, problem, explore->count("--budget") ? budget : (problem == 3 ? 2000 : 5));
        else if (*cache)
            result = cmd_cache(g, action);
    }
    catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    catch (const nestord::ResourceGuardError & e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return exit_guard;
    }
    catch (const std::invalid_argument & e) {
        // ParseError and PreconditionError
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return result;
}
