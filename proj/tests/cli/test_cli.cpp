#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

/// Runs the CLI with `args` (already shell-quoted), capturing stdout.
auto run(const std::string & args) -> Run
{
    const std::string cmd = std::string("\"") + NESTORD_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE * pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

auto json_of(const Run & r) -> nlohmann::json
{
    return nlohmann::json::parse(r.out);
}

} // namespace

TEST_CASE("no: plain values")
{
    CHECK(run("no \"6: 0,1,2,3,4,5,6,12,23,34,35,56,123,235,356,2356,123456\"").out == "1\n");
    CHECK(run("no \"3: 0,1,2,3,12,13,23,123\"").out == "2\n");
    const auto r = run("no \"2: 12\"");
    CHECK(r.code == 0);
    CHECK(r.out == "-1\n");
}

TEST_CASE("no: json with oracle and witness")
{
    const auto r = run("--format json --oracle --witness no \"3: 12,23,13\"");
    REQUIRE(r.code == 0);
    const auto j = json_of(r);
    CHECK(j["no"] == 2);
    CHECK(j["no_direct"] == 2);
    CHECK(j["oracle_agrees"] == true);
    CHECK(j.contains("certificate"));
    CHECK(j["direct_witness"]["n"] == 2);
}

TEST_CASE("exit codes")
{
    CHECK(run("no \"3: 14\"").code == 2);
    CHECK(run("no").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("verify nope").code == 2);
    CHECK(run("fprec 1234 --m 6").code == 2);
    CHECK(run("no \"9: 1,2\"").code == 3);
    CHECK(run("sweep --m 5").code == 3);
    CHECK(run("verify noall").code == 0);
    CHECK(run("verify fprec").code == 1);
    CHECK(run("--help").code == 0);
}

TEST_CASE("bracket, classify4, fprec, orders-search")
{
    const auto b = json_of(run("--format json bracket \"3: 0,1,2,3,12,13,23,123\""));
    CHECK(b["fr_lower"] == 2);
    CHECK(b["fr_upper"] == 2);
    CHECK(b["tight"] == true);

    const auto c = json_of(run("--format json classify4 --close \"4: 12,23,13\""));
    CHECK(c["label"] == "cyclic");
    CHECK(run("classify4 \"4: 12,23\"").code == 2);

    const auto f = json_of(run("--format json fprec 1234 --m 5"));
    CHECK(f["size"] == 16);
    CHECK(f["onemin_pivot"] == 1);

    const auto none = run("--format json orders-search \"5: 0,1,2,3,4,5,12,13,14,15,123,124,125,1234,1235,12345\" --k 2");
    CHECK(none.code == 0);
    const auto s = json_of(none);
    CHECK(s["found"] == false);
    CHECK(s["prefixes_examined"] == 120);
}

TEST_CASE("sweep json and csv")
{
    const auto j = json_of(run("--format json sweep --m 3 --max-orders 1"));
    CHECK(j["records"].size() == 256);
    CHECK(j["histogram"]["2"] == 32);

    const auto csv = run("--format csv sweep --m 2");
    CHECK(csv.code == 0);
    CHECK(csv.out.find("key,") != std::string::npos);
}

TEST_CASE("cache stats, reuse and clear")
{
    const auto path = std::filesystem::temp_directory_path() / "nestord_cli_cache.jsonl";
    std::filesystem::remove(path);
    const std::string flag = "--cache \"" + path.string() + "\" ";

    CHECK(run(flag + "no \"4: 12,23,34,13\"").out == "2\n");
    CHECK(std::filesystem::exists(path));
    const auto stats = json_of(run("--format json " + flag + "cache stats"));
    CHECK(stats["entries"].get<int>() > 0);
    CHECK(stats["skipped"] == 0);

    const auto warm = json_of(run("--format json " + flag + "no \"4: 12,23,34,13\""));
    CHECK(warm["no"] == 2);
    CHECK(warm["expansions"] == 0);

    {
        std::ofstream out(path, std::ios::app);
        out << "garbage\n";
    }
    CHECK(json_of(run("--format json " + flag + "cache stats"))["skipped"] == 1);

    CHECK(run(flag + "cache clear").code == 0);
    CHECK_FALSE(std::filesystem::exists(path));
    CHECK(run("cache stats").code == 2);
}

TEST_CASE("explore")
{
    const auto p2 = json_of(run("--format json explore 2"));
    CHECK(p2["no_rec"] == 1);
    CHECK(p2["fr_upper"] == 2);
    CHECK(run("explore 7").code == 2);
}
