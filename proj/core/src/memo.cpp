#include <nestord/memo.hpp>

#include <nestord/family.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace nestord {

auto IndexMemo::find(const std::string & key) const -> std::optional<int>
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

void IndexMemo::insert(const std::string & key, int value) { values_.emplace(key, value); }

void IndexMemo::merge(const IndexMemo & other)
{
    for (const auto & [key, value] : other.values_)
        values_.emplace(key, value);
}

auto load_cache(const std::filesystem::path & path, IndexMemo & memo) -> CacheLoadStats
{
    CacheLoadStats stats;
    std::ifstream in(path);
    if (!in)
        return stats;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            const auto j = nlohmann::json::parse(line);
            if (j.at("v").get<int>() != 1)
                throw std::runtime_error("version");
            const auto key = j.at("key").get<std::string>();
            const int value = j.at("no").get<int>();
            // Reject keys that do not denote a canonical family.
            const auto family = parse_key(key);
            if (family.ground_size() <= max_canonical_ground_size && canonical_key(family) != key)
                throw std::runtime_error("non-canonical key");
            if (value < -1 || value >= std::max(1, family.ground_size()))
                throw std::runtime_error("value out of range");
            memo.insert(key, value);
            ++stats.loaded;
        }
        catch (const std::exception &) {
            ++stats.skipped;
        }
    }
    return stats;
}

void save_cache(const std::filesystem::path & path, const IndexMemo & memo)
{
    std::vector<std::pair<std::string, int>> rows(memo.entries().begin(), memo.entries().end());
    std::sort(rows.begin(), rows.end());

    auto temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + temp.string());
        for (const auto & [key, value] : rows) {
            nlohmann::ordered_json j;
            j["v"] = 1;
            j["key"] = key;
            j["no"] = value;
            out << j.dump() << '\n';
        }
        if (!out.flush())
            throw std::runtime_error("cannot write cache file " + temp.string());
    }
    std::filesystem::rename(temp, path);
}

} // namespace nestord
