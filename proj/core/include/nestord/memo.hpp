#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

namespace nestord {

/// Index values keyed by canonical family serialization ("m|h1.h2...").
class IndexMemo {
  public:
    [[nodiscard]] auto find(const std::string & key) const -> std::optional<int>;
    void insert(const std::string & key, int value);

    /// Copies every entry of `other` not already present.
    void merge(const IndexMemo & other);

    [[nodiscard]] auto size() const noexcept -> std::size_t { return values_.size(); }
    void clear() { values_.clear(); }

    [[nodiscard]] auto entries() const -> const std::unordered_map<std::string, int> & { return values_; }

  private:
    std::unordered_map<std::string, int> values_;
};

struct CacheLoadStats {
    std::size_t loaded = 0;
    std::size_t skipped = 0; ///< corrupt or unsupported lines
};

/// JSON lines {"v":1,"key":"...","no":int}. A missing file loads nothing.
auto load_cache(const std::filesystem::path & path, IndexMemo & memo) -> CacheLoadStats;

/// Writes sorted JSON lines to a temporary sibling and renames it over `path`.
void save_cache(const std::filesystem::path & path, const IndexMemo & memo);

} // namespace nestord
