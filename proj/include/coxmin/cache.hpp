#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace coxmin {

// Content-addressed result store. Entries are keyed by the full canonical
// text of the request; the key is stored inside the entry and verified on
// read, so hash collisions and corrupted files degrade to cache misses.
class Cache {
 public:
  Cache() = default;  // disabled cache
  explicit Cache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }
  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, const std::string& payload);

  std::size_t hits = 0, misses = 0, writes = 0;

 private:
  std::filesystem::path dir_;
  std::filesystem::path pathFor(const std::string& key) const;
};

}  // namespace coxmin
