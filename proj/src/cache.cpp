#include "coxmin/cache.hpp"

#include <fstream>
#include <sstream>

#include "coxmin/common.hpp"

namespace coxmin {

namespace fs = std::filesystem;

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ValidationError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

fs::path Cache::pathFor(const std::string& key) const {
  std::ostringstream name;
  name << std::hex << fnv1a64(key) << ".entry";
  return dir_ / name.str();
}

// Entry layout: "coxmin-cache 1\n<key-bytes> <payload-hash-hex> <payload-bytes>\n"
// then the key, '\n', then the payload verbatim.
std::optional<std::string> Cache::get(const std::string& key) {
  if (!enabled()) return std::nullopt;
  std::ifstream in(pathFor(key), std::ios::binary);
  if (!in) { ++misses; return std::nullopt; }
  std::string magic;
  std::getline(in, magic);
  std::size_t keyLen = 0, payloadLen = 0;
  std::string hashHex;
  {
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    if (!(hs >> keyLen >> hashHex >> payloadLen)) { ++misses; return std::nullopt; }
  }
  if (magic != "coxmin-cache 1") { ++misses; return std::nullopt; }
  std::string storedKey(keyLen, '\0');
  in.read(storedKey.data(), static_cast<std::streamsize>(keyLen));
  char sep = '\0';
  in.get(sep);
  std::string payload(payloadLen, '\0');
  in.read(payload.data(), static_cast<std::streamsize>(payloadLen));
  if (!in || sep != '\n' || storedKey != key) { ++misses; return std::nullopt; }
  std::ostringstream want;
  want << std::hex << fnv1a64(payload);
  if (want.str() != hashHex) { ++misses; return std::nullopt; }
  ++hits;
  return payload;
}

void Cache::put(const std::string& key, const std::string& payload) {
  if (!enabled()) return;
  const fs::path final = pathFor(key);
  const fs::path tmp = final.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // cache write failure is never fatal
    std::ostringstream hash;
    hash << std::hex << fnv1a64(payload);
    out << "coxmin-cache 1\n" << key.size() << ' ' << hash.str() << ' ' << payload.size() << '\n';
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    out.put('\n');
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, final, ec);
  if (!ec) ++writes;
}

}  // namespace coxmin
