#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coxmin {

// Bad user input (malformed files, non-SL generators, ...). CLI exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured cap was reached before the computation could finish
// (invariant search degree cap, step iteration cap). CLI exit code 3.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural invariant failed; indicates a bug, not bad input. CLI exit code 4.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Always-on invariant check; never compiled out.
#define COXMIN_CHECK(cond, msg)                                   \
  do {                                                            \
    if (!(cond)) throw ::coxmin::InternalError(std::string(msg)); \
  } while (0)

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  auto p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

inline std::size_t hashCombine(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

}  // namespace coxmin
