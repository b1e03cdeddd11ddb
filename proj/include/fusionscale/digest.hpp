#pragma once

#include <cstdint>
#include <cstring>

namespace fusionscale {

// Incremental FNV-1a, used to fingerprint deployments and graphs.
class Fnv1a {
public:
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ull;
    }
  }

  void add_u64(std::uint64_t v) { bytes(&v, sizeof v); }

  void add_f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    add_u64(bits);
  }

  std::uint64_t value() const { return hash_; }

private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace fusionscale
