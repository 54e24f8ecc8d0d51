#include "walklll/hash.hpp"

#include <cstdio>

namespace walklll {

namespace {
constexpr std::uint64_t kPrime = 1099511628211ull;
}

Fnv1a &Fnv1a::update(std::span<const std::uint8_t> bytes) {
    for (std::uint8_t b : bytes) {
        state_ ^= b;
        state_ *= kPrime;
    }
    return *this;
}

Fnv1a &Fnv1a::update(std::string_view text) {
    for (char c : text) {
        state_ ^= static_cast<std::uint8_t>(c);
        state_ *= kPrime;
    }
    return *this;
}

Fnv1a &Fnv1a::update_u64(std::uint64_t value) {
    // little-endian byte order regardless of host
    for (int i = 0; i < 8; ++i) {
        state_ ^= (value >> (8 * i)) & 0xffu;
        state_ *= kPrime;
    }
    return *this;
}

std::string Fnv1a::hex() const { return to_hex64(state_); }

std::string to_hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace walklll
