#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace walklll {

/// 64-bit FNV-1a. Used for content hashes embedded in reports and
/// certificates; not a cryptographic commitment.
class Fnv1a {
public:
    Fnv1a &update(std::span<const std::uint8_t> bytes);
    Fnv1a &update(std::string_view text);
    Fnv1a &update_u64(std::uint64_t value);
    Fnv1a &update_i64(std::int64_t value) { return update_u64(static_cast<std::uint64_t>(value)); }

    std::uint64_t value() const { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 14695981039346656037ull;
};

std::string to_hex64(std::uint64_t value);

} // namespace walklll
