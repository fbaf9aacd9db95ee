#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace vcop {

// Shortest representation that round-trips exactly through parse_double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// FNV-1a 64-bit content digest, rendered as 16 hex digits.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is split by
// index, so writes to per-index slots stay deterministic.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace vcop
