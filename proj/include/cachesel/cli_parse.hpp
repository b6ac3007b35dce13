#ifndef CACHESEL_CLI_PARSE_HPP
#define CACHESEL_CLI_PARSE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cachesel {

// Deadline strings carry an optional unit suffix: s, ms, us or ns (bare
// numbers are nanoseconds). Decimal fractions are scaled exactly;
// "0.15s" -> 150000000. Sub-nanosecond leftovers are a UsageError.
uint64_t parse_duration_ns(const std::string& text);

// Size lists: comma-separated values, each either a number or a doubling
// range "lo..hi" (1..8 -> 1,2,4,8). Used for --sets and --assocs.
std::vector<uint32_t> parse_size_list(const std::string& text);

} // namespace cachesel

#endif
