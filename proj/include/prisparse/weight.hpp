#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace prisparse {

// Exact edge weights and distances. All weight accounting goes through this
// type so that bound checks (ratio <= 4, stretch <= alpha) are exact.
// Compare against Weight(x), never a bare int: under C++20 boost's mixed
// int/rational operator== recurses forever.
using Weight = boost::rational<std::int64_t>;

// Parses "3", "7/2" or "-1/4". Throws std::invalid_argument on malformed text
// or a zero denominator.
Weight parse_weight(std::string_view text);

// Inverse of parse_weight: integers print without a denominator.
std::string format_weight(const Weight& w);

double to_double(const Weight& w);

}  // namespace prisparse
