#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wpa/perm.hpp"

namespace wpa {

inline constexpr std::size_t kMaxSpecDegree = 1'000'000;

/// Parses the group-spec mini-language. Canonical generators:
///   cyc:m         (0 1 ... m-1)
///   sym:m         (0 1), (0 1 ... m-1)
///   alt:m         (0 1 2) and (0 1 ... m-1) for odd m, (1 2 ... m-1) for even m
///   psl2:p        x -> x+1 and x -> -1/x on F_p plus the point p standing for infinity
///   perm:d:G;G;.. each G is one or more parenthesized 0-based cycles, e.g. (0 1)(2 3)
/// Named families carry their order from the closed formula; perm: groups do not.
PermGroup parse_group_spec(std::string_view spec);

/// Comma-separated list of group specs, e.g. "cyc:2,cyc:3,cyc:2".
std::vector<PermGroup> parse_sequence_spec(std::string_view spec);

/// Splits a sequence spec on top-level commas without parsing the entries.
std::vector<std::string> split_sequence_spec(std::string_view spec);

}  // namespace wpa
