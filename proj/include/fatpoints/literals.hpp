#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fatpoints/divisor.hpp"
#include "fatpoints/fat_points.hpp"

namespace fatpoints {

class LiteralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "3,2,1,1", "9^7", "15^4,13^2,9,2^4"; the empty string is the empty scheme.
FatPointScheme parse_scheme(std::string_view text);

/// "19; 7^7,4,1". Multiplicities may be negative; "d;" has no points.
DivisorClass parse_class(std::string_view text);

/// Positional run-length form, e.g. "15^4,13^2,9,2^4". parse_scheme inverts it.
std::string render_scheme(const FatPointScheme& z);

/// "d; runs". With `sorted` the multiplicities are listed in descending order,
/// which loses point identity and is meant for display only.
std::string render_class(const DivisorClass& c, bool sorted = false);

}  // namespace fatpoints
