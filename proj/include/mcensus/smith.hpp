#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace mcensus {

using Int = boost::multiprecision::cpp_int;

// Diagonal of the Smith normal form: nonzero invariant factors d1 | d2 | ...
// (all positive, divisibility chain).  The number of entries is the rank.
std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> m);

}  // namespace mcensus
