#pragma once

#include "multiadic/rational.hpp"

#include <vector>

namespace multiadic {

using IntRow = std::vector<Integer>;

// Rows of `basis` are LLL-reduced in place (delta = 3/4). Rows must be independent.
void lll_reduce(std::vector<IntRow>& basis);

// Nearest-plane approximation: coefficients c (w.r.t. the rows of a reduced basis)
// with sum c_i b_i close to target.
std::vector<Integer> babai(const std::vector<IntRow>& basis, const std::vector<Rational>& target);

}  // namespace multiadic
