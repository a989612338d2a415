#pragma once

// Dense contraction of networks whose legs all have dimension 2.

#include "loopkit/quantum.hpp"

#include <vector>

namespace loopkit::detail {

struct LTensor {
    std::vector<int> legs;  // bit k of a data index is the value of legs[k]
    std::vector<Complex> data;
};

LTensor contract(const LTensor& a, const LTensor& b);

// Reorders the legs of t into `order` (which must be a permutation of t.legs).
std::vector<Complex> arrange(const LTensor& t, const std::vector<int>& order);

LTensor site_tensor(const Tensor& t, int phys, int up, int left, int down, int right);
LTensor bond_tensor(const Mat2& m, int a, int b);

// Contracts the list front to back.
LTensor contract_all(const std::vector<LTensor>& list);

} // namespace loopkit::detail
