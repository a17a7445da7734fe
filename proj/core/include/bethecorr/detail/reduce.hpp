#pragma once

#include <vector>

#include "bethecorr/types.hpp"

namespace bethecorr::detail {

// Pairwise reduction of a term list: a fixed association order independent
// of any threading of term production, with O(log n) rounding growth.
inline Complex pairwise_sum(std::vector<Complex> terms) {
    if (terms.empty()) return Complex{0.0, 0.0};
    std::size_t n = terms.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) terms[i] += terms[i + half];
        n = half;
    }
    return terms[0];
}

} // namespace bethecorr::detail
