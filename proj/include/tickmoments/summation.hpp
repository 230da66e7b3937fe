#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace tickmoments {

/// x^n by repeated multiplication; n >= 0.
constexpr double ipow(double x, int n) noexcept {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

namespace detail {
inline constexpr std::size_t kPairwiseBlock = 16;
}

/// Pairwise (cascade) summation of term(i) for i in [begin, end).
/// Rounding error grows as O(log n) instead of O(n) for naive accumulation.
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, Term&& term) {
    const std::size_t n = end - begin;
    if (n <= detail::kPairwiseBlock) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum(0, xs.size(), [xs](std::size_t i) { return xs[i]; });
}

}  // namespace tickmoments
