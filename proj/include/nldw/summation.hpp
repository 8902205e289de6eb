#pragma once

#include <cstddef>
#include <span>

namespace nldw {

// All grid reductions in this project go through the pairwise trees below so
// that results are independent of how callers partition the work (the
// documented reduction tolerance is 1e-13 relative).

// Sum of f(i) over i in [begin, end), pairwise with a fixed leaf size.
template <typename F>
double pairwise_sum_indexed(std::size_t begin, std::size_t end, F&& f) {
    const std::size_t len = end - begin;
    if (len <= 32) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += f(i);
        return s;
    }
    const std::size_t mid = begin + len / 2;
    return pairwise_sum_indexed(begin, mid, f) + pairwise_sum_indexed(mid, end, f);
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return v[i]; });
}

inline double pairwise_dot(std::span<const double> a, std::span<const double> b) {
    return pairwise_sum_indexed(0, a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

}  // namespace nldw
