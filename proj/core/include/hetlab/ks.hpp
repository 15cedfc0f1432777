#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace hetlab {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
// Inputs need not be sorted.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace hetlab
