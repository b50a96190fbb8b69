#ifndef EDCHROM_FIELD_HPP
#define EDCHROM_FIELD_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace edchrom {

// N x m array of per-cell values, stored component-major so that each
// component's profile is contiguous (the reconstruction stencils sweep
// along cells of one component at a time).
struct Field {
    int n = 0, m = 0;
    std::vector<double> v;

    Field() = default;
    Field(int n_, int m_, double fill = 0.0)
        : n(n_), m(m_), v(static_cast<std::size_t>(n_) * m_, fill) {}

    double& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * m + j]; }
    double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * m + j]; }

    std::span<double> comp(int i) { return {v.data() + static_cast<std::size_t>(i) * m, static_cast<std::size_t>(m)}; }
    std::span<const double> comp(int i) const { return {v.data() + static_cast<std::size_t>(i) * m, static_cast<std::size_t>(m)}; }

    void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

} // namespace edchrom

#endif
