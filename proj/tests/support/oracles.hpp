#pragma once

// Test-only reference implementations, kept independent of the library code
// they check.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bsrt/types.hpp"

namespace oracles {

// Deterministic uniform helpers (std distributions are not portable).
inline double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

// ---------------------------------------------------------------------------
// Rasterization: boxes restricted to a 1/kGrid lattice are counted cell by
// cell on that grid, making shared-projection ratios exact.

constexpr int kGrid = 8;

inline bsrt::SymbolBox lattice_box(std::mt19937_64& rng) {
    bsrt::SymbolBox b;
    b.label = "x";
    b.x_min = static_cast<double>(below(rng, 256)) / kGrid;
    b.y_min = static_cast<double>(below(rng, 256)) / kGrid;
    b.width = static_cast<double>(1 + below(rng, 120)) / kGrid;
    b.height = static_cast<double>(1 + below(rng, 120)) / kGrid;
    b.score = 1.0;
    return b;
}

inline long shared_cells(double lo_a, double hi_a, double lo_b, double hi_b) {
    const long a0 = std::lround(lo_a * kGrid), a1 = std::lround(hi_a * kGrid);
    const long b0 = std::lround(lo_b * kGrid), b1 = std::lround(hi_b * kGrid);
    long count = 0;
    for (long k = std::min(a0, b0); k < std::max(a1, b1); ++k) {
        if (k >= a0 && k < a1 && k >= b0 && k < b1) ++count;
    }
    return count;
}

inline long cells(double lo, double hi) {
    return std::lround(hi * kGrid) - std::lround(lo * kGrid);
}

// (lambda, mu) by counting shared rows/columns.
inline std::pair<double, double> raster_overlap_ratios(const bsrt::SymbolBox& ref,
                                                       const bsrt::SymbolBox& adj) {
    const long rows = shared_cells(ref.y_min, ref.y_max(), adj.y_min, adj.y_max());
    const long cols = shared_cells(ref.x_min, ref.x_max(), adj.x_min, adj.x_max());
    return {static_cast<double>(rows) / static_cast<double>(cells(ref.y_min, ref.y_max())),
            static_cast<double>(cols) / static_cast<double>(cells(ref.x_min, ref.x_max()))};
}

// area(outer ∩ inner) / area(inner) by pixel counting.
inline double raster_containment(const bsrt::SymbolBox& outer, const bsrt::SymbolBox& inner) {
    const long rows = shared_cells(outer.y_min, outer.y_max(), inner.y_min, inner.y_max());
    const long cols = shared_cells(outer.x_min, outer.x_max(), inner.x_min, inner.x_max());
    const long inner_area = cells(inner.x_min, inner.x_max()) * cells(inner.y_min, inner.y_max());
    return static_cast<double>(rows * cols) / static_cast<double>(inner_area);
}

// ---------------------------------------------------------------------------
// Edit distance by plain exhaustive recursion (no memoization).

inline std::size_t naive_edit_distance(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b,
                                       std::size_t i, std::size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    const std::size_t del = naive_edit_distance(a, b, i + 1, j) + 1;
    const std::size_t ins = naive_edit_distance(a, b, i, j + 1) + 1;
    const std::size_t sub =
        naive_edit_distance(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    return std::min({del, ins, sub});
}

inline std::size_t naive_edit_distance(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
    return naive_edit_distance(a, b, 0, 0);
}

// ---------------------------------------------------------------------------
// Otsu by exhaustive search: for every candidate threshold, recompute both
// class weights and means from scratch and keep the best (smallest t wins a
// tie).

inline int exhaustive_otsu(const std::vector<std::uint64_t>& hist /* 256 bins */) {
    double best_var = -1.0;
    int best_t = 0;
    for (int t = 0; t < 256; ++t) {
        double w0 = 0, w1 = 0, m0 = 0, m1 = 0;
        for (int i = 0; i <= t; ++i) {
            w0 += static_cast<double>(hist[i]);
            m0 += static_cast<double>(i) * static_cast<double>(hist[i]);
        }
        for (int i = t + 1; i < 256; ++i) {
            w1 += static_cast<double>(hist[i]);
            m1 += static_cast<double>(i) * static_cast<double>(hist[i]);
        }
        if (w0 == 0 || w1 == 0) continue;
        m0 /= w0;
        m1 /= w1;
        const double var = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

}  // namespace oracles
