#include "bsrt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bsrt {

Point center(const SymbolBox& box) {
    return {box.x_min + box.width / 2.0, box.y_min + box.height / 2.0};
}

double wrap_angle(double theta) {
    constexpr double pi = std::numbers::pi;
    while (theta > pi) theta -= 2.0 * pi;
    while (theta <= -pi) theta += 2.0 * pi;
    return theta;
}

double interval_overlap(double lo_a, double hi_a, double lo_b, double hi_b) {
    return std::max(0.0, std::min(hi_a, hi_b) - std::max(lo_a, lo_b));
}

std::optional<double> center_offset_theta(const SymbolBox& ref, const SymbolBox& adj) {
    const Point a = center(ref);
    const Point b = center(adj);
    const double dx = b.x - a.x;
    // Image y grows downward; flip so "above" is positive.
    const double dy = a.y - b.y;
    if (dx == 0.0 && dy == 0.0) {
        return std::nullopt;
    }
    double theta = std::atan2(dy, dx);
    if (theta == -std::numbers::pi) {
        theta = std::numbers::pi;  // keep the range (-pi, pi]
    }
    return theta;
}

std::pair<double, double> aspect_ratios(const SymbolBox& ref, const SymbolBox& adj) {
    // "length" is the horizontal extent, "width" the vertical one.
    return {ref.width / adj.width, ref.height / adj.height};
}

std::pair<double, double> overlap_ratios(const SymbolBox& ref, const SymbolBox& adj) {
    const double y_overlap = interval_overlap(ref.y_min, ref.y_max(), adj.y_min, adj.y_max());
    const double x_overlap = interval_overlap(ref.x_min, ref.x_max(), adj.x_min, adj.x_max());
    return {y_overlap / ref.height, x_overlap / ref.width};
}

std::optional<PairFeatures> pair_features(const SymbolBox& ref, const SymbolBox& adj) {
    const auto theta = center_offset_theta(ref, adj);
    if (!theta) {
        return std::nullopt;
    }
    const auto [alpha, beta] = aspect_ratios(ref, adj);
    const auto [lambda, mu] = overlap_ratios(ref, adj);
    return PairFeatures{*theta, alpha, beta, lambda, mu};
}

}  // namespace bsrt
