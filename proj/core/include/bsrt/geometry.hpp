#pragma once

#include <optional>
#include <utility>

#include "bsrt/types.hpp"

namespace bsrt {

/// The five geometric quantities computed for an ordered symbol pair
/// (ref = reading-order predecessor, adj = candidate neighbour).
///
/// theta  — angle of the center-to-center vector, up-positive, in (-pi, pi]
/// alpha  — horizontal extent ratio ref/adj
/// beta   — vertical extent ratio ref/adj
/// lambda — y-interval overlap divided by ref's height, in [0, 1]
/// mu     — x-interval overlap divided by ref's width, in [0, 1]
struct PairFeatures {
    double theta;
    double alpha;
    double beta;
    double lambda;
    double mu;
};

struct Point {
    double x;
    double y;
};

/// Center of a box: (x_min + width/2, y_min + height/2).
Point center(const SymbolBox& box);

/// Normalizes an angle to (-pi, pi].
double wrap_angle(double theta);

/// Length of the intersection of [lo_a, hi_a] and [lo_b, hi_b], clamped at 0.
double interval_overlap(double lo_a, double hi_a, double lo_b, double hi_b);

/// Angle of the vector from center(ref) to center(adj), measured after
/// flipping the image y axis so that "adj above ref" yields a positive angle.
/// Returns nullopt when the centers coincide (degenerate pair).
std::optional<double> center_offset_theta(const SymbolBox& ref, const SymbolBox& adj);

/// (alpha, beta): horizontal and vertical extent ratios ref/adj.
std::pair<double, double> aspect_ratios(const SymbolBox& ref, const SymbolBox& adj);

/// (lambda, mu): projected interval overlaps divided by ref's extents.
/// lambda uses the y intervals, mu the x intervals. Both lie in [0, 1]
/// because an intersection with ref's interval never exceeds that interval.
std::pair<double, double> overlap_ratios(const SymbolBox& ref, const SymbolBox& adj);

/// All five features; nullopt when the pair is degenerate.
std::optional<PairFeatures> pair_features(const SymbolBox& ref, const SymbolBox& adj);

}  // namespace bsrt
