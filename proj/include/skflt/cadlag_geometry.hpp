#pragma once

#include <cstddef>
#include <vector>

#include "skflt/step_path.hpp"

namespace skflt {

/// One axis-aligned segment of a completed graph, stored with traversal
/// endpoints (ax,ay) -> (bx,by). Horizontal segments are constancy plateaus
/// (ay == by), vertical segments fill jumps (ax == bx).
struct GraphSegment {
    double ax, ay, bx, by;

    bool vertical() const { return ax == bx; }
    double length() const;  // L-infinity arclength (one coordinate moves)
};

/// The completed graph of a step path: plateaus joined by vertical jump
/// connectors, ordered by time, with coinciding consecutive endpoints.
/// Zero-size jumps produce no connector (adjacent plateaus are merged).
struct CompletedGraph {
    std::vector<GraphSegment> segments;

    static CompletedGraph from(const StepPath& path);

    double arc_length() const;
    bool connected() const;  // consecutive endpoints coincide
};

CompletedGraph completed_graph(const StepPath& path);

/// Exact Skorohod M2 distance: symmetric Hausdorff distance between the two
/// completed graphs under the product metric d((t1,y1),(t2,y2)) =
/// max(|t1-t2|, |y1-y2|).
///
/// For a point moving linearly along one segment, its L-infinity distance to
/// any axis-aligned segment is piecewise linear in the parameter, so each
/// directed supremum is attained at a segment endpoint, at a kink of one
/// per-segment distance function, or at a crossing of two of them. The
/// implementation enumerates exactly these candidates, pruned by the
/// 1-Lipschitz bound sup <= (d(end1) + d(end2) + length)/2.
double m2_distance(const StepPath& x1, const StepPath& x2);

/// Guaranteed enclosure of the exact M2 distance from arclength sampling:
/// both graphs are sampled at spacing <= grid_step and each sample's exact
/// distance to the full opposing graph is computed, so the sampled supremum
/// underestimates the true one by at most grid_step.
struct DistanceInterval {
    double lower;
    double upper;
};
DistanceInterval m2_distance_oracle(const StepPath& x1, const StepPath& x2, double grid_step);

/// sup_t |x1(t) - x2(t)| with right-continuous evaluation, including t = 0
/// and t = 1. Dominates the M2 distance.
double uniform_distance(const StepPath& x1, const StepPath& x2);

}  // namespace skflt
