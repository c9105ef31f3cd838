#pragma once

#include "epocs/costs.hpp"
#include "epocs/geometry.hpp"

#include <utility>
#include <vector>

namespace epocs {

enum class StopReason { distance_increase, tolerance, max_iter };

// Iteration record of an epigraph projection.  Each iterate is the lifted
// hyperplane-projection point; distances are |target - iterate|^2.
struct ProjectionTrace {
    std::vector<LiftedPoint> iterates;
    std::vector<double> distances;
    StopReason stop_reason = StopReason::max_iter;

    std::size_t stop_index() const { return distances.empty() ? 0 : distances.size() - 1; }
};

// Membership wrapper for {(w, y) : y >= cost(w)}.
struct EpigraphSet {
    const ConvexCost& cost;

    bool contains(const LiftedPoint& p, double tol = 1e-9) const {
        return p.y >= cost.eval(p.w) - tol;
    }
};

// Supporting hyperplane of the epigraph at the lifted anchor (w, cost(w)):
// normal [g, -1], offset g.w - cost(w), with g the subgradient at w.
// Every epigraph member (z, y) satisfies g.z - y <= offset.
Hyperplane supporting_hyperplane(const ConvexCost& cost, const Signal& w);

struct EpigraphOptions {
    double tol = 1e-6;
    int max_iter = 500;
    // Cutting-plane refinement after the distance monitor fires: number of
    // rounds and the working bundle size.
    int refine_rounds = 10;
    int max_cuts = 30;
};

// Iterative projection of target onto the epigraph of cost.  Walks supporting
// hyperplanes while the recorded distance decreases, then refines by
// projecting the target onto the bundle of accumulated supporting halfspaces.
// The returned point lies on the graph: its y equals cost(w) (members and
// flat anchors are returned analytically).
std::pair<LiftedPoint, ProjectionTrace>
project_onto_epigraph(const ConvexCost& cost, const LiftedPoint& target,
                      double tol = 1e-6, int max_iter = 500);

std::pair<LiftedPoint, ProjectionTrace>
project_onto_epigraph(const ConvexCost& cost, const LiftedPoint& target,
                      const EpigraphOptions& opts);

// Brute-force test oracle: scans the graph {(w, cost(w))} over [lo, hi]^dim
// for the point closest to target.  Exhaustive in 1D, hierarchical multi-start
// scan in 2D/3D; accuracy O(step).  Dimensions above 3 are rejected.
LiftedPoint oracle_project_epigraph(const ConvexCost& cost, const LiftedPoint& target,
                                    double lo, double hi, double step);

} // namespace epocs
