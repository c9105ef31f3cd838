#pragma once

#include "epocs/signal.hpp"

namespace epocs {

// Affine set {x : normal . x = offset}.  Zero normals are rejected at
// construction so every stored hyperplane admits a projection.
class Hyperplane {
public:
    Hyperplane(std::vector<double> normal, double offset);

    const std::vector<double>& normal() const { return normal_; }
    double offset() const { return offset_; }
    double normal_norm_sq() const { return norm_sq_; }

    std::size_t dim() const { return normal_.size(); }

private:
    std::vector<double> normal_;
    double offset_ = 0.0;
    double norm_sq_ = 0.0;
};

// Closed-form orthogonal projection x' = x - ((a.x - b)/|a|^2) a.
std::vector<double> project_onto_hyperplane(std::span<const double> x, const Hyperplane& h);

// Projection onto the level half-space {(w, y) : y <= alpha}: clamps y only.
LiftedPoint project_onto_level_set(const LiftedPoint& p, double alpha);

double euclidean_distance(std::span<const double> x, std::span<const double> z);

} // namespace epocs
