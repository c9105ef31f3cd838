#include "epocs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epocs {

Hyperplane::Hyperplane(std::vector<double> normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
    norm_sq_ = norm_sq(normal_);
    if (!(norm_sq_ > 0.0))
        throw std::invalid_argument("Hyperplane: normal must be nonzero");
    if (!std::isfinite(norm_sq_) || !std::isfinite(offset_))
        throw std::invalid_argument("Hyperplane: non-finite coefficients");
}

std::vector<double> project_onto_hyperplane(std::span<const double> x, const Hyperplane& h) {
    if (x.size() != h.dim())
        throw std::invalid_argument("project_onto_hyperplane: dimension mismatch");
    const double viol = dot(x, h.normal()) - h.offset();
    const double step = viol / h.normal_norm_sq();
    std::vector<double> out(x.begin(), x.end());
    const auto& a = h.normal();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= step * a[i];
    return out;
}

LiftedPoint project_onto_level_set(const LiftedPoint& p, double alpha) {
    return LiftedPoint{p.w, std::min(p.y, alpha)};
}

double euclidean_distance(std::span<const double> x, std::span<const double> z) {
    if (x.size() != z.size())
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - z[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace epocs
