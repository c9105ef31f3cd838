#include "epocs/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace epocs {

Signal::Signal(std::vector<double> values, int width, int height)
    : data_(std::move(values)), width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("Signal: image shape must be positive");
    if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) != data_.size())
        throw std::invalid_argument("Signal: shape tag does not match data length");
}

Signal Signal::zeros_like(const Signal& other) {
    Signal s(std::vector<double>(other.size(), 0.0));
    s.width_ = other.width_;
    s.height_ = other.height_;
    return s;
}

Signal Signal::with_shape_of(std::vector<double> values, const Signal& like) {
    if (values.size() != like.size())
        throw std::invalid_argument("Signal::with_shape_of: length mismatch");
    Signal s(std::move(values));
    s.width_ = like.width_;
    s.height_ = like.height_;
    return s;
}

bool Signal::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

} // namespace epocs
