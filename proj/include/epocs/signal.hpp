#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace epocs {

// Flat real vector of length N.  Image-typed signals carry a (width, height)
// shape tag and address pixel (i, j) as data[i * width + j], row-major.
class Signal {
public:
    Signal() = default;

    explicit Signal(std::vector<double> values)
        : data_(std::move(values)) {}

    Signal(std::vector<double> values, int width, int height);

    static Signal zeros(std::size_t n) { return Signal(std::vector<double>(n, 0.0)); }
    static Signal zeros_like(const Signal& other);

    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    bool is_image() const { return width_ > 0; }
    int width() const { return width_; }
    int height() const { return height_; }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    // Pixel access for image-typed signals, row i, column j.
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * width_ + j]; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * width_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }
    std::span<const double> view() const { return data_; }

    // Returns a copy of other's shape tag applied to raw values.
    static Signal with_shape_of(std::vector<double> values, const Signal& like);

    bool all_finite() const;

private:
    std::vector<double> data_;
    int width_ = 0;
    int height_ = 0;
};

// Point in R^{N+1}: the signal part w plus the lifted coordinate y.
struct LiftedPoint {
    Signal w;
    double y = 0.0;
};

// Dense vector helpers shared by the projection code.
double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);
double norm2(std::span<const double> a);

} // namespace epocs
