#include "epocs/costs.hpp"

#include <cmath>
#include <stdexcept>

namespace epocs {

namespace {

double tv1d_eval(const Signal& w) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) s += std::fabs(w[k + 1] - w[k]);
    return s;
}

Signal tv1d_subgradient(const Signal& w) {
    Signal g = Signal::zeros_like(w);
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        const double s = sign_of(w[k + 1] - w[k]);
        g[k + 1] += s;
        g[k] -= s;
    }
    return g;
}

double tv2d_eval(const Signal& w) {
    const int W = w.width(), H = w.height();
    double s = 0.0;
    for (int i = 0; i + 1 < H; ++i)
        for (int j = 0; j < W; ++j) s += std::fabs(w.at(i + 1, j) - w.at(i, j));
    for (int i = 0; i < H; ++i)
        for (int j = 0; j + 1 < W; ++j) s += std::fabs(w.at(i, j + 1) - w.at(i, j));
    return s;
}

Signal tv2d_subgradient(const Signal& w) {
    const int W = w.width(), H = w.height();
    Signal g = Signal::zeros_like(w);
    for (int i = 0; i + 1 < H; ++i)
        for (int j = 0; j < W; ++j) {
            const double s = sign_of(w.at(i + 1, j) - w.at(i, j));
            g.at(i + 1, j) += s;
            g.at(i, j) -= s;
        }
    for (int i = 0; i < H; ++i)
        for (int j = 0; j + 1 < W; ++j) {
            const double s = sign_of(w.at(i, j + 1) - w.at(i, j));
            g.at(i, j + 1) += s;
            g.at(i, j) -= s;
        }
    return g;
}

} // namespace

double TvCost::eval(const Signal& w) const {
    if (mode_ == Mode::two_dimensional) {
        if (!w.is_image())
            throw std::invalid_argument("TvCost: 2D mode requires an image shape tag");
        return tv2d_eval(w);
    }
    return tv1d_eval(w);
}

Signal TvCost::subgradient(const Signal& w) const {
    if (mode_ == Mode::two_dimensional) {
        if (!w.is_image())
            throw std::invalid_argument("TvCost: 2D mode requires an image shape tag");
        return tv2d_subgradient(w);
    }
    return tv1d_subgradient(w);
}

std::string TvCost::name() const {
    return mode_ == Mode::two_dimensional ? "tv2d" : "tv1d";
}

double L1Cost::eval(const Signal& w) const {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += std::fabs(w[k]);
    return s;
}

Signal L1Cost::subgradient(const Signal& w) const {
    Signal g = Signal::zeros_like(w);
    for (std::size_t k = 0; k < w.size(); ++k) g[k] = sign_of(w[k]);
    return g;
}

LassoCost::LassoCost(Signal observation, double lambda)
    : v_(std::move(observation)), lambda_(lambda) {
    if (lambda < 0.0)
        throw std::invalid_argument("LassoCost: lambda must be nonnegative");
}

double LassoCost::eval(const Signal& w) const {
    if (w.size() != v_.size())
        throw std::invalid_argument("LassoCost: dimension mismatch");
    double fid = 0.0, l1 = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double d = v_[k] - w[k];
        fid += d * d;
        l1 += std::fabs(w[k]);
    }
    return 0.5 * fid + lambda_ * l1;
}

Signal LassoCost::subgradient(const Signal& w) const {
    if (w.size() != v_.size())
        throw std::invalid_argument("LassoCost: dimension mismatch");
    Signal g = Signal::zeros_like(w);
    for (std::size_t k = 0; k < w.size(); ++k)
        g[k] = (w[k] - v_[k]) + lambda_ * sign_of(w[k]);
    return g;
}

ScaledCost::ScaledCost(const ConvexCost& inner, double alpha)
    : inner_(inner), alpha_(alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("ScaledCost: alpha must be positive");
}

Signal ScaledCost::subgradient(const Signal& w) const {
    Signal g = inner_.subgradient(w);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] *= alpha_;
    return g;
}

std::string ScaledCost::name() const { return inner_.name() + "*" + std::to_string(alpha_); }

} // namespace epocs
