#pragma once

#include "epocs/signal.hpp"

#include <string>

namespace epocs {

// Convex cost with a subgradient oracle.  All implemented instances are
// nonnegative, so the level set at alpha = 0 sits below every epigraph.
class ConvexCost {
public:
    virtual ~ConvexCost() = default;

    virtual double eval(const Signal& w) const = 0;
    virtual Signal subgradient(const Signal& w) const = 0;
    virtual std::string name() const = 0;
};

// Anisotropic total variation: sum of absolute forward differences, with
// out-of-range terms dropped at the border.  The subgradient uses the
// minimum-norm selection sign(0) = 0.
class TvCost final : public ConvexCost {
public:
    enum class Mode { one_dimensional, two_dimensional };

    static TvCost one_dimensional() { return TvCost(Mode::one_dimensional); }
    static TvCost two_dimensional() { return TvCost(Mode::two_dimensional); }

    double eval(const Signal& w) const override;
    Signal subgradient(const Signal& w) const override;
    std::string name() const override;

    Mode mode() const { return mode_; }

private:
    explicit TvCost(Mode m) : mode_(m) {}
    Mode mode_;
};

class L1Cost final : public ConvexCost {
public:
    double eval(const Signal& w) const override;
    Signal subgradient(const Signal& w) const override;
    std::string name() const override { return "l1"; }
};

// 0.5 |v - w|^2 + lambda |w|_1 for a fixed observation v.
class LassoCost final : public ConvexCost {
public:
    LassoCost(Signal observation, double lambda);

    double eval(const Signal& w) const override;
    Signal subgradient(const Signal& w) const override;
    std::string name() const override { return "lasso"; }

    double lambda() const { return lambda_; }

private:
    Signal v_;
    double lambda_;
};

// alpha * inner, the weighted epigraph cost.  Holds a reference; the inner
// cost must outlive the wrapper.
class ScaledCost final : public ConvexCost {
public:
    ScaledCost(const ConvexCost& inner, double alpha);

    double eval(const Signal& w) const override { return alpha_ * inner_.eval(w); }
    Signal subgradient(const Signal& w) const override;
    std::string name() const override;

    double alpha() const { return alpha_; }
    const ConvexCost& inner() const { return inner_; }

private:
    const ConvexCost& inner_;
    double alpha_;
};

inline double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace epocs
