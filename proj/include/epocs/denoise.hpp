#pragma once

#include "epocs/epigraph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace epocs {

struct DenoiseResult {
    Signal estimate;
    ProjectionTrace trace;        // trace of the final epigraph projection
    int iterations_run = 0;
    std::optional<double> input_snr_db; // filled by callers that know the truth
    // Introspection of the parameter-free scaling.
    double alpha_effective = 0.0; // weight on TV inside the epigraph
    double lambda_equivalent = 0.0;
    double noise_scale = 0.0;     // robust sigma estimate read from the input
    double objective = 0.0;       // |v - w|^2 + lambda_equivalent * TV(w)
};

// Robust noise scale from forward differences: second moment of |d| below
// the 97.5% quantile, corrected for the truncated gaussian core, divided by
// sqrt(2) for the differencing.
double estimate_noise_scale(const Signal& v);

// Parameter-free TV denoiser.  Projects (v, 0) onto the epigraph of a scaled
// TV cost; the scale is derived from the input alone (robust noise estimate
// plus a fixed-point on the estimate's TV), so no regularization parameter
// exists anywhere in this path.  alpha > 1 smooths more, alpha < 1 less.
DenoiseResult pocs_denoise(const Signal& v, double alpha = 1.0, double tol = 1e-6,
                           int max_iter = 500);

struct BaselineConfig {
    double lambda = 1.0;
    int iterations = 200;
    double step = 0.248; // dual step; must stay <= 0.25 for 2D stability

    bool valid() const { return lambda > 0.0 && iterations > 0 && step > 0.0 && step <= 0.25; }
};

// Duality-based fixed-point solver for  min |v - w|^2 + lambda TV(w)
// (anisotropic TV, 2D images only).
DenoiseResult chambolle_denoise(const Signal& v, const BaselineConfig& cfg);

// Runs the baseline across the grid and returns (best_lambda, best_snr) by
// output SNR against the supplied truth; ties break toward the smaller
// lambda.
std::pair<double, double> lambda_grid_search(const Signal& v, const Signal& truth,
                                             std::span<const double> grid,
                                             const BaselineConfig& base = {});

} // namespace epocs
