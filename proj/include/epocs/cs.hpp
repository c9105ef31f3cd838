#pragma once

#include "epocs/costs.hpp"
#include "epocs/epigraph.hpp"
#include "epocs/transform.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace epocs {

// Dense row-major matrix; Kaczmarz sweeps walk the rows in storage order.
class RowMatrix {
public:
    RowMatrix() = default;
    RowMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::span<double> row(int i) { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(int i) const { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }

    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// M x N matrix of i.i.d. standard normal entries with every row scaled to
// unit length; deterministic in the seed.
RowMatrix gaussian_measurement_matrix(int m, int n, std::uint64_t seed);

// Theta . s
Signal measure(const RowMatrix& theta, const Signal& s);

enum class MeasurementDomain { signal, transform };

// Measurement model v = Theta s.  Rows are unit-normalized at construction
// (the right-hand side is rescaled with them) so each hyperplane projection
// is a single fused pass; zero rows are rejected here.
class MeasurementSystem {
public:
    MeasurementSystem(RowMatrix theta, std::vector<double> measurements,
                      MeasurementDomain domain = MeasurementDomain::signal,
                      std::optional<TransformOp> transform = std::nullopt,
                      std::optional<Signal> iterate_prototype = std::nullopt);

    const RowMatrix& theta() const { return theta_; }
    const std::vector<double>& measurements() const { return rhs_; }
    MeasurementDomain domain() const { return domain_; }
    const std::optional<TransformOp>& transform() const { return transform_; }

    // Zero signal with the solve-domain layout; iterates inherit its shape
    // tag so image costs and separable transforms see the block geometry.
    const Signal& prototype() const { return prototype_; }

    int m() const { return theta_.rows(); }
    int n() const { return theta_.cols(); }

    // max_i |theta_i . s - v_i|
    double residual_inf(std::span<const double> s) const;
    double residual_l2(std::span<const double> s) const;

private:
    RowMatrix theta_;
    std::vector<double> rhs_;
    MeasurementDomain domain_;
    std::optional<TransformOp> transform_;
    Signal prototype_;
};

// One pass of sequential orthogonal projections onto the row hyperplanes,
// rows taken in natural order.
Signal kaczmarz_sweep(const Signal& s, const MeasurementSystem& system);
void kaczmarz_sweep_in_place(std::vector<double>& s, const MeasurementSystem& system);

struct CsOptions {
    double alpha = 0.5;    // epigraph weight on the cost
    double tol = 1e-6;     // stop when the outer iterate moves less than this
    int max_outer = 1000;
    // Level relaxation: after each epigraph projection the lifted coordinate
    // ratchets up by this fraction of the projection's rise.  0 re-lifts the
    // iterate to (s, 0) every outer pass, 1 keeps the full lifted coordinate.
    double level_relax = 0.1;
    EpigraphOptions epigraph;
};

struct CsTraceRow {
    int outer = 0;
    double residual = 0.0; // |Theta s - v|_2 of the post-projection iterate
    double cost = 0.0;     // unscaled cost of the iterate
    double change = 0.0;   // |s_k - s_{k-1}|_2
};

struct CsResult {
    Signal estimate;                 // signal-domain reconstruction
    Signal coefficients;             // iterate in the solve domain
    Signal measurement_side;         // last post-sweep iterate (in C_int side)
    std::vector<CsTraceRow> trace;
    int outer_iterations = 0;
    StopReason stop_reason = StopReason::max_iter;
};

// Alternates Kaczmarz sweeps over the measurement hyperplanes (acting on the
// first N coordinates; the lifted coordinate is untouched) with projections
// of the lifted iterate onto the epigraph of alpha * cost.  Stops when the
// iterate change drops below tol.
CsResult cs_reconstruct(const MeasurementSystem& system, const ConvexCost& cost,
                        const CsOptions& opts = {});

struct BlockScheme {
    int block_size = 32;
    double measurement_ratio = 0.3;
    std::uint64_t seed = 0;
};

enum class BlockCostKind { tv, l1_dct };

// Block-based 2D reconstruction: the image is split into B x B blocks (edge
// replicated up to a multiple of B, cropped afterwards), every block is
// reconstructed independently with the same seeded measurement matrix, and
// the results are reassembled.  `order` is a test hook: a permutation of
// block indices to process; empty means natural order.
Signal block_cs_reconstruct(const Signal& image, const BlockScheme& scheme,
                            BlockCostKind cost_kind, double alpha,
                            const CsOptions& opts = {}, std::span<const int> order = {});

// Test signals.
Signal make_cusp(int n);

struct SparseSpec {
    int n = 128;
    int sparsity = 5;
    enum class Amplitude { unit, gaussian } amplitude_law = Amplitude::unit;
    std::uint64_t seed = 0;
};

Signal make_sparse(const SparseSpec& spec);

// Measurement system over DCT coefficients: theta rows are the forward DCTs
// of the phi rows, so theta acts directly on the coefficient vector.
MeasurementSystem make_dct_system(const RowMatrix& phi, const Signal& x);
// Plain signal-domain system v = phi x.
MeasurementSystem make_signal_system(const RowMatrix& phi, const Signal& x);

} // namespace epocs
