#include "epocs/cs.hpp"

#include "epocs/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epocs {

RowMatrix::RowMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("RowMatrix: empty dimensions");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

RowMatrix gaussian_measurement_matrix(int m, int n, std::uint64_t seed) {
    if (m < 1 || m > n)
        throw std::invalid_argument("gaussian_measurement_matrix: need 1 <= m <= n");
    SeededRng rng(seed);
    RowMatrix phi(m, n);
    for (int i = 0; i < m; ++i) {
        auto row = phi.row(i);
        double nsq = 0.0;
        for (int j = 0; j < n; ++j) {
            row[j] = rng.gaussian();
            nsq += row[j] * row[j];
        }
        const double inv = 1.0 / std::sqrt(nsq);
        for (int j = 0; j < n; ++j) row[j] *= inv;
    }
    return phi;
}

Signal measure(const RowMatrix& theta, const Signal& s) {
    if (theta.cols() != static_cast<int>(s.size()))
        throw std::invalid_argument("measure: dimension mismatch");
    std::vector<double> v(theta.rows());
    for (int i = 0; i < theta.rows(); ++i) v[i] = dot(theta.row(i), s.view());
    return Signal(std::move(v));
}

MeasurementSystem::MeasurementSystem(RowMatrix theta, std::vector<double> measurements,
                                     MeasurementDomain domain, std::optional<TransformOp> transform,
                                     std::optional<Signal> iterate_prototype)
    : theta_(std::move(theta)), rhs_(std::move(measurements)), domain_(domain),
      transform_(std::move(transform)) {
    if (theta_.rows() > theta_.cols())
        throw std::invalid_argument("MeasurementSystem: more rows than unknowns");
    if (static_cast<int>(rhs_.size()) != theta_.rows())
        throw std::invalid_argument("MeasurementSystem: measurement count mismatch");
    for (int i = 0; i < theta_.rows(); ++i) {
        auto row = theta_.row(i);
        const double nsq = norm_sq(row);
        if (!(nsq > 0.0))
            throw std::invalid_argument("MeasurementSystem: zero measurement row");
        const double inv = 1.0 / std::sqrt(nsq);
        if (std::fabs(inv - 1.0) > 1e-12) {
            for (auto& x : row) x *= inv;
            rhs_[i] *= inv;
        }
    }
    if (domain_ == MeasurementDomain::transform && !transform_)
        throw std::invalid_argument("MeasurementSystem: transform domain needs a transform");
    if (iterate_prototype) {
        if (iterate_prototype->size() != static_cast<std::size_t>(theta_.cols()))
            throw std::invalid_argument("MeasurementSystem: prototype length mismatch");
        prototype_ = std::move(*iterate_prototype);
    } else {
        prototype_ = Signal::zeros(static_cast<std::size_t>(theta_.cols()));
    }
}

double MeasurementSystem::residual_inf(std::span<const double> s) const {
    double worst = 0.0;
    for (int i = 0; i < theta_.rows(); ++i)
        worst = std::max(worst, std::fabs(dot(theta_.row(i), s) - rhs_[i]));
    return worst;
}

double MeasurementSystem::residual_l2(std::span<const double> s) const {
    double acc = 0.0;
    for (int i = 0; i < theta_.rows(); ++i) {
        const double r = dot(theta_.row(i), s) - rhs_[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

void kaczmarz_sweep_in_place(std::vector<double>& s, const MeasurementSystem& system) {
    if (static_cast<int>(s.size()) != system.n())
        throw std::invalid_argument("kaczmarz_sweep: dimension mismatch");
    const auto& theta = system.theta();
    const auto& v = system.measurements();
    for (int i = 0; i < theta.rows(); ++i) {
        const auto row = theta.row(i);
        double r = -v[i];
        for (std::size_t j = 0; j < s.size(); ++j) r += row[j] * s[j];
        // Rows are unit norm, so the projection is a single axpy.
        for (std::size_t j = 0; j < s.size(); ++j) s[j] -= r * row[j];
    }
}

Signal kaczmarz_sweep(const Signal& s, const MeasurementSystem& system) {
    std::vector<double> x(s.data());
    kaczmarz_sweep_in_place(x, system);
    return Signal::with_shape_of(std::move(x), s);
}

CsResult cs_reconstruct(const MeasurementSystem& system, const ConvexCost& cost,
                        const CsOptions& opts) {
    if (!(opts.alpha > 0.0))
        throw std::invalid_argument("cs_reconstruct: alpha must be positive");
    if (opts.level_relax < 0.0 || opts.level_relax > 1.0)
        throw std::invalid_argument("cs_reconstruct: level_relax must lie in [0, 1]");

    const int n = system.n();
    ScaledCost scaled(cost, opts.alpha);

    // Iterates inherit the solve-domain shape tag (image costs need it).
    const Signal& shape_like = system.prototype();

    std::vector<double> s(static_cast<std::size_t>(n), 0.0);
    double y = 0.0;

    CsResult result;
    result.stop_reason = StopReason::max_iter;
    EpigraphOptions epi = opts.epigraph;
    epi.tol = std::min(epi.tol, opts.tol);

    std::vector<double> prev(s);
    for (int outer = 1; outer <= opts.max_outer; ++outer) {
        prev = s;
        kaczmarz_sweep_in_place(s, system);

        LiftedPoint target{Signal::with_shape_of(s, shape_like), y};
        auto [proj, trace] = project_onto_epigraph(scaled, target, epi);
        s = proj.w.data();
        y += opts.level_relax * std::max(0.0, proj.y - y);

        double change = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = s[j] - prev[j];
            change += d * d;
        }
        change = std::sqrt(change);
        if (!std::isfinite(change))
            throw std::runtime_error("cs_reconstruct: non-finite iterate");

        CsTraceRow row;
        row.outer = outer;
        row.residual = system.residual_l2(s);
        row.cost = cost.eval(Signal::with_shape_of(s, shape_like));
        row.change = change;
        result.trace.push_back(row);
        result.outer_iterations = outer;

        if (change <= opts.tol) {
            result.stop_reason = StopReason::tolerance;
            break;
        }
    }

    // Report the oscillation pair: the epigraph-side estimate and the
    // measurement-consistent point one sweep away.
    std::vector<double> mside(s);
    kaczmarz_sweep_in_place(mside, system);
    result.measurement_side = Signal::with_shape_of(std::move(mside), shape_like);

    Signal coeff = Signal::with_shape_of(std::move(s), shape_like);
    result.coefficients = coeff;
    if (system.domain() == MeasurementDomain::transform)
        result.estimate = system.transform()->inverse(coeff);
    else
        result.estimate = coeff;
    return result;
}

Signal make_cusp(int n) {
    if (n < 2) throw std::invalid_argument("make_cusp: need n >= 2");
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / (n - 1);
        c[k] = std::sqrt(std::fabs(t - 0.37));
    }
    return Signal(std::move(c));
}

Signal make_sparse(const SparseSpec& spec) {
    if (spec.n < 1 || spec.sparsity < 0 || spec.sparsity > spec.n)
        throw std::invalid_argument("make_sparse: need 0 <= K <= N");
    SeededRng rng(spec.seed);
    std::vector<double> s(static_cast<std::size_t>(spec.n), 0.0);
    // Seeded sample of K distinct positions.
    std::vector<int> perm(spec.n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < spec.sparsity; ++k) {
        const int j = k + static_cast<int>(rng.integer(static_cast<std::uint64_t>(spec.n - k)));
        std::swap(perm[k], perm[j]);
    }
    for (int k = 0; k < spec.sparsity; ++k) {
        double a;
        if (spec.amplitude_law == SparseSpec::Amplitude::unit)
            a = rng.uniform() < 0.5 ? -1.0 : 1.0;
        else {
            do {
                a = rng.gaussian();
            } while (a == 0.0);
        }
        s[perm[k]] = a;
    }
    return Signal(std::move(s));
}

MeasurementSystem make_signal_system(const RowMatrix& phi, const Signal& x) {
    Signal v = measure(phi, x);
    return MeasurementSystem(phi, v.data(), MeasurementDomain::signal, std::nullopt,
                             Signal::zeros_like(x));
}

MeasurementSystem make_dct_system(const RowMatrix& phi, const Signal& x) {
    Signal v = measure(phi, x);
    TransformOp psi = TransformOp::dct(phi.cols());
    RowMatrix theta(phi.rows(), phi.cols());
    if (!x.is_image()) {
        Signal row_sig = Signal::zeros(static_cast<std::size_t>(phi.cols()));
        for (int i = 0; i < phi.rows(); ++i) {
            const auto row = phi.row(i);
            std::copy(row.begin(), row.end(), row_sig.data().begin());
            Signal tr = psi.forward(row_sig);
            std::copy(tr.data().begin(), tr.data().end(), theta.row(i).begin());
        }
        return MeasurementSystem(std::move(theta), v.data(), MeasurementDomain::transform, psi);
    }
    // Image input: theta rows are separable 2D DCTs of the phi rows reshaped
    // to the image geometry; coefficients keep that shape for the inverse.
    const int W = x.width(), H = x.height();
    for (int i = 0; i < phi.rows(); ++i) {
        const auto row = phi.row(i);
        Signal row_img(std::vector<double>(row.begin(), row.end()), W, H);
        Signal tr = psi.forward(row_img);
        std::copy(tr.data().begin(), tr.data().end(), theta.row(i).begin());
    }
    return MeasurementSystem(std::move(theta), v.data(), MeasurementDomain::transform, psi,
                             Signal::zeros_like(x));
}

Signal block_cs_reconstruct(const Signal& image, const BlockScheme& scheme,
                            BlockCostKind cost_kind, double alpha, const CsOptions& opts,
                            std::span<const int> order) {
    if (!image.is_image())
        throw std::invalid_argument("block_cs_reconstruct: image input required");
    const int B = scheme.block_size;
    if (B < 2) throw std::invalid_argument("block_cs_reconstruct: block size too small");
    if (!(scheme.measurement_ratio > 0.0) || scheme.measurement_ratio > 1.0)
        throw std::invalid_argument("block_cs_reconstruct: ratio must lie in (0, 1]");

    const int W = image.width(), H = image.height();
    const int Wp = (W + B - 1) / B * B;
    const int Hp = (H + B - 1) / B * B;

    // Edge-replicate up to a multiple of the block size.
    Signal padded(std::vector<double>(static_cast<std::size_t>(Wp) * Hp, 0.0), Wp, Hp);
    for (int i = 0; i < Hp; ++i)
        for (int j = 0; j < Wp; ++j)
            padded.at(i, j) = image.at(std::min(i, H - 1), std::min(j, W - 1));

    const int m = std::max(1, static_cast<int>(std::lround(scheme.measurement_ratio * B * B)));
    const RowMatrix phi =
        gaussian_measurement_matrix(m, B * B, sub_seed(scheme.seed, "block-cs-phi", 0));

    const int nbx = Wp / B, nby = Hp / B;
    std::vector<int> natural(static_cast<std::size_t>(nbx) * nby);
    std::iota(natural.begin(), natural.end(), 0);
    std::span<const int> blocks = order.empty() ? std::span<const int>(natural) : order;
    if (blocks.size() != natural.size())
        throw std::invalid_argument("block_cs_reconstruct: order must list every block once");

    TvCost tv = TvCost::two_dimensional();
    L1Cost l1;
    CsOptions block_opts = opts;
    block_opts.alpha = alpha;

    Signal out(std::vector<double>(static_cast<std::size_t>(Wp) * Hp, 0.0), Wp, Hp);
    for (int idx : blocks) {
        const int by = idx / nbx, bx = idx % nbx;
        std::vector<double> blk(static_cast<std::size_t>(B) * B);
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j) blk[static_cast<std::size_t>(i) * B + j] = padded.at(by * B + i, bx * B + j);
        Signal block(std::move(blk), B, B);

        CsResult r;
        if (cost_kind == BlockCostKind::tv) {
            MeasurementSystem sys = make_signal_system(phi, block);
            r = cs_reconstruct(sys, tv, block_opts);
        } else {
            MeasurementSystem sys = make_dct_system(phi, block);
            r = cs_reconstruct(sys, l1, block_opts);
        }
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
                out.at(by * B + i, bx * B + j) = r.estimate[static_cast<std::size_t>(i) * B + j];
    }

    if (Wp == W && Hp == H) return out;
    Signal cropped(std::vector<double>(static_cast<std::size_t>(W) * H, 0.0), W, H);
    for (int i = 0; i < H; ++i)
        for (int j = 0; j < W; ++j) cropped.at(i, j) = out.at(i, j);
    return cropped;
}

} // namespace epocs
