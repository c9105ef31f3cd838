#include "epocs/transform.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace epocs {

struct TransformOp::BasisCache {
    // n -> row-major table[k * n + m] = c_k cos(pi (m + 1/2) k / n)
    std::map<int, std::vector<double>> tables;

    const std::vector<double>& get(int n) {
        auto it = tables.find(n);
        if (it != tables.end()) return it->second;
        std::vector<double> t(static_cast<std::size_t>(n) * n);
        const double c0 = std::sqrt(1.0 / n);
        const double ck = std::sqrt(2.0 / n);
        for (int k = 0; k < n; ++k) {
            const double scale = (k == 0) ? c0 : ck;
            for (int m = 0; m < n; ++m)
                t[static_cast<std::size_t>(k) * n + m] =
                    scale * std::cos(std::numbers::pi * (m + 0.5) * k / n);
        }
        return tables.emplace(n, std::move(t)).first->second;
    }
};

TransformOp::TransformOp(Kind k, int length)
    : kind_(k), length_(length), cache_(std::make_shared<BasisCache>()) {
    if (length < 1) throw std::invalid_argument("TransformOp: length must be positive");
}

TransformOp TransformOp::identity(int length) { return TransformOp(Kind::identity, length); }
TransformOp TransformOp::dct(int length) { return TransformOp(Kind::dct2_orthonormal, length); }

namespace {

// out[k] = sum_m table[k*n + m] * in[m]
void apply_basis(const std::vector<double>& table, const double* in, double* out, int n,
                 bool transpose) {
    for (int k = 0; k < n; ++k) out[k] = 0.0;
    if (!transpose) {
        for (int k = 0; k < n; ++k) {
            const double* row = table.data() + static_cast<std::size_t>(k) * n;
            double s = 0.0;
            for (int m = 0; m < n; ++m) s += row[m] * in[m];
            out[k] = s;
        }
    } else {
        for (int k = 0; k < n; ++k) {
            const double* row = table.data() + static_cast<std::size_t>(k) * n;
            const double v = in[k];
            for (int m = 0; m < n; ++m) out[m] += row[m] * v;
        }
    }
}

} // namespace

Signal TransformOp::forward(const Signal& x) const {
    if (kind_ == Kind::identity) return x;
    if (static_cast<int>(x.size()) != length_)
        throw std::invalid_argument("TransformOp::forward: length mismatch");
    if (!x.is_image()) {
        const auto& t = cache_->get(static_cast<int>(x.size()));
        std::vector<double> out(x.size());
        apply_basis(t, x.data().data(), out.data(), static_cast<int>(x.size()), false);
        return Signal(std::move(out));
    }
    // Separable 2D: rows, then columns.
    const int W = x.width(), H = x.height();
    const auto& tw = cache_->get(W);
    const auto& th = cache_->get(H);
    std::vector<double> tmp(x.size()), out(x.size());
    for (int i = 0; i < H; ++i)
        apply_basis(tw, x.data().data() + static_cast<std::size_t>(i) * W,
                    tmp.data() + static_cast<std::size_t>(i) * W, W, false);
    std::vector<double> col(H), colo(H);
    for (int j = 0; j < W; ++j) {
        for (int i = 0; i < H; ++i) col[i] = tmp[static_cast<std::size_t>(i) * W + j];
        apply_basis(th, col.data(), colo.data(), H, false);
        for (int i = 0; i < H; ++i) out[static_cast<std::size_t>(i) * W + j] = colo[i];
    }
    return Signal(std::move(out), W, H);
}

Signal TransformOp::inverse(const Signal& s) const {
    if (kind_ == Kind::identity) return s;
    if (static_cast<int>(s.size()) != length_)
        throw std::invalid_argument("TransformOp::inverse: length mismatch");
    if (!s.is_image()) {
        const auto& t = cache_->get(static_cast<int>(s.size()));
        std::vector<double> out(s.size());
        apply_basis(t, s.data().data(), out.data(), static_cast<int>(s.size()), true);
        return Signal(std::move(out));
    }
    const int W = s.width(), H = s.height();
    const auto& tw = cache_->get(W);
    const auto& th = cache_->get(H);
    std::vector<double> tmp(s.size()), out(s.size());
    std::vector<double> col(H), colo(H);
    for (int j = 0; j < W; ++j) {
        for (int i = 0; i < H; ++i) col[i] = s[static_cast<std::size_t>(i) * W + j];
        apply_basis(th, col.data(), colo.data(), H, true);
        for (int i = 0; i < H; ++i) tmp[static_cast<std::size_t>(i) * W + j] = colo[i];
    }
    for (int i = 0; i < H; ++i)
        apply_basis(tw, tmp.data() + static_cast<std::size_t>(i) * W,
                    out.data() + static_cast<std::size_t>(i) * W, W, true);
    return Signal(std::move(out), W, H);
}

Signal dct_forward(const Signal& x) {
    Signal flat(std::vector<double>(x.data()));
    return TransformOp::dct(static_cast<int>(x.size())).forward(flat);
}

Signal dct_inverse(const Signal& s) {
    Signal flat(std::vector<double>(s.data()));
    return TransformOp::dct(static_cast<int>(s.size())).inverse(flat);
}

} // namespace epocs
