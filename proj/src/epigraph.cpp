#include "epocs/epigraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epocs {

Hyperplane supporting_hyperplane(const ConvexCost& cost, const Signal& w) {
    const Signal g = cost.subgradient(w);
    const double fw = cost.eval(w);
    std::vector<double> normal(w.size() + 1);
    double gw = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        normal[k] = g[k];
        gw += g[k] * w[k];
    }
    normal[w.size()] = -1.0;
    return Hyperplane(std::move(normal), gw - fw);
}

namespace {

struct Cut {
    std::vector<double> grad; // subgradient at the anchor (N components)
    double offset;            // g.w - f(w)
    double norm_sq;           // |g|^2 + 1
};

double relift_distance_sq(const Signal& tw, double ty, const Signal& w, double fw) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double d = tw[k] - w[k];
        s += d * d;
    }
    const double dy = ty - fw;
    return s + dy * dy;
}

// Projection of the lifted target onto the intersection of the supporting
// halfspaces in `cuts`, via Hildreth's dual coordinate descent.  lam is kept
// across calls for warm starts.  Returns the primal point (w part, y part).
void project_onto_cuts(const Signal& tw, double ty, const std::vector<Cut>& cuts,
                       const std::vector<std::vector<double>>& gram, std::vector<double>& lam,
                       std::vector<double>& w_out, double& y_out) {
    const std::size_t K = cuts.size();
    std::vector<double> resid(K);
    for (std::size_t i = 0; i < K; ++i)
        resid[i] = dot(cuts[i].grad, tw.view()) - ty - cuts[i].offset;
    for (int sweep = 0; sweep < 80; ++sweep) {
        double moved = 0.0;
        for (std::size_t i = 0; i < K; ++i) {
            double r = resid[i];
            for (std::size_t j = 0; j < K; ++j) r -= gram[i][j] * lam[j];
            const double next = std::max(0.0, lam[i] + r / gram[i][i]);
            moved += std::fabs(next - lam[i]);
            lam[i] = next;
        }
        if (moved < 1e-14) break;
    }
    w_out.assign(tw.view().begin(), tw.view().end());
    y_out = ty;
    for (std::size_t i = 0; i < K; ++i) {
        if (lam[i] == 0.0) continue;
        const auto& g = cuts[i].grad;
        for (std::size_t k = 0; k < w_out.size(); ++k) w_out[k] -= lam[i] * g[k];
        y_out += lam[i];
    }
}

} // namespace

std::pair<LiftedPoint, ProjectionTrace>
project_onto_epigraph(const ConvexCost& cost, const LiftedPoint& target, double tol, int max_iter) {
    EpigraphOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return project_onto_epigraph(cost, target, opts);
}

std::pair<LiftedPoint, ProjectionTrace>
project_onto_epigraph(const ConvexCost& cost, const LiftedPoint& target, const EpigraphOptions& opts) {
    if (!(opts.tol > 0.0) || opts.max_iter < 1)
        throw std::invalid_argument("project_onto_epigraph: need tol > 0 and max_iter >= 1");
    const Signal& tw = target.w;
    const double ty = target.y;

    ProjectionTrace trace;
    const double f0 = cost.eval(tw);
    if (!std::isfinite(f0) || !std::isfinite(ty))
        throw std::runtime_error("project_onto_epigraph: non-finite input");

    // Members project to themselves.
    if (ty >= f0 - 1e-9) {
        trace.iterates.push_back(target);
        trace.distances.push_back(0.0);
        trace.stop_reason = StopReason::tolerance;
        return {target, trace};
    }

    // Iterate 0: the anchor lifted onto the graph.
    trace.iterates.push_back(LiftedPoint{tw, f0});
    trace.distances.push_back((ty - f0) * (ty - f0));

    Signal w = tw;
    double fw = f0;
    // Best candidate by distance to the re-lifted (graph) point.
    Signal best_w = tw;
    double best_fw = f0;
    double best_relift = trace.distances[0];

    trace.stop_reason = StopReason::max_iter;
    for (int it = 0; it < opts.max_iter; ++it) {
        const Signal g = cost.subgradient(w);
        const double gsq = norm_sq(g.view());
        if (gsq == 0.0) {
            // Horizontal support: the epigraph is bounded below by y = f(w) here.
            LiftedPoint p{tw, std::max(ty, cost.eval(tw))};
            trace.iterates.push_back(p);
            trace.distances.push_back(relift_distance_sq(tw, ty, p.w, p.y));
            trace.stop_reason = StopReason::tolerance;
            return {p, trace};
        }
        const double offset = dot(g.view(), w.view()) - fw;
        const double viol = dot(g.view(), tw.view()) - ty - offset;
        const double den = gsq + 1.0;
        const double c = viol / den;
        std::vector<double> next(tw.view().begin(), tw.view().end());
        for (std::size_t k = 0; k < next.size(); ++k) next[k] -= c * g[k];
        Signal wn = Signal::with_shape_of(std::move(next), tw);
        const double yn = ty + c;
        const double d = c * c * den;
        if (!std::isfinite(d))
            throw std::runtime_error("project_onto_epigraph: non-finite iterate");

        trace.iterates.push_back(LiftedPoint{wn, yn});
        trace.distances.push_back(d);

        fw = cost.eval(wn);
        const double relift = relift_distance_sq(tw, ty, wn, fw);
        if (relift < best_relift) {
            best_relift = relift;
            best_w = wn;
            best_fw = fw;
        }

        const double prev = trace.distances[trace.distances.size() - 2];
        if (d > prev) {
            trace.stop_reason = StopReason::distance_increase;
            w = std::move(wn);
            break;
        }
        if (std::fabs(d - prev) < opts.tol) {
            trace.stop_reason = StopReason::tolerance;
            w = std::move(wn);
            break;
        }
        w = std::move(wn);
    }

    if (trace.stop_reason != StopReason::tolerance && opts.refine_rounds > 0) {
        // Seed the cut bundle at the distance-minimizing iterate and its
        // successor (the two cells the walk oscillates between).
        std::size_t ib = 1;
        for (std::size_t i = 1; i < trace.distances.size(); ++i)
            if (trace.distances[i] < trace.distances[ib]) ib = i;
        const std::size_t in = std::min(ib + 1, trace.iterates.size() - 1);

        std::vector<Cut> cuts;
        std::vector<std::vector<double>> gram;
        std::vector<double> lam;
        auto add_cut = [&](const Signal& anchor) {
            Cut cut;
            Signal g = cost.subgradient(anchor);
            cut.offset = dot(g.view(), anchor.view()) - cost.eval(anchor);
            cut.norm_sq = norm_sq(g.view()) + 1.0;
            cut.grad = std::move(g.data());
            // Grow the Gram matrix: <a_i, a_new> = g_i.g_new + 1.
            std::vector<double> row(cuts.size() + 1);
            for (std::size_t j = 0; j < cuts.size(); ++j) {
                row[j] = dot(cuts[j].grad, cut.grad) + 1.0;
                gram[j].push_back(row[j]);
            }
            row[cuts.size()] = cut.norm_sq;
            gram.push_back(std::move(row));
            cuts.push_back(std::move(cut));
            lam.push_back(0.0);
        };
        auto drop_cut = [&](std::size_t k) {
            cuts.erase(cuts.begin() + k);
            lam.erase(lam.begin() + k);
            gram.erase(gram.begin() + k);
            for (auto& row : gram) row.erase(row.begin() + k);
        };

        add_cut(trace.iterates[ib].w);
        if (in != ib) add_cut(trace.iterates[in].w);

        std::vector<double> wx;
        double yx = 0.0;
        for (int r = 0; r < opts.refine_rounds; ++r) {
            project_onto_cuts(tw, ty, cuts, gram, lam, wx, yx);
            Signal cand = Signal::with_shape_of(wx, tw);
            const double fx = cost.eval(cand);
            if (!std::isfinite(fx))
                throw std::runtime_error("project_onto_epigraph: non-finite refinement iterate");
            const double relift = relift_distance_sq(tw, ty, cand, fx);
            if (relift < best_relift) {
                best_relift = relift;
                best_w = cand;
                best_fw = fx;
            }
            // The bundle projection is exact on an outer approximation of the
            // epigraph, so near-feasibility means we have the true projection.
            if (fx - yx <= opts.tol * (1.0 + std::fabs(yx))) break;
            add_cut(cand);
            if (static_cast<int>(cuts.size()) > opts.max_cuts) {
                std::size_t k = 0;
                for (std::size_t j = 1; j + 1 < lam.size(); ++j)
                    if (lam[j] < lam[k]) k = j;
                drop_cut(k);
            }
        }
    }

    return {LiftedPoint{best_w, best_fw}, trace};
}

namespace {

struct ScanBest {
    double dist = std::numeric_limits<double>::infinity();
    std::vector<double> w;
};

void scan_grid(const ConvexCost& cost, const Signal& like, const LiftedPoint& target,
               const std::vector<double>& lo, const std::vector<double>& hi, double step,
               ScanBest& best) {
    const std::size_t dim = lo.size();
    std::vector<std::vector<double>> axes(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (double x = lo[k]; x <= hi[k] + step * 0.5; x += step) axes[k].push_back(x);
    }
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> w(dim);
    while (true) {
        for (std::size_t k = 0; k < dim; ++k) w[k] = axes[k][idx[k]];
        Signal s = Signal::with_shape_of(w, like);
        const double f = cost.eval(s);
        double d = (target.y - f) * (target.y - f);
        for (std::size_t k = 0; k < dim; ++k) {
            const double dd = target.w[k] - w[k];
            d += dd * dd;
        }
        if (d < best.dist) {
            best.dist = d;
            best.w = w;
        }
        std::size_t k = 0;
        while (k < dim && ++idx[k] == axes[k].size()) idx[k++] = 0;
        if (k == dim) break;
    }
}

} // namespace

LiftedPoint oracle_project_epigraph(const ConvexCost& cost, const LiftedPoint& target,
                                    double lo, double hi, double step) {
    const std::size_t dim = target.w.size();
    if (dim > 3)
        throw std::invalid_argument("oracle_project_epigraph: dimension must be <= 3");
    if (!(step > 0.0) || !(hi > lo))
        throw std::invalid_argument("oracle_project_epigraph: bad box or step");

    const std::vector<double> lov(dim, lo), hiv(dim, hi);
    if (dim == 1) {
        ScanBest best;
        scan_grid(cost, target.w, target, lov, hiv, step, best);
        Signal w = Signal::with_shape_of(best.w, target.w);
        return LiftedPoint{w, cost.eval(w)};
    }

    // Coarse pass, then refinements around the leading candidates.
    const double coarse = std::max(step, (hi - lo) / 60.0);
    struct Cand {
        double dist;
        std::vector<double> w;
    };
    std::vector<Cand> leaders;
    {
        // Collect several separated coarse minima so a refinement cannot get
        // stuck on the wrong piece of a piecewise-quadratic landscape.
        std::vector<std::vector<double>> axes(dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (double x = lo; x <= hi + coarse * 0.5; x += coarse) axes[k].push_back(x);
        std::vector<std::size_t> idx(dim, 0);
        std::vector<double> w(dim);
        while (true) {
            for (std::size_t k = 0; k < dim; ++k) w[k] = axes[k][idx[k]];
            Signal s = Signal::with_shape_of(w, target.w);
            const double f = cost.eval(s);
            double d = (target.y - f) * (target.y - f);
            for (std::size_t k = 0; k < dim; ++k) {
                const double dd = target.w[k] - w[k];
                d += dd * dd;
            }
            bool near = false;
            for (auto& c : leaders) {
                double sep = 0.0;
                for (std::size_t k = 0; k < dim; ++k) sep = std::max(sep, std::fabs(c.w[k] - w[k]));
                if (sep <= 2.0 * coarse) {
                    near = true;
                    if (d < c.dist) {
                        c.dist = d;
                        c.w = w;
                    }
                    break;
                }
            }
            if (!near) leaders.push_back({d, w});
            std::sort(leaders.begin(), leaders.end(),
                      [](const Cand& a, const Cand& b) { return a.dist < b.dist; });
            if (leaders.size() > 4) leaders.resize(4);
            std::size_t k = 0;
            while (k < dim && ++idx[k] == axes[k].size()) idx[k++] = 0;
            if (k == dim) break;
        }
    }

    ScanBest best;
    for (const auto& cand : leaders) {
        double cur = coarse;
        std::vector<double> center = cand.w;
        while (cur > step) {
            const double next = std::max(step, cur / 5.0);
            std::vector<double> l(dim), h(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                l[k] = std::max(lo, center[k] - 2.0 * cur);
                h[k] = std::min(hi, center[k] + 2.0 * cur);
            }
            ScanBest local;
            scan_grid(cost, target.w, target, l, h, next, local);
            center = local.w;
            if (local.dist < best.dist) best = local;
            cur = next;
        }
    }
    Signal w = Signal::with_shape_of(best.w, target.w);
    return LiftedPoint{w, cost.eval(w)};
}

} // namespace epocs
