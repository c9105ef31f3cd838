#include "epocs/metrics.hpp"

#include "epocs/costs.hpp"

#include <cmath>
#include <stdexcept>

namespace epocs {

namespace {

void check_shapes(const Signal& truth, const Signal& estimate, const char* who) {
    if (truth.size() != estimate.size())
        throw std::invalid_argument(std::string(who) + ": shape mismatch");
}

} // namespace

double snr_db(const Signal& truth, const Signal& estimate) {
    check_shapes(truth, estimate, "snr_db");
    const double nt = norm2(truth.view());
    if (nt == 0.0) throw std::invalid_argument("snr_db: zero truth signal");
    double rs = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = truth[i] - estimate[i];
        rs += d * d;
    }
    if (rs == 0.0) return kSnrCapDb;
    return 20.0 * std::log10(nt / std::sqrt(rs));
}

double nrmse(const Signal& truth, const Signal& estimate) {
    check_shapes(truth, estimate, "nrmse");
    const double nt = norm2(truth.view());
    if (nt == 0.0) throw std::invalid_argument("nrmse: zero truth signal");
    double rs = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate[i] - truth[i];
        rs += d * d;
    }
    return std::sqrt(rs) / nt;
}

double ntv(const Signal& truth, const Signal& estimate) {
    check_shapes(truth, estimate, "ntv");
    const TvCost tv = truth.is_image() ? TvCost::two_dimensional() : TvCost::one_dimensional();
    const double tt = tv.eval(truth);
    if (tt == 0.0) throw std::invalid_argument("ntv: truth has zero total variation");
    Signal est = estimate;
    if (truth.is_image() && !estimate.is_image())
        est = Signal(std::vector<double>(estimate.data()), truth.width(), truth.height());
    return tv.eval(est) / tt;
}

} // namespace epocs
