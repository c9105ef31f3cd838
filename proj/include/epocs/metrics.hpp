#pragma once

#include "epocs/signal.hpp"

namespace epocs {

// Cap reported when the residual is exactly zero; keeps CSV output finite.
inline constexpr double kSnrCapDb = 300.0;

// 20 log10(|truth| / |truth - estimate|).
double snr_db(const Signal& truth, const Signal& estimate);

// |estimate - truth| / |truth|.
double nrmse(const Signal& truth, const Signal& estimate);

// TV(estimate) / TV(truth), using the signal's own 1D/2D layout.
double ntv(const Signal& truth, const Signal& estimate);

} // namespace epocs
