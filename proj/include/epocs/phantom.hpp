#pragma once

#include "epocs/signal.hpp"

#include <cstdint>

namespace epocs {

// Deterministic piecewise-constant test image: a base level with a handful of
// seeded rectangles and stripes.  Same (width, height, index, seed) always
// produces the same image; pixel values lie in [0, 255].
Signal make_phantom(int width, int height, int index, std::uint64_t seed = 0);

} // namespace epocs
