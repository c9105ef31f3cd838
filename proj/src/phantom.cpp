#include "epocs/phantom.hpp"

#include "epocs/noise.hpp"

#include <algorithm>
#include <stdexcept>

namespace epocs {

Signal make_phantom(int width, int height, int index, std::uint64_t seed) {
    if (width < 8 || height < 8)
        throw std::invalid_argument("make_phantom: image must be at least 8x8");
    SeededRng rng(sub_seed(seed, "phantom", static_cast<std::uint64_t>(index)));

    const double base = 30.0 + static_cast<double>(rng.integer(70));
    Signal img(std::vector<double>(static_cast<std::size_t>(width) * height, base), width, height);

    const int rects = 3 + static_cast<int>(rng.integer(4));
    for (int r = 0; r < rects; ++r) {
        const int x0 = static_cast<int>(rng.integer(width - 4));
        const int y0 = static_cast<int>(rng.integer(height - 4));
        const int w = 4 + static_cast<int>(rng.integer(std::max(1, width / 2 - 4)));
        const int h = 4 + static_cast<int>(rng.integer(std::max(1, height / 2 - 4)));
        const double level = static_cast<double>(rng.integer(256));
        for (int i = y0; i < std::min(height, y0 + h); ++i)
            for (int j = x0; j < std::min(width, x0 + w); ++j) img.at(i, j) = level;
    }
    for (int s = 0; s < 2; ++s) {
        const int y0 = static_cast<int>(rng.integer(height - 3));
        const int h = 2 + static_cast<int>(rng.integer(4));
        const double level = static_cast<double>(rng.integer(256));
        for (int i = y0; i < std::min(height, y0 + h); ++i)
            for (int j = 0; j < width; ++j) img.at(i, j) = level;
    }
    return img;
}

} // namespace epocs
