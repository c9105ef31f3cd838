#include "epocs/noise.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace epocs {

double SeededRng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double SeededRng::gaussian() {
    // Box-Muller; u1 nudged away from zero so the log stays finite.
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SeededRng::integer(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SeededRng::integer: bound must be positive");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % bound;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace

std::uint64_t sub_seed(std::uint64_t master, std::string_view role, std::uint64_t index) {
    return splitmix64(splitmix64(master ^ fnv1a64(role)) + index);
}

NoiseModel NoiseModel::gaussian_model(double sigma, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw std::invalid_argument("NoiseModel: sigma must be positive");
    NoiseModel m;
    m.kind = Kind::gaussian;
    m.sigma = sigma;
    m.seed = seed;
    return m;
}

NoiseModel NoiseModel::eps_model(double eps, double sigma1, double sigma2, std::uint64_t seed) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("NoiseModel: eps must lie in [0, 1]");
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
        throw std::invalid_argument("NoiseModel: component sigmas must be positive");
    NoiseModel m;
    m.kind = Kind::eps_contaminated;
    m.eps = eps;
    m.sigma1 = sigma1;
    m.sigma2 = sigma2;
    m.seed = seed;
    return m;
}

NoiseModel NoiseModel::parse(const std::string& spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "gaussian") {
        std::istringstream in(tail);
        double sigma;
        if (!(in >> sigma)) throw std::invalid_argument("noise spec: expected gaussian:<std>");
        return gaussian_model(sigma, seed);
    }
    if (head == "eps") {
        double e, s1, s2;
        char c1, c2;
        std::istringstream in(tail);
        if (!(in >> e >> c1 >> s1 >> c2 >> s2) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("noise spec: expected eps:<eps>,<s1>,<s2>");
        return eps_model(e, s1, s2, seed);
    }
    throw std::invalid_argument("noise spec: unknown kind '" + head + "'");
}

std::string NoiseModel::describe() const {
    std::ostringstream out;
    if (kind == Kind::gaussian)
        out << "gaussian:" << sigma;
    else
        out << "eps:" << eps << "," << sigma1 << "," << sigma2;
    return out.str();
}

Signal add_noise(const Signal& x, const NoiseModel& model) {
    SeededRng rng(model.seed);
    Signal out = x;
    if (model.kind == NoiseModel::Kind::gaussian) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += model.sigma * rng.gaussian();
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const bool nominal = rng.uniform() < model.eps;
            out[i] += (nominal ? model.sigma1 : model.sigma2) * rng.gaussian();
        }
    }
    return out;
}

} // namespace epocs
