#pragma once

#include "epocs/signal.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace epocs {

// Deterministic generator: mt19937_64 plus a hand-rolled Box-Muller draw so
// sampled streams do not depend on the standard library's distribution
// implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform();
    // Standard normal.
    double gaussian();
    // Uniform integer in [0, bound).
    std::uint64_t integer(std::uint64_t bound);

private:
    std::mt19937_64 gen_;
};

// Splits one master seed into independent sub-streams keyed by a role tag and
// an index; the same (seed, tag, index) always yields the same sub-seed.
std::uint64_t sub_seed(std::uint64_t master, std::string_view role, std::uint64_t index);

struct NoiseModel {
    enum class Kind { gaussian, eps_contaminated };

    Kind kind = Kind::gaussian;
    double sigma = 0.0;              // gaussian
    double eps = 0.0;                // probability of the nominal component
    double sigma1 = 0.0;             // nominal (small) component
    double sigma2 = 0.0;             // outlier (large) component
    std::uint64_t seed = 0;

    static NoiseModel gaussian_model(double sigma, std::uint64_t seed);
    static NoiseModel eps_model(double eps, double sigma1, double sigma2, std::uint64_t seed);

    // Parses "gaussian:<std>" or "eps:<eps>,<s1>,<s2>".
    static NoiseModel parse(const std::string& spec, std::uint64_t seed);

    std::string describe() const;
};

// v = x + eta.  For the contaminated model each sample is nominal with
// probability eps and an outlier otherwise.
Signal add_noise(const Signal& x, const NoiseModel& model);

} // namespace epocs
