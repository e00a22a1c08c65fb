#pragma once

#include <cstdint>
#include <random>

namespace spacenet {

enum class RngStream : std::uint64_t {
    Loss = 0x6c6f7373,
    Traffic = 0x74726166,
    Test = 0x74657374,
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, RngStream stream, std::uint64_t index = 0);

// Portable random stream: the same seed gives the same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  // [0, 1)
    double uniform(double lo, double hi);
    double normal(double mean, double stddev);
    double pareto(double scale, double shape);
    std::uint64_t below(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace spacenet
