#pragma once
// Seeded random number generation. All randomized procedures in the library
// take an explicit 64-bit seed so every run is reproducible.

#include <cstdint>
#include <random>

namespace qmc {

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // uniform double in [0,1) with 53 random bits
    double uniform() {
        return (double)(eng_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) {
        std::uniform_int_distribution<uint64_t> dist(0, n - 1);
        return dist(eng_);
    }

    uint64_t raw() { return eng_(); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace qmc
