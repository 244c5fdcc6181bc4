#pragma once

#include <cstdint>
#include <vector>

namespace cpart {

// Deterministic 64-bit generator with stable derived operations.
//
// All randomness in the library flows through this type. The raw engine is
// splitmix64-seeded xoshiro256**; the bounded-int and unit-interval mappings
// are implemented here rather than with std:: distributions so that a seed
// produces the same stream on every platform and standard library.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n);

    // Uniform double in [0, 1) with 53 random bits.
    double uniform_real();

    // Bernoulli with a double probability. Samplers that need exact rational
    // probabilities draw a uniform integer below the denominator instead
    // (see uniform_bigint in samplers.hpp).
    bool bernoulli(double p);

    // Independent child stream; deterministic in (this stream's seed, index).
    SeededRng split(std::uint64_t stream_index) const;

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

// Draw from the OS entropy source; used only when the user omits a seed.
std::uint64_t entropy_seed();

}  // namespace cpart
