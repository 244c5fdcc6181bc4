#include "cpart/rng.hpp"

#include <random>

namespace cpart {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t SeededRng::next_u64() {
    // xoshiro256** step.
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t SeededRng::uniform_int(std::uint64_t n) {
    // Rejection sampling on the top bits; unbiased for every n.
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double SeededRng::uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool SeededRng::bernoulli(double p) { return uniform_real() < p; }

SeededRng SeededRng::split(std::uint64_t stream_index) const {
    std::uint64_t sm = seed_ ^ 0xa0761d6478bd642fULL;
    std::uint64_t base = splitmix64(sm);
    std::uint64_t mix = base + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
    return SeededRng(splitmix64(mix));
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace cpart
