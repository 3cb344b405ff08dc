#ifndef SHIELDSIM_RNG_HPP
#define SHIELDSIM_RNG_HPP

#include <cstdint>

namespace shieldsim {

// xoshiro256++ with a splitmix64 seeder. Hand-rolled so that streams are
// bit-reproducible across platforms and standard-library versions; the
// <random> distributions make no such guarantee.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto &word : state_)
            word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool next_bool(double p) { return next_unit() < p; }

    // Binomial(n, p) as n Bernoulli draws; n stays small in this codebase.
    int next_binomial(int n, double p) {
        int hits = 0;
        for (int i = 0; i < n; ++i)
            hits += next_bool(p) ? 1 : 0;
        return hits;
    }

    static std::uint64_t splitmix64(std::uint64_t &x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derives an independent stream seed from (base, purpose, index).
    static std::uint64_t derive(std::uint64_t base, std::uint64_t purpose, std::uint64_t index) {
        std::uint64_t x = base;
        std::uint64_t a = splitmix64(x);
        x = a ^ (purpose * 0x9e3779b97f4a7c15ULL);
        std::uint64_t b = splitmix64(x);
        x = b ^ (index + 0x6a09e667f3bcc909ULL);
        return splitmix64(x);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace shieldsim

#endif
