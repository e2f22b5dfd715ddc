#ifndef HARDCOUNT_RNG_HPP
#define HARDCOUNT_RNG_HPP

#include <array>
#include <cstdint>
#include <string>

namespace hardcount {

// xoshiro256++ with splitmix64 seeding.  Bounded draws use rejection, not
// std::uniform_int_distribution, so streams are reproducible independent of
// the standard library.  split(tag) derives an independent child stream;
// parallel trial blocks each take split(block_index) so results do not depend
// on thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    static const char* name() { return "xoshiro256++"; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, bound), bound >= 1.
    std::uint64_t uniform_u64(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    std::size_t uniform_index(std::size_t bound) {
        return static_cast<std::size_t>(uniform_u64(static_cast<std::uint64_t>(bound)));
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_real() < p; }

    // Pure derivation of an independent child stream; safe to call from
    // concurrent readers.  Advance the parent explicitly (next_u64) when the
    // same tag may be reused later.
    Rng split(std::uint64_t tag) const {
        std::uint64_t x = s_[0] ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
        x ^= s_[2] + 0xbf58476d1ce4e5b9ULL * (tag + 0x2545f4914f6cdd1dULL);
        return Rng(splitmix64(x));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> s_{};
};

} // namespace hardcount

#endif
