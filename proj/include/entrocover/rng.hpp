#pragma once

#include <cstdint>

namespace entrocover {

// xoshiro256** with splitmix64 seeding. Hand-rolled on purpose: std::mt19937 plus
// the standard distributions are not bit-reproducible across library
// implementations, and reports must be byte-identical for a given seed.
class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        // splitmix64 expands the seed into the full state
        std::uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
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

    // uniform in [0,1), 53 bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n), Lemire reduction (no rejection; negligible bias
    // for the tiny ranges used here, and fully deterministic)
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    long long uniform_int(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // uniform even integer in [lo, hi] (bounds need not be even themselves)
    long long uniform_even(long long lo, long long hi) {
        long long first = lo + (((lo % 2) != 0) ? 1 : 0);
        long long last = hi - (((hi % 2) != 0) ? 1 : 0);
        long long count = (last - first) / 2 + 1;
        return first + 2 * static_cast<long long>(below(static_cast<std::uint64_t>(count)));
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace entrocover
