#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hetlab {

// 64-bit finalizer from the splitmix64 generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives the seed of sub-stream `index` from a master seed. Streams
// derived this way are what workers own; the construction is fixed so
// that results are reproducible regardless of worker count:
//
//   substream_seed(master, i) = splitmix64(splitmix64(master) ^ splitmix64(i + 1))
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

// Seeded random stream. Owned by exactly one consumer at a time.
// All derived draws (uniform, normal, exponential, sign) are produced
// from mt19937_64 output in a fixed documented way, so a (seed, call
// sequence) pair yields bit-identical results everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t master, std::uint64_t index) {
        return Rng(substream_seed(master, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Exponential with the given rate.
    double exponential(double rate) {
        return -std::log(uniform_pos()) / rate;
    }

    // +1 or -1 with probability 1/2 each.
    double sign() {
        return (engine_() & 1u) ? 1.0 : -1.0;
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace hetlab
