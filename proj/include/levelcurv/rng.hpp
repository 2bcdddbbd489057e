#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace levelcurv {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ generator with deterministic (seed, stream) initialization.
/// Streams derived from distinct indices are independent for practical
/// purposes and reproducible across platforms and thread counts, which is
/// what makes the parallel Monte Carlo kernels bit-exact.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
    {
        std::uint64_t x = seed ^ (0xd1b54a32d192ed03ULL * (stream + 0x632be59bd9b4e019ULL));
        for(auto& s : s_)
            s = splitmix64(x);
    }

    std::uint64_t next()
    {
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

    /// uniform in [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform in (0, 1], safe as a log() argument
    double uniform01_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    /// Box-Muller pair of independent standard normals
    std::pair<double, double> normal_pair()
    {
        const double r = std::sqrt(-2.0 * std::log(uniform01_open()));
        const double t = 6.283185307179586476925286766559 * uniform01();
        return {r * std::cos(t), r * std::sin(t)};
    }

    double normal()
    {
        if(have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto [a, b] = normal_pair();
        spare_ = b;
        have_spare_ = true;
        return a;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace levelcurv
