#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numbers>
#include <random>

namespace bband {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t bits_of(double v) noexcept
{
    std::uint64_t out;
    std::memcpy(&out, &v, sizeof out);
    return out;
}

/// Folds stream identifiers into the root seed; independent of call order elsewhere.
inline std::uint64_t derive_stream_seed(std::uint64_t root, std::initializer_list<std::uint64_t> ids) noexcept
{
    std::uint64_t h = splitmix64(root);
    for (auto id : ids) {
        h = splitmix64(h ^ splitmix64(id));
    }
    return h;
}

/// mt19937_64 with portable uniform/normal transforms, so draws do not
/// depend on the standard library's distribution implementations.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed)
        : m_engine(seed)
    {
    }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller, one value per call.
    double normal() noexcept
    {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 m_engine;
};

}  // namespace bband
