#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>

namespace ppswarm {

/// Anything the kernels can draw from. Kernels only ever ask for these three
/// primitives, so a test can substitute a scripted source and trace a step by hand.
template <class R>
concept RandomSource = requires(R& r, std::size_t n) {
    { r.uniform01() } -> std::convertible_to<double>;
    { r.normal() } -> std::convertible_to<double>;
    { r.index(n) } -> std::convertible_to<std::size_t>;
};

/// Seeded stream over std::mt19937_64. The distribution transforms are written
/// out here instead of using <random> distributions, whose output sequences are
/// implementation-defined; stored experiments must replay on any toolchain.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal, Marsaglia polar method (second deviate cached).
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    /// Uniform integer on [0, n), unbiased by rejection.
    std::size_t index(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("index: empty range");
        const std::uint64_t bound = n;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold)
                return static_cast<std::size_t>(x % bound);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Gamma(shape, 1) by Marsaglia & Tsang; shape < 1 handled by the usual boost.
template <RandomSource R>
double draw_gamma(R& rng, double shape)
{
    if (!(shape > 0.0))
        throw std::invalid_argument("draw_gamma: shape must be positive");
    if (shape < 1.0) {
        const double u = rng.uniform01();
        return draw_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

/// Student-t with `df` degrees of freedom: Z / sqrt(chi2_df / df).
template <RandomSource R>
double draw_student_t(R& rng, double df)
{
    const double z = rng.normal();
    const double chi2 = 2.0 * draw_gamma(rng, 0.5 * df);
    return z / std::sqrt(chi2 / df);
}

// 64-bit mixing -------------------------------------------------------------

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a over bytes; used for canonical text encodings.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xcbf29ce484222325ULL) noexcept
{
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ppswarm
