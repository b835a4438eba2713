#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "random.hpp"
#include "search_space.hpp"

namespace ppswarm {

/// Per-coordinate standard deviation of the scaled Student-t noise.
inline constexpr double kScaledTStd = 0.01;

/// Distribution of the additive exploration noise w.
struct NoiseModel {
    enum class Kind { gaussian, scaled_t };

    Kind kind = Kind::gaussian;
    double sigma = 0.005; // gaussian standard deviation per coordinate
    int df = 5;           // scaled_t degrees of freedom

    static NoiseModel gaussian(double sigma) { return {Kind::gaussian, sigma, 5}; }
    static NoiseModel scaled_t(int df) { return {Kind::scaled_t, 0.005, df}; }

    /// Multiplier on a raw t_df draw: 0.01 * sqrt((df - 2) / df).
    double t_scale() const
    {
        return kScaledTStd * std::sqrt(static_cast<double>(df - 2) / static_cast<double>(df));
    }

    void validate() const
    {
        if (kind == Kind::gaussian) {
            if (!std::isfinite(sigma) || !(sigma > 0.0))
                throw std::invalid_argument("NoiseModel: gaussian sigma must be finite and > 0");
        } else if (df <= 2) {
            throw std::invalid_argument("NoiseModel: scaled_t needs df > 2, got " +
                                        std::to_string(df));
        }
    }

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

inline std::string to_string(NoiseModel::Kind k)
{
    return k == NoiseModel::Kind::gaussian ? "gaussian" : "scaled_t";
}

/// Which agents receive perturbation under PP / HPP.
enum class RolePolicy {
    all,                    // every non-memory agent
    first_half,             // agents 1..floor(n/2)
    loser_first_half_pairs, // CSO: losers of the first floor(pairs/2) pairs
};

inline std::string to_string(RolePolicy p)
{
    switch (p) {
    case RolePolicy::all: return "all";
    case RolePolicy::first_half: return "first_half";
    case RolePolicy::loser_first_half_pairs: return "loser_first_half_pairs";
    }
    return "?";
}

/// Fill `out` with independent draws from the model.
template <RandomSource R>
void sample_noise_into(std::span<double> out, const NoiseModel& model, R& rng)
{
    if (model.kind == NoiseModel::Kind::gaussian) {
        for (double& w : out)
            w = model.sigma * rng.normal();
    } else {
        const double scale = model.t_scale();
        const double df = static_cast<double>(model.df);
        for (double& w : out)
            w = scale * draw_student_t(rng, df);
    }
}

template <RandomSource R>
std::vector<double> sample_noise(const NoiseModel& model, std::size_t d, R& rng)
{
    model.validate();
    if (d == 0)
        throw std::invalid_argument("sample_noise: d must be >= 1");
    std::vector<double> w(d);
    sample_noise_into(w, model, rng);
    return w;
}

/// In-place perturbation-projection: x <- clamp(clamp(x) + w). `x` must be finite.
template <RandomSource R>
void perturb_project(std::span<double> x, const Box& box, const NoiseModel& model, R& rng,
                     std::span<double> scratch)
{
    clamp_into(x, box);
    sample_noise_into(scratch, model, rng);
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] += scratch[k];
    clamp_into(x, box);
}

/// project(project(candidate) + w), with w drawn once from `model`.
template <RandomSource R>
Point pp_update(std::span<const double> candidate, const Box& box, const NoiseModel& model,
                R& rng)
{
    model.validate();
    Point x = project(candidate, box);
    std::vector<double> w(x.size());
    perturb_project(x, box, model, rng, w);
    return x;
}

/// Explorer roles for a swarm of n agents. Deterministic and fixed over time.
/// For loser_first_half_pairs the mask is over slots of the pairing order:
/// slots 2p and 2p+1 form pair p, and a pair is an explorer pair iff p < floor((n/2)/2).
inline std::vector<bool> explorer_mask(RolePolicy policy, std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("explorer_mask: need n >= 2, got " + std::to_string(n));
    std::vector<bool> mask(n, false);
    switch (policy) {
    case RolePolicy::all:
        mask.assign(n, true);
        break;
    case RolePolicy::first_half:
        for (std::size_t i = 0; i < n / 2; ++i)
            mask[i] = true;
        break;
    case RolePolicy::loser_first_half_pairs:
        for (std::size_t slot = 0; slot < 2 * ((n / 2) / 2); ++slot)
            mask[slot] = true;
        break;
    }
    return mask;
}

} // namespace ppswarm
