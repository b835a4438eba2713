#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algorithm_config.hpp"
#include "random.hpp"
#include "search_space.hpp"

namespace ppswarm {

/// A run that cannot continue (diverged swarm, broken objective).
class RunFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The objective returned NaN or infinity.
class NonFiniteObjective : public RunFailure {
public:
    using RunFailure::RunFailure;
};

/// Positions, auxiliary vectors and memory agents of one swarm.
struct SwarmState {
    std::vector<Point> positions;
    std::vector<double> values; // f(positions[i])
    std::vector<std::vector<double>> velocities; // unused by DE

    // PSO personal memory agents.
    std::vector<Point> personal_best;
    std::vector<double> personal_best_values;

    /// The best agent as seen by the dynamics (x* in the update rules).
    Point global_best;
    double global_best_value = std::numeric_limits<double>::infinity();

    /// Best point ever evaluated and accepted; this is what gets reported.
    Point best_point;
    double best_value = std::numeric_limits<double>::infinity();

    std::size_t iteration = 0;
    std::size_t evaluations = 0;

    std::size_t size() const noexcept { return positions.size(); }
    std::size_t dim() const noexcept { return positions.empty() ? 0 : positions.front().size(); }
};

namespace detail {

template <class F>
double evaluate(const F& f, std::span<const double> x, SwarmState& s)
{
    const double v = f(x);
    ++s.evaluations;
    if (!std::isfinite(v))
        throw NonFiniteObjective("objective returned a non-finite value at iteration " +
                                 std::to_string(s.iteration));
    return v;
}

inline std::size_t argmin(const std::vector<double>& v)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[best])
            best = i;
    return best;
}

inline void remember(SwarmState& s, std::span<const double> x, double value)
{
    if (value < s.best_value) {
        s.best_value = value;
        s.best_point.assign(x.begin(), x.end());
    }
}

} // namespace detail

/// Build a state from explicit starting positions (which must lie in the box).
template <class F>
SwarmState make_state(const AlgorithmConfig& config, const Box& box, const F& f,
                      std::vector<Point> positions)
{
    config.validate();
    if (positions.size() != config.n)
        throw std::invalid_argument("make_state: expected " + std::to_string(config.n) +
                                    " positions, got " + std::to_string(positions.size()));
    for (const auto& p : positions)
        if (!contains(p, box))
            throw std::invalid_argument("make_state: starting position outside the box");

    SwarmState s;
    s.positions = std::move(positions);
    s.values.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i)
        s.values[i] = detail::evaluate(f, s.positions[i], s);
    if (config.family != Family::de)
        s.velocities.assign(config.n, std::vector<double>(box.dim(), 0.0));
    if (config.family == Family::pso) {
        s.personal_best = s.positions;
        s.personal_best_values = s.values;
    }
    const std::size_t j = detail::argmin(s.values);
    s.global_best = s.positions[j];
    s.global_best_value = s.values[j];
    s.best_point = s.global_best;
    s.best_value = s.global_best_value;
    return s;
}

/// Uniform initial swarm, zero velocities, memories at the starting points.
template <class F, RandomSource R>
SwarmState init_state(const AlgorithmConfig& config, const Box& box, const F& f, R& rng)
{
    config.validate();
    std::vector<Point> positions;
    positions.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i)
        positions.push_back(sample_uniform(box, rng));
    return make_state(config, box, f, std::move(positions));
}

} // namespace ppswarm
