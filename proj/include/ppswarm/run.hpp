#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algorithm_config.hpp"
#include "kernels.hpp"
#include "objectives.hpp"
#include "random.hpp"
#include "search_space.hpp"
#include "swarm_state.hpp"

namespace ppswarm {

/// Counts of broken convergence hypotheses seen during a run. Both stay 0.
struct InvariantCounters {
    std::size_t containment = 0;  // an agent or memory agent outside the box
    std::size_t monotonicity = 0; // the best-so-far value went up

    std::size_t total() const noexcept { return containment + monotonicity; }
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::string algorithm;
    std::string config_digest;
    /// (iteration, best-so-far value), ascending in iteration.
    std::vector<std::pair<std::size_t, double>> checkpoints;
    Point final_best_point;
    double final_best_value = 0.0;
    std::size_t evaluations = 0;
    InvariantCounters violations;
};

/// Checkpoints must be strictly increasing and none past max_iter.
inline void validate_checkpoints(std::span<const std::size_t> checkpoints, std::size_t max_iter)
{
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > max_iter)
            throw std::invalid_argument("checkpoint " + std::to_string(checkpoints[i]) +
                                        " exceeds max_iter " + std::to_string(max_iter));
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    }
}

/// Seed of the perturbation sub-stream of a run.
inline std::uint64_t noise_seed(std::uint64_t seed) noexcept
{
    return mix64(seed ^ 0x6e6f697365ULL);
}

namespace detail {

inline std::size_t count_outside(const SwarmState& s, const Box& box)
{
    std::size_t bad = 0;
    for (const auto& x : s.positions)
        bad += !contains(x, box);
    for (const auto& x : s.personal_best)
        bad += !contains(x, box);
    if (!s.global_best.empty())
        bad += !contains(s.global_best, box);
    if (!s.best_point.empty())
        bad += !contains(s.best_point, box);
    return bad;
}

} // namespace detail

/// Run `config` from a fresh seeded swarm for `max_iter` iterations, recording the
/// best-so-far value at each checkpoint. Throws RunFailure if the run breaks down.
template <class F>
RunRecord run(const AlgorithmConfig& config, const F& objective, const Box& box,
              std::uint64_t seed, std::size_t max_iter, std::span<const std::size_t> checkpoints,
              bool check_invariants = true)
{
    config.validate();
    validate_checkpoints(checkpoints, max_iter);

    RunRecord rec;
    rec.seed = seed;
    rec.algorithm = config.label();
    rec.config_digest = config.digest();

    RandomStream rng(seed);
    RandomStream noise(noise_seed(seed));
    SwarmState s = init_state(config, box, objective, rng);
    if (check_invariants)
        rec.violations.containment += detail::count_outside(s, box);

    std::size_t next = 0;
    auto record_due = [&] {
        while (next < checkpoints.size() && checkpoints[next] == s.iteration)
            rec.checkpoints.emplace_back(checkpoints[next++], s.best_value);
    };
    record_due();

    for (std::size_t t = 0; t < max_iter; ++t) {
        const double before = s.best_value;
        step(s, config, box, objective, rng, noise);
        if (check_invariants) {
            rec.violations.containment += detail::count_outside(s, box);
            rec.violations.monotonicity += s.best_value > before;
        }
        record_due();
    }

    rec.final_best_point = s.best_point;
    rec.final_best_value = s.best_value;
    rec.evaluations = s.evaluations;
    return rec;
}

/// Run against a registered test function at dimension d.
inline RunRecord run(const AlgorithmConfig& config, const ObjectiveSpec& spec, std::size_t d,
                     const Box& box, std::uint64_t seed, std::size_t max_iter,
                     std::span<const std::size_t> checkpoints, bool check_invariants = true)
{
    spec.require_dim(d);
    if (box.dim() != d)
        throw std::invalid_argument("run: box dimension does not match d");
    return run(config, spec.f, box, seed, max_iter, checkpoints, check_invariants);
}

} // namespace ppswarm
