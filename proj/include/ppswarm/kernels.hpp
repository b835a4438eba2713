#pragma once

// One iteration of each algorithm family, in base, PP and HPP variants.
//
// Two streams per run: `rng` drives the dynamics, `noise` feeds only the PP
// perturbation, so a PP run with vanishing noise retraces its base run.
// Draw order on `rng` is part of the contract (the golden-trace tests replay it):
//   PSO  per agent: U1[0..d), U2[0..d).
//   BAT  per agent: frequency, pulse coin, local walk normals (walk branch only),
//        loudness coin.
//   CSO  permutation (Fisher-Yates, k = n-1..1, index(k+1)), then per pair in
//        order: loser U1[0..d), U2[0..d), U3[0..d) only if phi != 0.
//   DE   per agent: j, k by rejection, forced coordinate, one crossover coin per
//        other coordinate in increasing order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "algorithm_config.hpp"
#include "perturbation.hpp"
#include "random.hpp"
#include "search_space.hpp"
#include "swarm_state.hpp"

namespace ppswarm {

namespace detail {

/// Finish a raw move: PP for explorers, plain projection otherwise.
template <RandomSource N>
void place(std::span<double> x, bool explorer, const AlgorithmConfig& c, const Box& box, N& noise,
           std::span<double> scratch)
{
    for (const double v : x)
        if (std::isnan(v))
            throw RunFailure("swarm diverged: NaN coordinate in a candidate move");
    if (c.perturbs() && explorer)
        perturb_project(x, box, c.noise, noise, scratch);
    else if (c.perturbs() || c.base_projection)
        clamp_into(x, box);
}

} // namespace detail

template <class F, RandomSource R, RandomSource N>
void pso_step(SwarmState& s, const AlgorithmConfig& c, const Box& box, const F& f, R& rng, N& noise)
{
    const std::size_t n = s.size(), d = box.dim();
    const auto mask = explorer_mask(c.role_policy(), n);
    std::vector<double> u1(d), u2(d), scratch(d);

    for (std::size_t i = 0; i < n; ++i) {
        for (auto& u : u1) u = rng.uniform01();
        for (auto& u : u2) u = rng.uniform01();
        auto& x = s.positions[i];
        auto& v = s.velocities[i];
        const auto& pb = s.personal_best[i];
        for (std::size_t k = 0; k < d; ++k) {
            v[k] = c.pso.w * v[k] + c.pso.c1 * u1[k] * (pb[k] - x[k]) +
                   c.pso.c2 * u2[k] * (s.global_best[k] - x[k]);
            x[k] += v[k];
        }
        detail::place(x, mask[i], c, box, noise, scratch);
        s.values[i] = detail::evaluate(f, x, s);
        if (s.values[i] < s.personal_best_values[i]) {
            s.personal_best[i] = x;
            s.personal_best_values[i] = s.values[i];
        }
    }

    // condition H: strict improvement of the best personal memory
    const std::size_t j = detail::argmin(s.personal_best_values);
    if (s.personal_best_values[j] < s.global_best_value) {
        s.global_best = s.personal_best[j];
        s.global_best_value = s.personal_best_values[j];
    }
    detail::remember(s, s.global_best, s.global_best_value);
    ++s.iteration;
}

template <class F, RandomSource R, RandomSource N>
void bat_step(SwarmState& s, const AlgorithmConfig& c, const Box& box, const F& f, R& rng, N& noise)
{
    const std::size_t n = s.size(), d = box.dim();
    const auto mask = explorer_mask(c.role_policy(), n);
    const auto& p = c.bat;
    Point candidate(d);
    std::vector<double> scratch(d);

    for (std::size_t i = 0; i < n; ++i) {
        auto& x = s.positions[i];
        auto& v = s.velocities[i];
        const double freq = p.q_min + (p.q_max - p.q_min) * rng.uniform01();
        for (std::size_t k = 0; k < d; ++k)
            v[k] += p.sign * freq * (x[k] - s.global_best[k]);

        if (rng.uniform01() < p.pulse_rate) {
            for (std::size_t k = 0; k < d; ++k)
                candidate[k] = x[k] + v[k];
        } else {
            for (std::size_t k = 0; k < d; ++k)
                candidate[k] = s.global_best[k] + p.local_step_sigma * rng.normal();
        }
        detail::place(candidate, mask[i], c, box, noise, scratch);

        // Reject the move when the loudness coin fires or the (projected) old
        // position is strictly better.
        const bool loud = rng.uniform01() < p.loudness;
        if (!contains(x, box)) {
            clamp_into(x, box);
            s.values[i] = detail::evaluate(f, x, s);
        }
        if (loud)
            continue;
        const double fc = detail::evaluate(f, candidate, s);
        if (s.values[i] < fc)
            continue;
        x = candidate;
        s.values[i] = fc;
    }

    const std::size_t j = detail::argmin(s.values);
    s.global_best = s.positions[j];
    s.global_best_value = s.values[j];
    detail::remember(s, s.global_best, s.global_best_value);
    ++s.iteration;
}

template <class F, RandomSource R, RandomSource N>
void cso_step(SwarmState& s, const AlgorithmConfig& c, const Box& box, const F& f, R& rng, N& noise)
{
    const std::size_t n = s.size(), d = box.dim();
    if (n % 2 != 0)
        throw std::invalid_argument("cso_step: swarm size must be even");
    const auto mask = explorer_mask(c.role_policy(), n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = n - 1; k > 0; --k)
        std::swap(order[k], order[rng.index(k + 1)]);

    const bool use_mean = c.cso.phi != 0.0;
    std::vector<double> mean;
    if (use_mean) {
        mean.assign(d, 0.0);
        for (const auto& x : s.positions)
            for (std::size_t k = 0; k < d; ++k)
                mean[k] += x[k];
        for (auto& m : mean)
            m /= static_cast<double>(n);
    }

    std::vector<double> u1(d), u2(d), u3(d), scratch(d);
    for (std::size_t pair = 0; pair < n / 2; ++pair) {
        const std::size_t a = order[2 * pair], b = order[2 * pair + 1];
        const std::size_t win = s.values[a] < s.values[b] ? a : b;
        const std::size_t lose = win == a ? b : a;

        for (auto& u : u1) u = rng.uniform01();
        for (auto& u : u2) u = rng.uniform01();
        if (use_mean)
            for (auto& u : u3) u = rng.uniform01();

        auto& xl = s.positions[lose];
        auto& vl = s.velocities[lose];
        const auto& xw = s.positions[win];
        for (std::size_t k = 0; k < d; ++k) {
            double nv = u1[k] * vl[k] + u2[k] * (xw[k] - xl[k]);
            if (use_mean)
                nv += c.cso.phi * u3[k] * (mean[k] - xl[k]);
            vl[k] = nv;
            xl[k] += nv;
        }
        detail::place(xl, mask[2 * pair], c, box, noise, scratch);
        s.values[lose] = detail::evaluate(f, xl, s);
    }

    const std::size_t j = detail::argmin(s.values);
    s.global_best = s.positions[j];
    s.global_best_value = s.values[j];
    detail::remember(s, s.global_best, s.global_best_value);
    ++s.iteration;
}

template <class F, RandomSource R, RandomSource N>
void de_step(SwarmState& s, const AlgorithmConfig& c, const Box& box, const F& f, R& rng, N& noise)
{
    const std::size_t n = s.size(), d = box.dim();
    if (n < 4)
        throw std::invalid_argument("de_step: need n >= 4");
    const auto mask = explorer_mask(c.role_policy(), n);
    const std::vector<Point> old = s.positions; // mutants use the time-t population
    Point y(d);
    std::vector<double> scratch(d);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j, k;
        do j = rng.index(n); while (j == i);
        do k = rng.index(n); while (k == i || k == j);

        for (std::size_t m = 0; m < d; ++m)
            y[m] = old[i][m] + c.de.weight * (old[j][m] - old[k][m]);
        const std::size_t forced = rng.index(d);
        for (std::size_t m = 0; m < d; ++m)
            if (m != forced && rng.uniform01() < 1.0 - c.de.crossover)
                y[m] = old[i][m];

        detail::place(y, mask[i], c, box, noise, scratch);
        const double fy = detail::evaluate(f, y, s);
        if (fy < s.values[i]) {
            s.positions[i] = y;
            s.values[i] = fy;
        }
    }

    const std::size_t best = detail::argmin(s.values);
    s.global_best = s.positions[best];
    s.global_best_value = s.values[best];
    detail::remember(s, s.global_best, s.global_best_value);
    ++s.iteration;
}

/// Advance one iteration with the kernel of `c.family`.
template <class F, RandomSource R, RandomSource N>
void step(SwarmState& s, const AlgorithmConfig& c, const Box& box, const F& f, R& rng, N& noise)
{
    switch (c.family) {
    case Family::pso: pso_step(s, c, box, f, rng, noise); break;
    case Family::bat: bat_step(s, c, box, f, rng, noise); break;
    case Family::cso: cso_step(s, c, box, f, rng, noise); break;
    case Family::de: de_step(s, c, box, f, rng, noise); break;
    }
}

} // namespace ppswarm
