#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

#include "perturbation.hpp"
#include "random.hpp"

namespace ppswarm {

enum class Family { pso, bat, cso, de };

/// base: the algorithm as published; pp: perturbation-projection on every agent;
/// hpp: perturbation-projection on the explorer half only.
enum class Variant { base, pp, hpp };

inline std::string_view family_name(Family f)
{
    switch (f) {
    case Family::pso: return "PSO";
    case Family::bat: return "BAT";
    case Family::cso: return "CSO";
    case Family::de: return "DE";
    }
    return "?";
}

struct PsoParams {
    double w = 0.729; // inertia
    double c1 = 1.5;  // cognitive
    double c2 = 1.5;  // social
};

struct BatParams {
    double q_min = 0.0;
    double q_max = 100.0;
    double pulse_rate = 0.5; // r0: below it the bat flies, otherwise it walks near the best
    double loudness = 0.5;   // rA: below it the move is rejected outright
    double local_step_sigma = 0.001;
    /// Orientation of the frequency term; +1 is v + U (x_i - x*).
    double sign = 1.0;
};

struct CsoParams {
    double phi = 0.0; // pull toward the swarm mean
};

struct DeParams {
    double weight = 0.8;    // differential weight F
    double crossover = 0.9; // per-coordinate probability of keeping the mutant
};

struct AlgorithmConfig {
    Family family = Family::pso;
    Variant variant = Variant::base;
    std::size_t n = 32;
    PsoParams pso;
    BatParams bat;
    CsoParams cso;
    DeParams de;
    NoiseModel noise;
    /// Clamp base-variant moves into the box too, so every variant searches the same set.
    bool base_projection = true;

    /// Explorer policy implied by the variant.
    RolePolicy role_policy() const
    {
        if (variant == Variant::hpp)
            return family == Family::cso ? RolePolicy::loser_first_half_pairs
                                         : RolePolicy::first_half;
        return RolePolicy::all;
    }

    bool perturbs() const { return variant != Variant::base; }

    /// "PSO", "mPSO", "hmPSO", ...
    std::string label() const
    {
        const std::string prefix = variant == Variant::pp ? "m" : variant == Variant::hpp ? "hm" : "";
        return prefix + std::string(family_name(family));
    }

    void validate() const
    {
        if (n < 2)
            throw std::invalid_argument("AlgorithmConfig: n must be >= 2");
        if (family == Family::cso && n % 2 != 0)
            throw std::invalid_argument("AlgorithmConfig: CSO needs an even swarm size, got n=" +
                                        std::to_string(n));
        if (family == Family::de && n < 4)
            throw std::invalid_argument("AlgorithmConfig: DE needs n >= 4, got n=" +
                                        std::to_string(n));
        if (bat.q_max < bat.q_min)
            throw std::invalid_argument("AlgorithmConfig: BAT q_max < q_min");
        if (de.crossover < 0.0 || de.crossover > 1.0)
            throw std::invalid_argument("AlgorithmConfig: DE crossover must lie in [0, 1]");
        if (perturbs())
            noise.validate();
    }

    /// Canonical text form; two configs with the same string behave identically.
    std::string canonical() const
    {
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "%s|n=%zu|pso=%.17g,%.17g,%.17g|bat=%.17g,%.17g,%.17g,%.17g,%.17g,%.17g"
                      "|cso=%.17g|de=%.17g,%.17g|noise=%s,%.17g,%d|proj=%d",
                      label().c_str(), n, pso.w, pso.c1, pso.c2, bat.q_min, bat.q_max,
                      bat.pulse_rate, bat.loudness, bat.local_step_sigma, bat.sign, cso.phi,
                      de.weight, de.crossover, to_string(noise.kind).c_str(),
                      noise.kind == NoiseModel::Kind::gaussian ? noise.sigma : 0.0,
                      noise.kind == NoiseModel::Kind::scaled_t ? noise.df : 0,
                      base_projection ? 1 : 0);
        return buf;
    }

    std::string digest() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(canonical())));
        return buf;
    }
};

/// Parse "PSO", "mBAT", "hmCSO", "DE", ... into family and variant, defaults elsewhere.
inline AlgorithmConfig parse_algorithm(std::string_view label)
{
    AlgorithmConfig c;
    std::string_view rest = label;
    if (rest.starts_with("hm")) {
        c.variant = Variant::hpp;
        rest.remove_prefix(2);
    } else if (rest.starts_with("m")) {
        c.variant = Variant::pp;
        rest.remove_prefix(1);
    }
    if (rest == "PSO")
        c.family = Family::pso;
    else if (rest == "BAT")
        c.family = Family::bat;
    else if (rest == "CSO")
        c.family = Family::cso;
    else if (rest == "DE")
        c.family = Family::de;
    else
        throw std::invalid_argument("unknown algorithm '" + std::string(label) +
                                    "' (expected [m|hm](PSO|BAT|CSO|DE))");
    return c;
}

} // namespace ppswarm
