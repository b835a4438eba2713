#pragma once

// Single-step golden traces on Sphere over [-1, 1]^2 with scripted draws.
// Expected literals come from tests/oracles/hand_traces.py; comparisons are exact.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ppswarm/kernels.hpp"
#include "support.hpp"

namespace ppswarm::test {

struct TraceResult {
    std::string name;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

namespace golden {

inline const Box& square()
{
    static const Box b = Box::cube(2, -1, 1);
    return b;
}

inline const std::vector<Point> kTwo = {{0.5, -0.5}, {-0.2, 0.4}};
inline const std::vector<Point> kFour = {{0.5, -0.5}, {-0.2, 0.4}, {0.9, 0.1}, {-0.3, -0.6}};

inline AlgorithmConfig make(Family f, Variant v, std::size_t n)
{
    AlgorithmConfig c;
    c.family = f;
    c.variant = v;
    c.n = n;
    return c;
}

// Gaussian noise normals for the first `agents` perturbed moves (sigma 0.005).
inline ScriptedSource noise_normals(std::size_t agents)
{
    switch (agents) {
    case 0: return ScriptedSource();
    case 1: return ScriptedSource({}, {0.4, -1.2});
    case 2: return ScriptedSource({}, {0.4, -1.2, 2.0, 0.7});
    default: return ScriptedSource({}, {0.4, -1.2, 2.0, 0.7, -0.6, 1.1, 0.3, 0.9});
    }
}

class Checker {
public:
    explicit Checker(TraceResult& r) : r_(r) {}

    void value(const std::string& what, double got, double want)
    {
        if (got != want) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: got %.17g, want %.17g", what.c_str(), got, want);
            r_.mismatches.emplace_back(buf);
        }
    }

    void point(const std::string& what, const Point& got, std::initializer_list<double> want)
    {
        if (got.size() != want.size()) {
            r_.mismatches.push_back(what + ": wrong dimension");
            return;
        }
        std::size_t k = 0;
        for (const double w : want) {
            value(what + "[" + std::to_string(k) + "]", got[k], w);
            ++k;
        }
    }

    void count(const std::string& what, std::size_t got, std::size_t want)
    {
        if (got != want)
            r_.mismatches.push_back(what + ": got " + std::to_string(got) + ", want " +
                                    std::to_string(want));
    }

    void drained(const std::string& what, const ScriptedSource& s)
    {
        if (!s.exhausted())
            r_.mismatches.push_back(what + ": scripted draws left over");
    }

private:
    TraceResult& r_;
};

template <class Body>
TraceResult trace(const std::string& name, Body body)
{
    TraceResult r{name, {}};
    Checker c(r);
    try {
        body(c);
    } catch (const std::exception& e) {
        r.mismatches.push_back(std::string("threw: ") + e.what());
    }
    return r;
}

// PSO: n = 2, velocities preset; U1, U2 per agent.
inline TraceResult pso(Variant v)
{
    return trace("PSO " + std::string(v == Variant::base ? "base" : v == Variant::pp ? "pp" : "hpp"),
                 [v](Checker& ck) {
        const auto c = make(Family::pso, v, 2);
        SwarmState s = make_state(c, square(), SphereFn{}, kTwo);
        s.velocities = {{0.1, 0.05}, {-0.3, 0.2}};
        ScriptedSource rng({0.25, 0.75, 0.5, 0.125, 0.9, 0.1, 0.3, 0.6});
        auto noise = noise_normals(v == Variant::base ? 0 : v == Variant::pp ? 2 : 1);
        pso_step(s, c, square(), SphereFn{}, rng, noise);
        ck.drained("rng", rng);
        ck.drained("noise", noise);
        ck.point("v0", s.velocities[0], {-0.4520999999999999, 0.20520000000000002});
        ck.point("v1", s.velocities[1], {-0.21869999999999998, 0.1458});
        ck.point("pb1", s.personal_best[1], {-0.2, 0.4});
        ck.count("iteration", s.iteration, 1);
        ck.count("evaluations", s.evaluations, 4);
        if (v == Variant::base) {
            ck.point("x0", s.positions[0], {0.04790000000000011, -0.29479999999999995});
            ck.point("x1", s.positions[1], {-0.41869999999999996, 0.5458000000000001});
            ck.value("f0", s.values[0], 0.08920144999999999);
            ck.value("f1", s.values[1], 0.47320733000000004);
            ck.point("pb0", s.personal_best[0], {0.04790000000000011, -0.29479999999999995});
            ck.point("g", s.global_best, {0.04790000000000011, -0.29479999999999995});
            ck.value("fg", s.global_best_value, 0.08920144999999999);
            ck.value("best", s.best_value, 0.08920144999999999);
        } else {
            ck.point("x0", s.positions[0], {0.04990000000000011, -0.30079999999999996});
            ck.value("f0", s.values[0], 0.09297064999999999);
            ck.point("g", s.global_best, {0.04990000000000011, -0.30079999999999996});
            ck.value("fg", s.global_best_value, 0.09297064999999999);
            if (v == Variant::pp) {
                ck.point("x1", s.positions[1], {-0.40869999999999995, 0.5493});
                ck.value("f1", s.values[1], 0.46876618);
            } else {
                ck.point("x1", s.positions[1], {-0.41869999999999996, 0.5458000000000001});
                ck.value("f1", s.values[1], 0.47320733000000004);
            }
        }
    });
}

// BAT: n = 2, q in [0, 1]; agent 0 takes branch (a) and reverts, agent 1 walks and accepts.
inline TraceResult bat(Variant v)
{
    return trace(std::string("BAT ") + (v == Variant::base ? "base" : "pp"), [v](Checker& ck) {
        auto c = make(Family::bat, v, 2);
        c.bat.q_max = 1.0;
        SwarmState s = make_state(c, square(), SphereFn{}, kTwo);
        ScriptedSource rng({0.3, 0.2, 0.9, 0.6, 0.7, 0.8}, {1.5, -2.0});
        auto noise = noise_normals(v == Variant::base ? 0 : 2);
        bat_step(s, c, square(), SphereFn{}, rng, noise);
        ck.drained("rng", rng);
        ck.drained("noise", noise);
        ck.point("x0", s.positions[0], {0.5, -0.5});
        ck.point("v0", s.velocities[0], {0.21, -0.27});
        ck.point("v1", s.velocities[1], {0.0, 0.0});
        ck.value("f0", s.values[0], 0.5);
        ck.count("evaluations", s.evaluations, 4);
        if (v == Variant::base) {
            ck.point("x1", s.positions[1], {-0.1985, 0.398});
            ck.value("f1", s.values[1], 0.19780625000000002);
            ck.point("g", s.global_best, {-0.1985, 0.398});
            ck.value("fg", s.global_best_value, 0.19780625000000002);
            ck.value("best", s.best_value, 0.19780625000000002);
        } else {
            ck.point("x1", s.positions[1], {-0.1885, 0.4015});
            ck.value("f1", s.values[1], 0.19673450000000003);
            ck.point("g", s.global_best, {-0.1885, 0.4015});
            ck.value("fg", s.global_best_value, 0.19673450000000003);
        }
    });
}

// CSO: n = 4; Fisher-Yates indices 1, 0, 1 give the order {2, 3, 0, 1}, losers 2 then 0.
inline TraceResult cso(Variant v)
{
    return trace(std::string("CSO ") + (v == Variant::base ? "base" : "hpp"), [v](Checker& ck) {
        const auto c = make(Family::cso, v, 4);
        SwarmState s = make_state(c, square(), SphereFn{}, kFour);
        s.velocities = {{0.0, 0.0}, {0.05, 0.0}, {0.1, -0.2}, {0.0, 0.3}};
        ScriptedSource rng({0.5, 0.25, 0.75, 0.4, 0.2, 0.6, 0.8, 0.3}, {}, {1, 0, 1});
        auto noise = noise_normals(v == Variant::base ? 0 : 1);
        cso_step(s, c, square(), SphereFn{}, rng, noise);
        ck.drained("rng", rng); // phi = 0 draws no U3
        ck.drained("noise", noise);
        ck.point("x0", s.positions[0], {-0.05999999999999994, -0.22999999999999998});
        ck.point("v0", s.velocities[0], {-0.5599999999999999, 0.27});
        ck.point("x1", s.positions[1], {-0.2, 0.4});
        ck.point("v1", s.velocities[1], {0.05, 0.0});
        ck.point("v2", s.velocities[2], {-0.8499999999999999, -0.32999999999999996});
        ck.point("x3", s.positions[3], {-0.3, -0.6});
        ck.point("v3", s.velocities[3], {0.0, 0.3});
        ck.value("f0", s.values[0], 0.05649999999999998);
        ck.value("f1", s.values[1], 0.20000000000000004);
        ck.value("f3", s.values[3], 0.44999999999999996);
        if (v == Variant::base) {
            ck.point("x2", s.positions[2], {0.050000000000000155, -0.22999999999999995});
            ck.value("f2", s.values[2], 0.0554);
            ck.point("g", s.global_best, {0.050000000000000155, -0.22999999999999995});
            ck.value("fg", s.global_best_value, 0.0554);
        } else {
            ck.point("x2", s.positions[2], {0.05200000000000016, -0.23599999999999996});
            ck.value("f2", s.values[2], 0.0584);
            ck.point("g", s.global_best, {-0.05999999999999994, -0.22999999999999998});
            ck.value("fg", s.global_best_value, 0.05649999999999998);
        }
    });
}

// DE: n = 4; per agent j and k (with rejections), forced coordinate, one crossover coin.
inline TraceResult de(Variant v)
{
    return trace(std::string("DE ") + (v == Variant::base ? "base" : "pp"), [v](Checker& ck) {
        const auto c = make(Family::de, v, 4);
        SwarmState s = make_state(c, square(), SphereFn{}, kFour);
        ScriptedSource rng({0.05, 0.5, 0.95, 0.02}, {},
                           {0, 2, 2, 3, 1, 3, 1, 0, 0, 2, 1, 3, 1, 0, 2, 0});
        auto noise = noise_normals(v == Variant::base ? 0 : 4);
        de_step(s, c, square(), SphereFn{}, rng, noise);
        ck.drained("rng", rng);
        ck.drained("noise", noise);
        ck.point("x1", s.positions[1], {-0.2, 0.4});
        ck.point("x2", s.positions[2], {0.9, 0.1});
        ck.point("x3", s.positions[3], {-0.3, -0.6});
        ck.value("f1", s.values[1], 0.20000000000000004);
        ck.value("f2", s.values[2], 0.8200000000000001);
        ck.value("f3", s.values[3], 0.44999999999999996);
        ck.point("g", s.global_best, {-0.2, 0.4});
        ck.value("fg", s.global_best_value, 0.20000000000000004);
        ck.count("evaluations", s.evaluations, 8);
        if (v == Variant::base) {
            ck.point("x0", s.positions[0], {0.5, 0.05999999999999994});
            ck.value("f0", s.values[0], 0.2536);
        } else {
            ck.point("x0", s.positions[0], {0.502, 0.053999999999999944});
            ck.value("f0", s.values[0], 0.25492);
        }
    });
}

} // namespace golden

inline std::vector<TraceResult> run_golden_traces()
{
    using namespace golden;
    return {pso(Variant::base), pso(Variant::pp), pso(Variant::hpp), bat(Variant::base),
            bat(Variant::pp),   cso(Variant::base), cso(Variant::hpp), de(Variant::base),
            de(Variant::pp)};
}

} // namespace ppswarm::test
