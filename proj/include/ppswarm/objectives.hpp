#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "search_space.hpp"

namespace ppswarm {

/// Raised when an objective is asked for a dimension it is not defined at.
class UnsupportedDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The dimensions the benchmark collection instantiates free-dimension functions at.
inline constexpr std::size_t kCollectionDims[] = {5, 10, 20, 40};

/// A registered test function.
struct ObjectiveSpec {
    std::string label; // "F1" .. "F28"
    std::string name;
    /// 0 means "any d >= 2"; otherwise the only admissible dimension.
    std::size_t fixed_dim = 0;
    bool unimodal = false;
    bool separable = false;
    /// Tabulated minimum, as a function of d.
    std::function<double(std::size_t)> known_min;
    /// Absolute slack of the tabulated minimum at a stored minimizer (the table rounds).
    double min_tolerance = 1e-9;
    std::function<Box(std::size_t)> domain;
    /// A global minimizer, where a canonical one exists.
    std::function<std::optional<Point>(std::size_t)> minimizer;
    std::function<double(std::span<const double>)> f;

    bool admits(std::size_t d) const { return fixed_dim ? d == fixed_dim : d >= 2; }

    /// Dimensions this function takes part in within the benchmark collection.
    std::vector<std::size_t> collection_dims() const
    {
        if (fixed_dim)
            return {fixed_dim};
        return {std::begin(kCollectionDims), std::end(kCollectionDims)};
    }

    void require_dim(std::size_t d) const
    {
        if (!admits(d))
            throw UnsupportedDimension(label + " (" + name + ") is not defined for d=" +
                                       std::to_string(d));
    }

    Box default_domain(std::size_t d) const
    {
        require_dim(d);
        return domain(d);
    }

    double evaluate(std::size_t d, std::span<const double> x) const
    {
        require_dim(d);
        if (x.size() != d)
            throw std::invalid_argument(label + ": point has " + std::to_string(x.size()) +
                                        " coordinates, expected " + std::to_string(d));
        return f(x);
    }
};

namespace fn {

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;
using std::numbers::e;
using std::numbers::pi;

inline double ackley(std::span<const double> x)
{
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (const double v : x) {
        sq += v * v;
        cs += cos(2.0 * pi * v);
    }
    return -20.0 * exp(-0.2 * sqrt(sq / n)) - exp(cs / n) + 20.0 + e;
}

inline double bohachevsky1(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += x[i] * x[i] + 2.0 * x[i + 1] * x[i + 1] - 0.3 * cos(3.0 * pi * x[i]) -
             0.4 * cos(4.0 * pi * x[i + 1]) + 0.7;
    return s;
}

inline double bohachevsky2(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += x[i] * x[i] + 2.0 * x[i + 1] * x[i + 1] -
             0.3 * cos(3.0 * pi * x[i]) * cos(4.0 * pi * x[i + 1]) + 0.3;
    return s;
}

// The tabulated form indexes x_{i+1}, x_{i+2} over i = 1..d-1, which runs off
// the end; this is the same sum with the indices shifted back by one.
inline double bohachevsky3(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += x[i] * x[i] + 2.0 * x[i + 1] * x[i + 1] -
             0.3 * cos(3.0 * pi * x[i] + 4.0 * pi * x[i + 1]) + 0.3;
    return s;
}

inline double bukin6(std::span<const double> x)
{
    return 100.0 * sqrt(std::abs(x[1] - 0.01 * x[0] * x[0])) + 0.01 * std::abs(x[0] + 10.0);
}

inline double drop_wave(std::span<const double> x)
{
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return -(1.0 + cos(12.0 * sqrt(r2))) / (0.5 * r2 + 2.0);
}

inline double eggholder(std::span<const double> x)
{
    return -(x[1] + 47.0) * sin(sqrt(std::abs(x[1] + x[0] / 2.0 + 47.0))) -
           x[0] * sin(sqrt(std::abs(x[0] - (x[1] + 47.0))));
}

inline double goldstein_price(std::span<const double> x)
{
    const double a = x[0], b = x[1];
    const double p = 1.0 + (a + b + 1.0) * (a + b + 1.0) *
                               (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    const double q = 30.0 + (2.0 * a - 3.0 * b) * (2.0 * a - 3.0 * b) *
                                (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b +
                                 27.0 * b * b);
    return p * q;
}

inline double griewank(std::span<const double> x)
{
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i] / 4000.0;
        p *= cos(x[i] / sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + s - p;
}

inline double mccormick(std::span<const double> x)
{
    return sin(x[0] + x[1]) + (x[0] - x[1]) * (x[0] - x[1]) - 1.5 * x[0] + 2.5 * x[1] + 1.0;
}

inline double schaffer2(std::span<const double> x)
{
    const double a = x[0] * x[0], b = x[1] * x[1];
    const double s = sin(a - b);
    const double den = 1.0 + 0.001 * (a + b);
    return 0.5 + (s * s - 0.5) / (den * den);
}

inline double schaffer4(std::span<const double> x)
{
    const double a = x[0] * x[0], b = x[1] * x[1];
    const double c = cos(sin(std::abs(a - b)));
    const double den = 1.0 + 0.001 * (a + b);
    return 0.5 + (c * c - 0.5) / (den * den);
}

inline double booth(std::span<const double> x)
{
    const double a = x[0] + 2.0 * x[1] - 7.0, b = 2.0 * x[0] + x[1] - 5.0;
    return a * a + b * b;
}

inline double branin(std::span<const double> x)
{
    const double b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, t = 1.0 / (8.0 * pi);
    const double u = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
    return u * u + 10.0 * (1.0 - t) * cos(x[0]) + 10.0;
}

inline double michalewicz(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double inner = sin(static_cast<double>(i + 1) * x[i] * x[i] / pi);
        s += sin(x[i]) * std::pow(inner, 20);
    }
    return -s;
}

inline double rastrigin(std::span<const double> x)
{
    double s = 10.0 * static_cast<double>(x.size());
    for (const double v : x)
        s += v * v - 10.0 * cos(2.0 * pi * v);
    return s;
}

inline double shubert(std::span<const double> x)
{
    double p = 1.0;
    for (std::size_t j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int i = 1; i <= 5; ++i)
            s += i * cos((i + 1) * x[j] + i);
        p *= s;
    }
    return p;
}

inline double beale(std::span<const double> x)
{
    const double a = 1.5 - x[0] + x[0] * x[1];
    const double b = 2.25 - x[0] + x[0] * x[1] * x[1];
    const double c = 2.625 - x[0] + x[0] * x[1] * x[1] * x[1];
    return a * a + b * b + c * c;
}

inline double dixon_price(std::span<const double> x)
{
    double s = (x[0] - 1.0) * (x[0] - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double t = 2.0 * x[i] * x[i] - x[i - 1];
        s += static_cast<double>(i + 1) * t * t;
    }
    return s;
}

inline double easom(std::span<const double> x)
{
    const double a = x[0] - pi, b = x[1] - pi;
    return -cos(x[0]) * cos(x[1]) * exp(-a * a - b * b);
}

inline double matyas(std::span<const double> x)
{
    return 0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1];
}

// Sums complete blocks of four only; trailing coordinates (d mod 4) are inert.
inline double powell(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t b = 0; b + 4 <= x.size(); b += 4) {
        const double a1 = x[b] + 10.0 * x[b + 1];
        const double a2 = x[b + 2] - x[b + 3];
        const double a3 = x[b + 1] - 2.0 * x[b + 2];
        const double a4 = x[b] - x[b + 3];
        s += a1 * a1 + 5.0 * a2 * a2 + a3 * a3 * a3 * a3 + 10.0 * a4 * a4 * a4 * a4;
    }
    return s;
}

inline double rosenbrock(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i], b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

inline double schwefel(std::span<const double> x)
{
    double s = 418.9829 * static_cast<double>(x.size());
    for (const double v : x)
        s -= v * sin(sqrt(std::abs(v)));
    return s;
}

inline double trid(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += (x[i] - 1.0) * (x[i] - 1.0);
        if (i > 0)
            s -= x[i] * x[i - 1];
    }
    return s;
}

inline double zakharov(std::span<const double> x)
{
    double sq = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sq += x[i] * x[i];
        lin += 0.5 * static_cast<double>(i + 1) * x[i];
    }
    const double l2 = lin * lin;
    return sq + l2 + l2 * l2;
}

inline double sphere(std::span<const double> x)
{
    double s = 0.0;
    for (const double v : x)
        s += v * v;
    return s;
}

inline double sum_squares(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += static_cast<double>(i + 1) * x[i] * x[i];
    return s;
}

} // namespace fn

namespace detail {

inline std::function<double(std::size_t)> constant(double v)
{
    return [v](std::size_t) { return v; };
}

inline std::function<Box(std::size_t)> cube(double lo, double hi)
{
    return [lo, hi](std::size_t d) { return Box::cube(d, lo, hi); };
}

inline std::function<Box(std::size_t)> rect(double lo0, double hi0, double lo1, double hi1)
{
    return [=](std::size_t) { return Box({lo0, lo1}, {hi0, hi1}); };
}

inline std::function<std::optional<Point>(std::size_t)> at_constant(double v)
{
    return [v](std::size_t d) { return std::optional<Point>(Point(d, v)); };
}

inline std::function<std::optional<Point>(std::size_t)> at(Point p)
{
    return [p](std::size_t) { return std::optional<Point>(p); };
}

inline std::function<std::optional<Point>(std::size_t)> nowhere()
{
    return [](std::size_t) { return std::optional<Point>(); };
}

inline std::vector<ObjectiveSpec> build_registry()
{
    using std::numbers::pi;
    std::vector<ObjectiveSpec> r;
    auto add = [&](std::string label, std::string name, std::size_t fixed_dim, bool unimodal,
                   bool separable, std::function<double(std::size_t)> known_min, double tol,
                   std::function<Box(std::size_t)> domain,
                   std::function<std::optional<Point>(std::size_t)> minimizer,
                   double (*f)(std::span<const double>)) {
        r.push_back(ObjectiveSpec{std::move(label), std::move(name), fixed_dim, unimodal, separable,
                                  std::move(known_min), tol, std::move(domain),
                                  std::move(minimizer), f});
    };

    add("F1", "Ackley", 0, false, false, constant(0.0), 1e-9, cube(-32.768, 32.768),
        at_constant(0.0), fn::ackley);
    add("F2", "Bohachevsky2", 0, false, false, constant(0.0), 1e-9, cube(-100.0, 100.0),
        at_constant(0.0), fn::bohachevsky2);
    add("F3", "Bohachevsky3", 0, false, false, constant(0.0), 1e-9, cube(-100.0, 100.0),
        at_constant(0.0), fn::bohachevsky3);
    add("F4", "Bukin6", 2, false, false, constant(0.0), 1e-9, rect(-15.0, -5.0, -3.0, 3.0),
        at({-10.0, 1.0}), fn::bukin6);
    add("F5", "DropWave", 2, false, false, constant(-1.0), 1e-9, cube(-5.12, 5.12),
        at_constant(0.0), fn::drop_wave);
    // The minimizer sits on the x1 = 512 face of the standard domain.
    add("F6", "Eggholder", 2, false, false, constant(-959.6407), 1e-4, cube(-512.0, 512.0),
        at({512.0, 404.2319}), fn::eggholder);
    add("F7", "GoldSteinPrice", 2, false, false, constant(3.0), 1e-9, cube(-2.0, 2.0),
        at({0.0, -1.0}), fn::goldstein_price);
    add("F8", "Griewank", 0, false, false, constant(0.0), 1e-9, cube(-600.0, 600.0),
        at_constant(0.0), fn::griewank);
    add("F9", "McCormick", 2, false, false, constant(-1.9133), 1e-4,
        rect(-1.5, 4.0, -3.0, 4.0), at({-0.54719, -1.54719}), fn::mccormick);
    add("F10", "Schaffer2", 2, false, false, constant(0.0), 1e-9, cube(-100.0, 100.0),
        at_constant(0.0), fn::schaffer2);
    add("F11", "Schaffer4", 2, false, false, constant(0.292579), 1e-6, cube(-100.0, 100.0),
        at({0.0, 1.253115}), fn::schaffer4);
    add("F12", "Bohachevsky1", 0, false, true, constant(0.0), 1e-9, cube(-100.0, 100.0),
        at_constant(0.0), fn::bohachevsky1);
    add("F13", "Booth", 2, false, true, constant(0.0), 1e-9, cube(-10.0, 10.0), at({1.0, 3.0}),
        fn::booth);
    add("F14", "Branin", 2, false, true, constant(0.397887), 1e-6, rect(-5.0, 10.0, 0.0, 15.0),
        at({pi, 2.275}), fn::branin);
    add("F15", "Michalewicz5", 5, false, true, constant(-4.687658), 0.0, cube(0.0, pi),
        nowhere(), fn::michalewicz);
    add("F16", "Rastrigin", 0, false, true, constant(0.0), 1e-9, cube(-5.12, 5.12),
        at_constant(0.0), fn::rastrigin);
    add("F17", "Shubert", 2, false, true, constant(-186.73), 1e-2, cube(-10.0, 10.0),
        at({-7.08350641, 4.85805688}), fn::shubert);
    add("F18", "Beale", 2, true, false, constant(0.0), 1e-9, cube(-4.5, 4.5), at({3.0, 0.5}),
        fn::beale);
    add("F19", "DixonPrice", 0, true, false, constant(0.0), 1e-9, cube(-10.0, 10.0),
        [](std::size_t d) {
            Point p(d);
            for (std::size_t i = 0; i < d; ++i) {
                const double k = std::ldexp(1.0, static_cast<int>(i + 1)); // 2^i, 1-based i
                p[i] = std::pow(2.0, -(k - 2.0) / k);
            }
            return std::optional<Point>(p);
        },
        fn::dixon_price);
    add("F20", "Easom", 2, true, false, constant(-1.0), 1e-9, cube(-100.0, 100.0), at({pi, pi}),
        fn::easom);
    add("F21", "Matyas", 2, true, false, constant(0.0), 1e-9, cube(-10.0, 10.0),
        at_constant(0.0), fn::matyas);
    add("F22", "Powell", 0, true, false, constant(0.0), 1e-9, cube(-4.0, 5.0), at_constant(0.0),
        fn::powell);
    add("F23", "Rosenbrock", 0, true, false, constant(0.0), 1e-9, cube(-5.0, 10.0),
        at_constant(1.0), fn::rosenbrock);
    // Tabulated minimum is -418.9829d, but the tabulated formula bottoms out near 0.
    add("F24", "Schwefel", 0, true, false,
        [](std::size_t d) { return -418.9829 * static_cast<double>(d); }, 0.0,
        cube(-500.0, 500.0), nowhere(), fn::schwefel);
    add("F25", "Trid6", 0, true, false,
        [](std::size_t d) {
            const double n = static_cast<double>(d);
            return -n * (n + 4.0) * (n - 1.0) / 6.0;
        },
        1e-9,
        [](std::size_t d) {
            const double n = static_cast<double>(d);
            return Box::cube(d, -n * n, n * n);
        },
        [](std::size_t d) {
            Point p(d);
            for (std::size_t i = 0; i < d; ++i)
                p[i] = static_cast<double>((i + 1) * (d - i));
            return std::optional<Point>(p);
        },
        fn::trid);
    add("F26", "Zakharov", 0, true, false, constant(0.0), 1e-9, cube(-5.0, 10.0),
        at_constant(0.0), fn::zakharov);
    add("F27", "Sphere", 0, true, true, constant(0.0), 1e-9, cube(-5.12, 5.12),
        at_constant(0.0), fn::sphere);
    add("F28", "Sumsquare", 0, true, true, constant(0.0), 1e-9, cube(-10.0, 10.0),
        at_constant(0.0), fn::sum_squares);
    return r;
}

} // namespace detail

/// All 28 registered test functions, in label order.
inline const std::vector<ObjectiveSpec>& registry()
{
    static const std::vector<ObjectiveSpec> r = detail::build_registry();
    return r;
}

/// Lookup by label ("F16") or case-sensitive name ("Rastrigin").
inline const ObjectiveSpec& find_objective(std::string_view key)
{
    for (const auto& s : registry())
        if (s.label == key || s.name == key)
            return s;
    throw std::invalid_argument("unknown objective '" + std::string(key) + "'");
}

/// One (function, dimension) member of the benchmark collection.
struct FunctionInstance {
    const ObjectiveSpec* spec;
    std::size_t dim;

    std::string id() const { return spec->label + "_d" + std::to_string(dim); }
    double operator()(std::span<const double> x) const { return spec->f(x); }
};

using FunctionCollection = std::vector<FunctionInstance>;

inline bool is_collection_dim(std::size_t d)
{
    return d == 2 || d == 5 || d == 10 || d == 20 || d == 40;
}

/// The benchmark collection: fixed-dimension functions at their dimension,
/// the rest at d in {5, 10, 20, 40}. 70 members unfiltered.
inline FunctionCollection list_collection(std::optional<std::size_t> dim = std::nullopt)
{
    if (dim && !is_collection_dim(*dim))
        throw std::invalid_argument("no collection members at d=" + std::to_string(*dim) +
                                    " (expected one of 2, 5, 10, 20, 40)");
    FunctionCollection out;
    for (const auto& s : registry())
        for (const std::size_t d : s.collection_dims())
            if (!dim || d == *dim)
                out.push_back({&s, d});
    return out;
}

} // namespace ppswarm
