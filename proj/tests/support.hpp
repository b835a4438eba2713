#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppswarm/search_space.hpp"

namespace ppswarm::test {

/// RandomSource that replays fixed draws and fails loudly when a kernel asks for
/// more (or a different kind) than the trace expects.
class ScriptedSource {
public:
    ScriptedSource() = default;
    ScriptedSource(std::initializer_list<double> uniforms, std::initializer_list<double> normals = {},
                   std::initializer_list<std::size_t> indices = {})
        : uniforms_(uniforms), normals_(normals), indices_(indices)
    {
    }

    double uniform01() { return pop(uniforms_, "uniform01"); }
    double normal() { return pop(normals_, "normal"); }
    std::size_t index(std::size_t n)
    {
        const auto i = pop(indices_, "index");
        if (i >= n)
            throw std::logic_error("scripted index " + std::to_string(i) + " out of range " +
                                   std::to_string(n));
        return i;
    }

    bool exhausted() const { return uniforms_.empty() && normals_.empty() && indices_.empty(); }

private:
    template <class T>
    static T pop(std::deque<T>& q, const char* what)
    {
        if (q.empty())
            throw std::logic_error(std::string("script ran out of ") + what + " draws");
        const T v = q.front();
        q.pop_front();
        return v;
    }

    std::deque<double> uniforms_;
    std::deque<double> normals_;
    std::deque<std::size_t> indices_;
};

/// Sum of squares accumulated left to right, matching the hand traces.
struct SphereFn {
    double operator()(std::span<const double> x) const
    {
        double s = 0.0;
        for (const double v : x)
            s += v * v;
        return s;
    }
};

/// Nearest point of a regular grid over the box, found by exhaustive search.
/// Only for d <= 3 and modest `steps`.
inline Point brute_force_nearest(std::span<const double> x, const Box& box, std::size_t steps)
{
    const std::size_t d = box.dim();
    std::vector<std::size_t> idx(d, 0);
    Point best, cur(d);
    double best_dist = std::numeric_limits<double>::infinity();
    for (;;) {
        double dist = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double h = (box.upper(k) - box.lower(k)) / static_cast<double>(steps);
            cur[k] = box.lower(k) + h * static_cast<double>(idx[k]);
            dist += (cur[k] - x[k]) * (cur[k] - x[k]);
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = cur;
        }
        std::size_t k = 0;
        while (k < d && ++idx[k] > steps)
            idx[k++] = 0;
        if (k == d)
            return best;
    }
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("ppswarm_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace ppswarm::test
