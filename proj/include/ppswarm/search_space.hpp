#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "random.hpp"

namespace ppswarm {

using Point = std::vector<double>;

/// Axis-aligned box [lower, upper] in R^d with lower[k] < upper[k].
class Box {
public:
    Box(std::vector<double> lower, std::vector<double> upper)
        : lower_(std::move(lower)), upper_(std::move(upper))
    {
        if (lower_.empty() || lower_.size() != upper_.size())
            throw std::invalid_argument("Box: bounds must be non-empty and of equal length");
        for (std::size_t k = 0; k < lower_.size(); ++k) {
            if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) || !(lower_[k] < upper_[k]))
                throw std::invalid_argument("Box: need finite lower[k] < upper[k] (k=" +
                                            std::to_string(k) + ")");
        }
    }

    /// The hypercube [lo, hi]^d.
    static Box cube(std::size_t d, double lo, double hi)
    {
        return Box(std::vector<double>(d, lo), std::vector<double>(d, hi));
    }

    std::size_t dim() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    double lower(std::size_t k) const { return lower_[k]; }
    double upper(std::size_t k) const { return upper_[k]; }

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

namespace detail {

inline void check_dim(std::span<const double> x, const Box& box, const char* what)
{
    if (x.size() != box.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(box.dim()) + ")");
}

inline void check_finite(std::span<const double> x, const char* what)
{
    for (const double v : x)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

} // namespace detail

/// Clamp `x` into the box in place. No validation; callers that need it use project().
inline void clamp_into(std::span<double> x, const Box& box) noexcept
{
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = std::min(box.upper(k), std::max(box.lower(k), x[k]));
}

/// Euclidean projection onto the box, i.e. the componentwise clamp.
inline Point project(std::span<const double> x, const Box& box)
{
    detail::check_dim(x, box, "project");
    detail::check_finite(x, "project");
    Point out(x.begin(), x.end());
    clamp_into(out, box);
    return out;
}

inline bool contains(std::span<const double> x, const Box& box)
{
    detail::check_dim(x, box, "contains");
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!(box.lower(k) <= x[k] && x[k] <= box.upper(k)))
            return false;
    return true;
}

template <RandomSource R>
Point sample_uniform(const Box& box, R& rng)
{
    Point x(box.dim());
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = box.lower(k) + (box.upper(k) - box.lower(k)) * rng.uniform01();
        // guard the open end against rounding up to upper when the box is tiny
        x[k] = std::min(box.upper(k), x[k]);
    }
    return x;
}

} // namespace ppswarm
