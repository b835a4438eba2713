#pragma once

// Comparison statistics between an algorithm A and a modification B, over a
// family of test functions, at each checkpoint:
//   winning proportion P_{B>A}(t): share of (run, function) cells where B's
//     best-so-far is strictly below A's, exact ties counting one half;
//   relative error RE: per function, pool both algorithms' outputs, take
//     m_lo / m_hi, and average (value - m_lo) / (m_hi - m_lo) per algorithm;
//     then average over the functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppswarm {

/// Best-so-far values of one algorithm on one function: runs x checkpoints.
struct CheckpointMatrix {
    std::string algorithm;
    std::string function;
    std::vector<std::size_t> checkpoints;
    std::vector<std::vector<double>> values;

    std::size_t runs() const noexcept { return values.size(); }

    std::vector<double> column(std::size_t k) const
    {
        std::vector<double> c;
        c.reserve(values.size());
        for (const auto& row : values)
            c.push_back(row.at(k));
        return c;
    }

    std::size_t index_of(std::size_t t) const
    {
        const auto it = std::find(checkpoints.begin(), checkpoints.end(), t);
        if (it == checkpoints.end())
            throw std::invalid_argument("checkpoint " + std::to_string(t) + " not recorded");
        return static_cast<std::size_t>(it - checkpoints.begin());
    }

    /// Row lengths match the checkpoint grid and each row is non-increasing.
    void validate() const
    {
        for (const auto& row : values) {
            if (row.size() != checkpoints.size())
                throw std::invalid_argument("CheckpointMatrix: row length != checkpoint count");
            for (std::size_t k = 1; k < row.size(); ++k)
                if (row[k] > row[k - 1])
                    throw std::invalid_argument("CheckpointMatrix: best-so-far increased in " +
                                                algorithm + "/" + function);
        }
    }
};

struct WinCount {
    std::size_t wins = 0;  // B strictly better
    std::size_t ties = 0;
    std::size_t cells = 0;

    /// (wins + ties / 2) / cells
    double proportion() const
    {
        return cells == 0 ? 0.0
                          : (static_cast<double>(wins) + 0.5 * static_cast<double>(ties)) /
                                static_cast<double>(cells);
    }

    WinCount& operator+=(const WinCount& o)
    {
        wins += o.wins;
        ties += o.ties;
        cells += o.cells;
        return *this;
    }
};

/// Paired comparison of run outputs a[r] vs b[r].
inline WinCount count_wins(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("count_wins: unequal run counts");
    WinCount w;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (b[r] < a[r])
            ++w.wins;
        else if (b[r] == a[r])
            ++w.ties;
        ++w.cells;
    }
    return w;
}

namespace detail {

inline void check_matched(std::span<const CheckpointMatrix> a, std::span<const CheckpointMatrix> b)
{
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("metrics: A and B must cover the same non-empty function set");
    for (std::size_t f = 0; f < a.size(); ++f) {
        if (a[f].function != b[f].function)
            throw std::invalid_argument("metrics: function order differs (" + a[f].function +
                                        " vs " + b[f].function + ")");
        if (a[f].runs() != b[f].runs())
            throw std::invalid_argument("metrics: unequal run counts on " + a[f].function);
        if (a[f].checkpoints != b[f].checkpoints)
            throw std::invalid_argument("metrics: checkpoint grids differ on " + a[f].function);
    }
}

} // namespace detail

/// Winning tally of B over A at iteration t, summed over the function family.
inline WinCount winning_count(std::span<const CheckpointMatrix> a,
                              std::span<const CheckpointMatrix> b, std::size_t t)
{
    detail::check_matched(a, b);
    WinCount total;
    for (std::size_t f = 0; f < a.size(); ++f) {
        const std::size_t k = a[f].index_of(t);
        total += count_wins(a[f].column(k), b[f].column(k));
    }
    return total;
}

/// P_{B>A}(t).
inline double winning_proportion(std::span<const CheckpointMatrix> a,
                                  std::span<const CheckpointMatrix> b, std::size_t t)
{
    return winning_count(a, b, t).proportion();
}

struct RelativeError {
    double a = 0.0;
    double b = 0.0;
};

/// Relative errors of A and B against their pooled best and worst outputs.
/// Both lie in [0, 1]; a zero pooled range gives (0, 0).
inline RelativeError relative_error(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("relative_error: empty run list");
    double lo = a[0], hi = a[0];
    for (const auto* list : {&a, &b})
        for (const double v : *list) {
            if (!std::isfinite(v))
                throw std::invalid_argument("relative_error: non-finite value");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double range = hi - lo;
    if (range == 0.0)
        return {};
    auto mean_excess = [&](std::span<const double> xs) {
        double s = 0.0;
        for (const double v : xs)
            s += (v - lo) / range;
        return std::clamp(s / static_cast<double>(xs.size()), 0.0, 1.0);
    };
    return {mean_excess(a), mean_excess(b)};
}

/// Mean of per-function relative errors.
inline double aggregate_relative_error(std::span<const double> per_function)
{
    if (per_function.empty())
        throw std::invalid_argument("aggregate_relative_error: empty function set");
    double s = 0.0;
    for (const double v : per_function)
        s += v;
    return s / static_cast<double>(per_function.size());
}

/// Per-function slice of a comparison.
struct FunctionComparison {
    std::string function;
    std::vector<WinCount> wins;     // per checkpoint
    std::vector<RelativeError> re;  // per checkpoint
};

/// A vs B over one function family (one dimension), at every checkpoint.
struct ComparisonReport {
    std::string algorithm_a;
    std::string algorithm_b;
    std::size_t dimension = 0;
    std::vector<std::size_t> checkpoints;
    std::vector<WinCount> wins;         // P_{B>A}(t) and tie counts
    std::vector<double> relerr_a;       // RE(A, A.B)(t)
    std::vector<double> relerr_b;       // RE(B, A.B)(t)
    std::vector<FunctionComparison> per_function;

    std::string pair() const { return algorithm_a + ":" + algorithm_b; }

    double winning_proportion_at(std::size_t t) const
    {
        const auto it = std::find(checkpoints.begin(), checkpoints.end(), t);
        if (it == checkpoints.end())
            throw std::invalid_argument("no checkpoint " + std::to_string(t) + " in report");
        return wins[static_cast<std::size_t>(it - checkpoints.begin())].proportion();
    }

    double relerr_at(std::size_t t, bool of_b) const
    {
        const auto it = std::find(checkpoints.begin(), checkpoints.end(), t);
        if (it == checkpoints.end())
            throw std::invalid_argument("no checkpoint " + std::to_string(t) + " in report");
        const auto k = static_cast<std::size_t>(it - checkpoints.begin());
        return of_b ? relerr_b[k] : relerr_a[k];
    }
};

/// Build the full report for A vs B over the family.
inline ComparisonReport compare(std::span<const CheckpointMatrix> a,
                                std::span<const CheckpointMatrix> b, std::size_t dimension = 0)
{
    detail::check_matched(a, b);
    ComparisonReport rep;
    rep.algorithm_a = a.front().algorithm;
    rep.algorithm_b = b.front().algorithm;
    rep.dimension = dimension;
    rep.checkpoints = a.front().checkpoints;
    const std::size_t K = rep.checkpoints.size();

    for (std::size_t f = 0; f < a.size(); ++f) {
        if (a[f].checkpoints != rep.checkpoints)
            throw std::invalid_argument("compare: checkpoint grids differ across functions");
        FunctionComparison fc{a[f].function, {}, {}};
        for (std::size_t k = 0; k < K; ++k) {
            const auto ca = a[f].column(k), cb = b[f].column(k);
            fc.wins.push_back(count_wins(ca, cb));
            fc.re.push_back(relative_error(ca, cb));
        }
        rep.per_function.push_back(std::move(fc));
    }
    for (std::size_t k = 0; k < K; ++k) {
        WinCount w;
        std::vector<double> ra, rb;
        for (const auto& fc : rep.per_function) {
            w += fc.wins[k];
            ra.push_back(fc.re[k].a);
            rb.push_back(fc.re[k].b);
        }
        rep.wins.push_back(w);
        rep.relerr_a.push_back(aggregate_relative_error(ra));
        rep.relerr_b.push_back(aggregate_relative_error(rb));
    }
    return rep;
}

} // namespace ppswarm
