#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <map>
#include <set>

#include "ppswarm/objectives.hpp"
#include "ppswarm/random.hpp"

using namespace ppswarm;

TEST(Registry, HasTwentyEightLabelledFunctions)
{
    const auto& reg = registry();
    ASSERT_EQ(reg.size(), 28u);
    for (std::size_t i = 0; i < reg.size(); ++i)
        EXPECT_EQ(reg[i].label, "F" + std::to_string(i + 1));
}

// Minimum column and flags of the benchmark table, one row per label.
TEST(Registry, TabulatedMinimaAndFlags)
{
    struct Row {
        const char* name;
        double min5; // tabulated minimum at the first collection dimension
        bool unimodal, separable;
    };
    const std::map<std::string, Row> table = {
        {"F1", {"Ackley", 0, false, false}},
        {"F2", {"Bohachevsky2", 0, false, false}},
        {"F3", {"Bohachevsky3", 0, false, false}},
        {"F4", {"Bukin6", 0, false, false}},
        {"F5", {"DropWave", -1, false, false}},
        {"F6", {"Eggholder", -959.6407, false, false}},
        {"F7", {"GoldSteinPrice", 3, false, false}},
        {"F8", {"Griewank", 0, false, false}},
        {"F9", {"McCormick", -1.9133, false, false}},
        {"F10", {"Schaffer2", 0, false, false}},
        {"F11", {"Schaffer4", 0.292579, false, false}},
        {"F12", {"Bohachevsky1", 0, false, true}},
        {"F13", {"Booth", 0, false, true}},
        {"F14", {"Branin", 0.397887, false, true}},
        {"F15", {"Michalewicz5", -4.687658, false, true}},
        {"F16", {"Rastrigin", 0, false, true}},
        {"F17", {"Shubert", -186.73, false, true}},
        {"F18", {"Beale", 0, true, false}},
        {"F19", {"DixonPrice", 0, true, false}},
        {"F20", {"Easom", -1, true, false}},
        {"F21", {"Matyas", 0, true, false}},
        {"F22", {"Powell", 0, true, false}},
        {"F23", {"Rosenbrock", 0, true, false}},
        {"F24", {"Schwefel", -418.9829 * 5, true, false}},
        {"F25", {"Trid6", -30, true, false}},
        {"F26", {"Zakharov", 0, true, false}},
        {"F27", {"Sphere", 0, true, true}},
        {"F28", {"Sumsquare", 0, true, true}},
    };
    for (const auto& s : registry()) {
        SCOPED_TRACE(s.label);
        const auto& row = table.at(s.label);
        EXPECT_EQ(s.name, row.name);
        EXPECT_EQ(s.known_min(s.collection_dims().front()), row.min5);
        EXPECT_EQ(s.unimodal, row.unimodal);
        EXPECT_EQ(s.separable, row.separable);
    }
}

TEST(Registry, DimensionDependentMinima)
{
    const auto& schwefel = find_objective("F24");
    const auto& trid = find_objective("Trid6");
    for (const std::size_t d : kCollectionDims) {
        const double dd = static_cast<double>(d);
        EXPECT_EQ(schwefel.known_min(d), -418.9829 * dd);
        EXPECT_EQ(trid.known_min(d), -dd * (dd + 4) * (dd - 1) / 6);
    }
}

TEST(Registry, LookupByLabelOrName)
{
    EXPECT_EQ(find_objective("F16").name, "Rastrigin");
    EXPECT_EQ(find_objective("Rastrigin").label, "F16");
    EXPECT_THROW(find_objective("F99"), std::invalid_argument);
}

TEST(Evaluate, SphereAtOrigin)
{
    EXPECT_EQ(find_objective("F27").evaluate(5, Point(5, 0.0)), 0.0);
}

TEST(Evaluate, AckleyAtOrigin)
{
    EXPECT_NEAR(find_objective("F1").evaluate(10, Point(10, 0.0)), 0.0, 1e-14);
}

TEST(Evaluate, BoothAtOneThree)
{
    EXPECT_EQ(find_objective("F13").evaluate(2, Point{1, 3}), 0.0);
}

TEST(Evaluate, GoldsteinPriceAtZeroMinusOne)
{
    EXPECT_EQ(find_objective("F7").evaluate(2, Point{0, -1}), 3.0);
}

TEST(Evaluate, TridMinimumAtFive)
{
    const auto& trid = find_objective("F25");
    Point x(5);
    for (std::size_t i = 1; i <= 5; ++i)
        x[i - 1] = static_cast<double>(i * (5 + 1 - i));
    EXPECT_DOUBLE_EQ(trid.evaluate(5, x), -30.0);
    EXPECT_EQ(trid.known_min(5), -30.0);
}

TEST(Evaluate, FixedDimensionFunctionsRejectOtherDimensions)
{
    const std::set<std::string> two_d = {"F4",  "F5",  "F6",  "F7",  "F9",  "F10", "F11",
                                         "F13", "F14", "F17", "F18", "F20", "F21"};
    for (const auto& s : registry()) {
        SCOPED_TRACE(s.label);
        if (two_d.count(s.label)) {
            EXPECT_EQ(s.fixed_dim, 2u);
            EXPECT_THROW(s.evaluate(3, Point(3, 0.0)), UnsupportedDimension);
            EXPECT_THROW(s.default_domain(5), UnsupportedDimension);
        } else if (s.label == "F15") {
            EXPECT_EQ(s.fixed_dim, 5u);
            EXPECT_THROW(s.evaluate(2, Point(2, 0.0)), UnsupportedDimension);
        } else {
            EXPECT_EQ(s.fixed_dim, 0u);
        }
    }
}

TEST(Evaluate, LengthMismatchIsInvalidArgument)
{
    const auto& sphere = find_objective("F27");
    EXPECT_THROW(sphere.evaluate(5, Point(4, 0.0)), std::invalid_argument);
}

TEST(Collection, SizesPerFilter)
{
    EXPECT_EQ(list_collection().size(), 70u);
    EXPECT_EQ(list_collection(2).size(), 13u);
    EXPECT_EQ(list_collection(5).size(), 15u);
    EXPECT_EQ(list_collection(10).size(), 14u);
    EXPECT_EQ(list_collection(20).size(), 14u);
    EXPECT_EQ(list_collection(40).size(), 14u);
    EXPECT_THROW(list_collection(3), std::invalid_argument);
}

TEST(Collection, FortyDimensionalMembersAreFreeDimension)
{
    for (const auto& fi : list_collection(40)) {
        EXPECT_EQ(fi.spec->fixed_dim, 0u);
        EXPECT_EQ(fi.dim, 40u);
    }
}

TEST(Collection, InstanceIdsAreUnique)
{
    std::set<std::string> ids;
    for (const auto& fi : list_collection())
        EXPECT_TRUE(ids.insert(fi.id()).second) << fi.id();
    EXPECT_EQ(find_objective("F16").label + "_d5", "F16_d5");
}

TEST(Domain, StandardBoxesContainMinimizer)
{
    const auto check = [](const char* label, std::size_t d, double lo, double hi) {
        const auto& s = find_objective(label);
        const Box b = s.default_domain(d);
        EXPECT_EQ(b, Box::cube(d, lo, hi)) << label;
        EXPECT_EQ(s.evaluate(d, Point(d, 0.0)), 0.0) << label << " at origin";
    };
    check("F16", 5, -5.12, 5.12);
    check("F27", 10, -5.12, 5.12);
    EXPECT_EQ(find_objective("F5").default_domain(2), Box::cube(2, -5.12, 5.12));
    EXPECT_EQ(find_objective("F5").evaluate(2, Point{0, 0}), -1.0);
    EXPECT_EQ(find_objective("F1").default_domain(5), Box::cube(5, -32.768, 32.768));
    EXPECT_EQ(find_objective("F23").default_domain(5), Box::cube(5, -5, 10));
    EXPECT_EQ(find_objective("F6").default_domain(2), Box::cube(2, -512, 512));
    EXPECT_EQ(find_objective("F24").default_domain(10), Box::cube(10, -500, 500));
    EXPECT_EQ(find_objective("F14").default_domain(2), Box({-5, 0}, {10, 15}));
}

// Each stored minimizer lies in the default domain (strictly inside, except the
// one Eggholder pins on the boundary) and attains the tabulated minimum.
TEST(Domain, StoredMinimizersAttainTabulatedMinimum)
{
    std::size_t checked = 0;
    for (const auto& fi : list_collection()) {
        const auto& s = *fi.spec;
        const auto xs = s.minimizer(fi.dim);
        if (!xs)
            continue;
        SCOPED_TRACE(fi.id());
        const Box box = s.default_domain(fi.dim);
        ASSERT_TRUE(contains(*xs, box));
        if (s.label != "F6")
            for (std::size_t k = 0; k < fi.dim; ++k) {
                EXPECT_GT((*xs)[k], box.lower(k));
                EXPECT_LT((*xs)[k], box.upper(k));
            }
        const double want = s.known_min(fi.dim);
        const double got = s.evaluate(fi.dim, *xs);
        const double tol = want == 0.0 ? std::max(s.min_tolerance, 1e-9)
                                       : std::max(s.min_tolerance, 1e-6 * std::abs(want));
        EXPECT_NEAR(got, want, tol);
        ++checked;
    }
    EXPECT_GE(checked, 60u);
}

TEST(Domain, SchwefelFormulaBottomsOutAtZero)
{
    const auto& s = find_objective("F24");
    const Point x(10, 420.968746);
    EXPECT_NEAR(s.evaluate(10, x), 0.0, 1e-3);
}

TEST(Evaluate, FiniteOnUniformSamples)
{
    RandomStream rng(3);
    for (const auto& fi : list_collection()) {
        const Box box = fi.spec->default_domain(fi.dim);
        for (int i = 0; i < 10000; ++i) {
            const double v = fi(sample_uniform(box, rng));
            ASSERT_TRUE(std::isfinite(v)) << fi.id();
        }
    }
}

TEST(Evaluate, SeparableFunctionsChangeAdditively)
{
    RandomStream rng(4);
    for (const char* label : {"F16", "F27", "F28"}) {
        const auto& s = find_objective(label);
        const std::size_t d = 6;
        const Box box = s.default_domain(d);
        for (int trial = 0; trial < 200; ++trial) {
            Point x = sample_uniform(box, rng), y = sample_uniform(box, rng);
            const std::size_t k = rng.index(d);
            const double nk = rng.uniform(box.lower(k), box.upper(k));
            y[k] = x[k]; // same coordinate k, all others differ
            Point x2 = x, y2 = y;
            x2[k] = nk;
            y2[k] = nk;
            const double dx = s.evaluate(d, x2) - s.evaluate(d, x);
            const double dy = s.evaluate(d, y2) - s.evaluate(d, y);
            ASSERT_NEAR(dx, dy, 1e-9 * (1 + std::abs(dx))) << label;
        }
    }
}

TEST(Evaluate, PureFunction)
{
    RandomStream rng(8);
    for (const auto& fi : list_collection()) {
        const Point x = sample_uniform(fi.spec->default_domain(fi.dim), rng);
        const double a = fi(x), b = fi(x);
        ASSERT_EQ(std::memcmp(&a, &b, sizeof a), 0) << fi.id();
    }
}

TEST(Evaluate, PowellUsesCompleteBlocksOnly)
{
    const auto& s = find_objective("F22");
    // the fifth coordinate lies outside every complete block of four
    Point x(5, 0.0);
    x[4] = 3.0;
    EXPECT_EQ(s.evaluate(5, x), 0.0);
    x[0] = 1.0;
    EXPECT_GT(s.evaluate(5, x), 0.0);
}
