#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "repower/gauss.hpp"
#include "repower/solver.hpp"

using namespace repower;

namespace {

AlternativeSet full_set(std::vector<double> means)
{
    AlternativeSet a;
    for (std::size_t i = 0; i < means.size(); ++i) a.indices.push_back(i);
    a.means = std::move(means);
    return a;
}

AlternativeSet random_set(std::mt19937_64& rng, std::size_t n, double upper)
{
    std::uniform_real_distribution<double> u(0.0, upper);
    std::vector<double> means(n);
    for (auto& x : means) x = std::max(u(rng), 1e-3);
    return full_set(means);
}

void check_simplex(const SolveReport& r, const AlternativeSet& a, std::size_t m)
{
    const auto w = r.weights.values();
    REQUIRE(w.size() == m);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(w[i] >= 0.0);
        if (std::find(a.indices.begin(), a.indices.end(), i) == a.indices.end()) CHECK(w[i] == 0.0);
    }
}

// Plain two-dimensional lattice search written without any of the solver's
// caching, used as an independent oracle.
std::pair<int, double> brute_grid_2(double t1, double t2, double alpha)
{
    const int n = 200;
    int best = -1;
    double best_log = 0;
    for (int k = 0; k <= n; ++k) {
        const double w1 = k / double(n), w2 = (n - k) / double(n);
        double l = 0;
        if (w1 > 0) l += std::log(gauss::cdf(gauss::inv_ccdf(w1 * alpha) - t1));
        if (w2 > 0) l += std::log(gauss::cdf(gauss::inv_ccdf(w2 * alpha) - t2));
        if (best < 0 || l < best_log) {
            best = k;
            best_log = l;
        }
    }
    return {best, 1 - std::exp(best_log)};
}

}  // namespace

TEST_SUITE("solver")
{
    TEST_CASE("config validation")
    {
        SolverConfig c;
        CHECK_NOTHROW(c.validate());
        CHECK(c.grid_divisions() == 200);
        c.grid_step = 0.003;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
        c = {};
        c.weight_tol = 0;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    }

    TEST_CASE("case study weights")
    {
        struct Case {
            std::size_t m;
            std::vector<std::size_t> idx;
            std::vector<double> means;
            std::vector<double> expect;
        };
        const std::vector<Case> cases{
            {4, {0, 1}, {3.93, 3.72}, {0.53, 0.47, 0, 0}},
            {4, {0, 1, 2}, {4.99, 6.73, 2.50}, {0.34, 0.60, 0.06, 0}},
            {4, {0, 1, 2, 3}, {6.48, 6.23, 4.19, 3.18}, {0.39, 0.36, 0.16, 0.08}},
            {6, {0, 1, 2, 3, 4}, {4.19, 3.93, 3.25, 3.18, 2.57}, {0.31, 0.27, 0.17, 0.16, 0.08, 0}},
        };
        for (const auto& c : cases) {
            const AlternativeSet a{c.idx, c.means};
            const auto r = solve_fixed_point(a, ProblemSpec(c.m, 0.05));
            CHECK(r.converged);
            for (std::size_t i = 0; i < c.m; ++i)
                CHECK(std::abs(r.weights[i] - c.expect[i]) <= 0.01);
            check_simplex(r, a, c.m);
        }
    }

    TEST_CASE("symmetric means")
    {
        const auto a = full_set({2.0, 2.0});
        const ProblemSpec spec(2, 0.05);
        const auto fp = solve_fixed_point(a, spec);
        CHECK(fp.weights[0] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(*fp.achieved_power == doctest::Approx(0.76571282301491475585).epsilon(1e-12));
        const auto g = solve_grid(a, spec);
        CHECK(g.weights == WeightVector({0.5, 0.5}));
        const auto ms = solve_multistart(a, spec);
        CHECK(*ms.achieved_power == doctest::Approx(*fp.achieved_power).epsilon(1e-6));
    }

    TEST_CASE("single hypothesis")
    {
        const AlternativeSet a{{2}, {1.3}};
        const ProblemSpec spec(4, 0.05);
        for (const auto& r : {solve_fixed_point(a, spec), solve_grid(a, spec), solve_multistart(a, spec)})
            CHECK(r.weights == WeightVector::corner(4, 2));
    }

    TEST_CASE("grid puts everything on the only effective hypothesis")
    {
        const auto r = solve_grid(full_set({0.0, 3.0}), ProblemSpec(2, 0.05));
        CHECK(r.weights == WeightVector({0.0, 1.0}));
        CHECK(*r.achieved_power == doctest::Approx(0.912314536750296).epsilon(1e-12));
    }

    TEST_CASE("grid agrees with a brute force lattice")
    {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.0, 6.0);
        for (int k = 0; k < 100; ++k) {
            const double t1 = u(rng), t2 = u(rng);
            const auto [k1, pw] = brute_grid_2(t1, t2, 0.05);
            const auto r = solve_grid(full_set({t1, t2}), ProblemSpec(2, 0.05));
            CHECK(std::lround(r.weights[0] * 200) == k1);
            CHECK(*r.achieved_power == doctest::Approx(pw).epsilon(1e-12));
        }
    }

    TEST_CASE("errors")
    {
        const ProblemSpec spec(5, 0.05);
        CHECK_THROWS_AS(solve_fixed_point(full_set({1.0, 0.0}), ProblemSpec(2, 0.05)), NonPositiveMean);
        CHECK_THROWS_AS(solve_fixed_point(AlternativeSet{}, spec), InvalidArgument);
        CHECK_THROWS_AS(solve_grid(full_set({1, 2, 3, 4, 5}), spec), TooManyDimensions);
        CHECK_THROWS_AS(solve_grid(AlternativeSet{}, spec), InvalidArgument);
    }

    TEST_CASE("optimal_weights selection")
    {
        const ProblemSpec spec(6, 0.05);
        const auto empty = optimal_weights(AlternativeSet{}, spec);
        CHECK(empty.weights == WeightVector::uniform(6));
        CHECK(empty.method == SolveMethod::fixed_point);
        CHECK_FALSE(empty.achieved_power.has_value());

        const auto big = optimal_weights(full_set({4.19, 3.93, 3.25, 3.18, 2.57}), spec);
        CHECK(big.method == SolveMethod::fixed_point);

        // Non-positive means only reach the grid.
        const auto g = optimal_weights(full_set({0.0, 3.0}), ProblemSpec(2, 0.05));
        CHECK(g.method == SolveMethod::grid);
        CHECK(g.weights == WeightVector({0.0, 1.0}));

        // Off-lattice optimum: the fixed point wins.
        const auto fp = optimal_weights(full_set({3.93, 3.72}), ProblemSpec(4, 0.05));
        CHECK(fp.method == SolveMethod::fixed_point);
    }

    TEST_CASE("fixed point residual on converged reports")
    {
        std::mt19937_64 rng(23);
        for (int k = 0; k < 400; ++k) {
            const std::size_t n = 1 + k % 6;
            const auto a = random_set(rng, n, k % 2 ? 3.0 : 6.0);
            const auto r = solve_fixed_point(a, ProblemSpec(n + k % 2, 0.05));
            if (!r.converged || r.safeguard_used) continue;
            CHECK(fixed_point_residual(a, r.weights.values(), r.log_lagrange_c, 0.05) <= 1e-8);
            CHECK(r.lagrange_c > 0.0);
        }
    }

    TEST_CASE("simplex feasibility for every method")
    {
        std::mt19937_64 rng(29);
        for (int k = 0; k < 150; ++k) {
            const std::size_t n = 1 + k % 4;
            const std::size_t m = n + 1;
            auto a = random_set(rng, n, 5.0);
            for (auto& i : a.indices) ++i;  // leave index 0 outside the set
            const ProblemSpec spec(m, 0.025);
            for (const auto& r : {solve_fixed_point(a, spec), solve_grid(a, spec),
                                  solve_multistart(a, spec), optimal_weights(a, spec)}) {
                check_simplex(r, a, m);
                CHECK(*r.achieved_power ==
                      doctest::Approx(disjunctive_power(a, r.weights, 0.025)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("permutation equivariance")
    {
        std::mt19937_64 rng(31);
        for (int k = 0; k < 200; ++k) {
            const std::size_t n = 2 + k % 4;
            const auto a = random_set(rng, n, 4.0);
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto b = a;
            for (std::size_t i = 0; i < n; ++i) b.means[i] = a.means[perm[i]];
            const ProblemSpec spec(n, 0.05);
            const auto ra = solve_fixed_point(a, spec);
            const auto rb = solve_fixed_point(b, spec);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(rb.weights[i] == doctest::Approx(ra.weights[perm[i]]).epsilon(1e-9).scale(1));
        }
    }

    TEST_CASE("dominance over grid, multistart and safeguards")
    {
        std::mt19937_64 rng(37);
        for (int k = 0; k < 300; ++k) {
            const std::size_t n = 1 + k % 3;
            const auto a = random_set(rng, n, n == 2 ? 6.0 : 3.0);
            const ProblemSpec spec(n, 0.05);
            const auto fp = solve_fixed_point(a, spec);
            CHECK(*fp.achieved_power >= *solve_grid(a, spec).achieved_power - 1e-12);
            CHECK(*fp.achieved_power >= *solve_multistart(a, spec).achieved_power - 1e-12);
            CHECK(*fp.achieved_power >= disjunctive_power(a, WeightVector::uniform(n), 0.05) - 1e-15);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(*fp.achieved_power >=
                      disjunctive_power(a, WeightVector::corner(n, i), 0.05) - 1e-15);
        }
    }

    TEST_CASE("small means use every branch of the stationarity system")
    {
        // Means below ~0.14 allow one coordinate on the decreasing branch.
        std::mt19937_64 rng(41);
        for (int k = 0; k < 300; ++k) {
            const std::size_t n = 2 + k % 3;
            const auto a = random_set(rng, n, 0.3);
            const ProblemSpec spec(n, 0.05);
            const auto fp = solve_fixed_point(a, spec);
            if (n <= 3) CHECK(*fp.achieved_power >= *solve_grid(a, spec).achieved_power - 1e-12);
            CHECK(*fp.achieved_power >= *solve_multistart(a, spec).achieved_power - 1e-12);
        }
    }

    TEST_CASE("monotone effect ordering")
    {
        std::mt19937_64 rng(43);
        for (int k = 0; k < 400; ++k) {
            const std::size_t n = 2 + k % 4;
            const auto a = random_set(rng, n, 6.0);
            const auto r = solve_fixed_point(a, ProblemSpec(n, 0.05));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (a.means[i] > a.means[j]) CHECK(r.weights[i] >= r.weights[j]);
        }
    }

    TEST_CASE("map reproduces converged weights")
    {
        const auto a = full_set({4.99, 6.73, 2.50});
        const auto r = solve_fixed_point(a, ProblemSpec(3, 0.05));
        const auto next = fixed_point_map(a, r.weights.values(), r.log_lagrange_c, 0.05);
        for (std::size_t i = 0; i < 3; ++i) CHECK(next[i] == doctest::Approx(r.weights[i]).epsilon(1e-9));
    }
}
