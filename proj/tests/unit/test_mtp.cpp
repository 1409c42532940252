#include <doctest.h>

#include <random>

#include "repower/error.hpp"
#include "repower/gauss.hpp"
#include "repower/mtp.hpp"

using namespace repower;

TEST_SUITE("mtp")
{
    TEST_CASE("problem spec validation")
    {
        CHECK_THROWS_AS(ProblemSpec(0, 0.05), InvalidArgument);
        CHECK_THROWS_AS(ProblemSpec(2, 0.0), InvalidArgument);
        CHECK_THROWS_AS(ProblemSpec(2, 1.0), InvalidArgument);
        CHECK(ProblemSpec(4, 0.05).bonferroni_level() == doctest::Approx(0.0125));
    }

    TEST_CASE("weight vector validation")
    {
        CHECK_THROWS_AS(WeightVector({0.5, 0.6}), InvalidArgument);
        CHECK_THROWS_AS(WeightVector({-0.1, 1.1}), InvalidArgument);
        CHECK_THROWS_AS(WeightVector({std::nan(""), 1.0}), InvalidArgument);
        CHECK_NOTHROW(WeightVector({0.25, 0.75}));
        CHECK(WeightVector::corner(3, 1).vector() == std::vector<double>{0, 1, 0});
        CHECK(WeightVector::uniform(4)[2] == 0.25);
    }

    TEST_CASE("bonferroni examples")
    {
        const ProblemSpec spec(4, 0.05);
        const auto p = z_to_p(std::vector<double>{3.93, 3.72, 2.22, 0.37});
        CHECK(bonferroni(p, spec) == RejectionSet{true, true, false, false});
        const auto adj = bonferroni_adjusted_p(p);
        CHECK(adj[2] == doctest::Approx(4 * gauss::ccdf(2.22)));
        CHECK(adj[3] == 1.0);
    }

    TEST_CASE("weighted decisions")
    {
        const ProblemSpec spec(2, 0.05);
        const WeightVector w({1.0, 0.0});
        const auto rej = weighted_bonferroni(std::vector<double>{0.049, 0.0}, w, spec);
        CHECK(rej == RejectionSet{true, false});
        // Strict inequality at the boundary.
        CHECK(weighted_bonferroni(std::vector<double>{0.05, 0.5}, w, spec)[0] == false);
        const auto adj = adjusted_p(std::vector<double>{0.01, 0.0}, w);
        CHECK(adj[0] == doctest::Approx(0.01));
        CHECK(adj[1] == 1.0);
    }

    TEST_CASE("uniform weights reproduce bonferroni")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 0.1);
        for (std::size_t m = 1; m <= 6; ++m) {
            const ProblemSpec spec(m, 0.05);
            for (int k = 0; k < 500; ++k) {
                PValueVector p(m);
                for (auto& x : p) x = u(rng);
                CHECK(weighted_bonferroni(p, WeightVector::uniform(m), spec) == bonferroni(p, spec));
            }
        }
    }

    TEST_CASE("adjusted p agrees with rejection")
    {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_real_distribution<double> pu(0.0, 0.08);
        for (int k = 0; k < 2000; ++k) {
            const std::size_t m = 1 + k % 5;
            std::vector<double> w(m);
            double s = 0;
            for (auto& x : w) s += (x = (u(rng) < 0.2 ? 0.0 : u(rng)));
            if (s == 0) w[0] = s = 1;
            for (auto& x : w) x /= s;
            const WeightVector wv(w);
            PValueVector p(m);
            for (auto& x : p) x = pu(rng);
            for (double alpha : {0.01, 0.025, 0.05}) {
                const ProblemSpec spec(m, alpha);
                const auto rej = weighted_bonferroni(p, wv, spec);
                const auto adj = adjusted_p(p, wv);
                for (std::size_t i = 0; i < m; ++i) CHECK(rej[i] == (adj[i] < alpha));
            }
        }
    }

    TEST_CASE("intersection")
    {
        CHECK(both_rejected({true, true, false}, {true, false, false}) ==
              RejectionSet{true, false, false});
        CHECK_THROWS_AS(both_rejected({true}, {true, false}), InvalidArgument);
    }
}
