#include <doctest.h>

#include <cmath>
#include <random>

#include "repower/error.hpp"
#include "repower/power.hpp"

using namespace repower;

namespace {

AlternativeSet full_set(std::vector<double> means)
{
    AlternativeSet a;
    for (std::size_t i = 0; i < means.size(); ++i) a.indices.push_back(i);
    a.means = std::move(means);
    return a;
}

}  // namespace

TEST_SUITE("power")
{
    TEST_CASE("reference values")
    {
        CHECK(marginal_power(3.0, 1.0, 0.025) == doctest::Approx(0.85083841579580449925).epsilon(1e-13));
        CHECK(marginal_power(3.0, 0.0, 0.025) == 0.0);
        CHECK(std::isinf(rejection_threshold(0.0, 0.05)));
        CHECK(disjunctive_power(full_set({2, 2}), WeightVector::uniform(2), 0.05) ==
              doctest::Approx(0.76571282301491475585).epsilon(1e-13));
    }

    TEST_CASE("zero weight drops a hypothesis")
    {
        const auto a = full_set({3.0, 2.0});
        CHECK(disjunctive_power(a, WeightVector({1.0, 0.0}), 0.05) ==
              doctest::Approx(marginal_power(3.0, 1.0, 0.05)).epsilon(1e-14));
    }

    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(disjunctive_power(AlternativeSet{}, WeightVector::uniform(2), 0.05),
                        InvalidArgument);
        AlternativeSet bad{{1, 0}, {1.0, 1.0}};
        CHECK_THROWS_AS(bad.validate(2), InvalidArgument);
        AlternativeSet out{{2}, {1.0}};
        CHECK_THROWS_AS(out.validate(2), InvalidArgument);
        const auto pos = AlternativeSet::positive_part(std::vector<double>{-1.0, 0.0, 2.5});
        CHECK(pos.indices == std::vector<std::size_t>{2});
        CHECK(pos.means == std::vector<double>{2.5});
    }

    TEST_CASE("gradient matches finite differences")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        std::uniform_real_distribution<double> mu(0.0, 4.0);
        for (int k = 0; k < 200; ++k) {
            const std::size_t m = 2 + k % 4;
            std::vector<double> means(m), w(m);
            double s = 0;
            for (std::size_t i = 0; i < m; ++i) {
                means[i] = mu(rng);
                s += (w[i] = u(rng));
            }
            for (auto& x : w) x /= s;
            const auto a = full_set(means);
            const auto grad = disjunctive_power_gradient(a, w, 0.05);
            for (std::size_t j = 0; j < m; ++j) {
                const double h = 1e-6 * w[j];
                auto up = w, dn = w;
                up[j] += h;
                dn[j] -= h;
                const double fd =
                    (disjunctive_power(a, up, 0.05) - disjunctive_power(a, dn, 0.05)) / (2 * h);
                CHECK(grad[j] == doctest::Approx(fd).epsilon(1e-5));
            }
        }
    }

    TEST_CASE("power is monotone in a mean")
    {
        const auto w = WeightVector({0.3, 0.7});
        double prev = 0;
        for (double t = -2; t <= 6; t += 0.1) {
            const double p = disjunctive_power(full_set({t, 1.0}), w, 0.05);
            CHECK(p >= prev);
            prev = p;
        }
    }
}
