#include <doctest.h>

#include <cmath>
#include <random>

#include "repower/replication.hpp"
#include "repower/simlab.hpp"

using namespace repower;

namespace {

void check_same_estimate(const std::optional<Estimate>& a, const std::optional<Estimate>& b)
{
    REQUIRE(a.has_value() == b.has_value());
    if (!a) return;
    CHECK(a->successes == b->successes);
    CHECK(a->trials == b->trials);
}

void check_same(const SimSummary& a, const SimSummary& b)
{
    for (auto arm : {&SimSummary::weighted, &SimSummary::unweighted}) {
        REQUIRE((a.*arm).has_value() == (b.*arm).has_value());
        if (!(a.*arm)) continue;
        const ArmSummary& x = *(a.*arm);
        const ArmSummary& y = *(b.*arm);
        check_same_estimate(x.dpos, y.dpos);
        check_same_estimate(x.fwer1, y.fwer1);
        check_same_estimate(x.fwer2, y.fwer2);
        REQUIRE(x.mpos.size() == y.mpos.size());
        for (std::size_t i = 0; i < x.mpos.size(); ++i) CHECK(x.mpos[i].successes == y.mpos[i].successes);
    }
    CHECK(a.mean_weights == b.mean_weights);
    CHECK(a.weight_histogram == b.weight_histogram);
    REQUIRE(a.cross.size() == b.cross.size());
    for (std::size_t i = 0; i < a.cross.size(); ++i) {
        CHECK(a.cross[i].both == b.cross[i].both);
        CHECK(a.cross[i].weighted_only == b.cross[i].weighted_only);
        CHECK(a.cross[i].unweighted_only == b.cross[i].unweighted_only);
    }
    CHECK(a.dpos_cross.both == b.dpos_cross.both);
    CHECK(a.dpos_cross.weighted_only == b.dpos_cross.weighted_only);
}

}  // namespace

TEST_SUITE("simlab")
{
    TEST_CASE("scenario validation")
    {
        ScenarioSpec s;
        CHECK_THROWS_AS(s.validate(), InvalidArgument);
        s.theta1 = {0.0, 3.0};
        CHECK_NOTHROW(s.validate());
        s.theta2 = {1.0};
        CHECK_THROWS_AS(s.validate(), InvalidArgument);
        s.theta2.clear();
        s.reps = 0;
        CHECK_THROWS_AS(run_scenario(s), InvalidArgument);
        s.reps = 10;
        s.run_weighted = s.run_unweighted = false;
        CHECK_THROWS_AS(s.validate(), InvalidArgument);
    }

    TEST_CASE("estimate standard error")
    {
        const auto e = Estimate::from_counts(7239, 10000);
        CHECK(e.value == 0.7239);
        CHECK(e.se == std::sqrt(0.7239 * (1 - 0.7239) / 10000));
        CHECK(Estimate::from_counts(0, 50).se == 0.0);
    }

    TEST_CASE("reported SE is the binomial formula")
    {
        ScenarioSpec s;
        s.theta1 = {0.0, 2.0, 3.0};
        s.reps = 3000;
        const auto sum = run_scenario(s);
        for (const auto& arm : {*sum.weighted, *sum.unweighted}) {
            for (const auto& e : arm.mpos) {
                const double p = double(e.successes) / double(e.trials);
                CHECK(e.value == p);
                CHECK(e.se == std::sqrt(p * (1 - p) / double(e.trials)));
            }
        }
    }

    TEST_CASE("bit-identical for any thread count")
    {
        ScenarioSpec s;
        s.theta1 = {0.0, 0.0, 0.0, 0.0, 2.5};
        s.redraw_count = 4;
        s.redraw_upper = 2.5;
        s.reps = 3001;
        s.seed = 99;
        s.threads = 1;
        const auto ref = run_scenario(s);
        for (std::size_t t : {2u, 3u, 8u}) {
            s.threads = t;
            check_same(ref, run_scenario(s));
        }
        s.seed = 100;
        s.threads = 1;
        CHECK(run_scenario(s).weighted->dpos->successes != ref.weighted->dpos->successes);
    }

    TEST_CASE("unweighted mPoS agrees with the closed form")
    {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(-0.5, 4.0);
        for (int k = 0; k < 20; ++k) {
            const std::size_t m = 2 + k % 4;
            ScenarioSpec s;
            s.theta1.resize(m);
            s.theta2.resize(m);
            for (auto& x : s.theta1) x = u(rng);
            for (auto& x : s.theta2) x = u(rng);
            s.reps = 4000;
            s.seed = 1000 + k;
            s.run_weighted = false;
            const auto sum = run_scenario(s);
            const auto cf = unweighted_pos_closed_form(s.theta1, s.theta2, ProblemSpec(m, 0.05));
            for (std::size_t i = 0; i < m; ++i) {
                const double se = std::sqrt(cf.mpos[i] * (1 - cf.mpos[i]) / 4000.0);
                CHECK(std::abs(sum.unweighted->mpos[i].value - cf.mpos[i]) <= 4 * se + 1e-12);
            }
            if (cf.dpos) {
                const double se = std::sqrt(*cf.dpos * (1 - *cf.dpos) / 4000.0);
                CHECK(std::abs(sum.unweighted->dpos->value - *cf.dpos) <= 4 * se + 1e-12);
            }
        }
    }

    TEST_CASE("cross-table marginals equal mPoS counts")
    {
        ScenarioSpec s;
        s.theta1 = {1.5, 3.0};
        s.reps = 2000;
        const auto sum = run_scenario(s);
        REQUIRE(sum.cross.size() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto& c = sum.cross[i];
            CHECK(c.total() == 2000);
            CHECK(c.both + c.weighted_only == sum.weighted->mpos[i].successes);
            CHECK(c.both + c.unweighted_only == sum.unweighted->mpos[i].successes);
        }
        const auto& d = sum.dpos_cross;
        CHECK(d.total() == 2000);
        CHECK(d.both + d.weighted_only == sum.weighted->dpos->successes);
        CHECK(d.both + d.unweighted_only == sum.unweighted->dpos->successes);
        const double n = 2000.0;
        const double diff = (double(d.weighted_only) - double(d.unweighted_only)) / n;
        CHECK(sum.dpos_gain() == doctest::Approx(diff).epsilon(1e-12));
        const double var = (double(d.weighted_only) + double(d.unweighted_only)) / n - diff * diff;
        CHECK(sum.dpos_gain_se() == doctest::Approx(std::sqrt(var / n)).epsilon(1e-12));
        std::size_t h = 0;
        for (auto x : sum.weight_histogram) h += x;
        CHECK(h == 2000);
        CHECK(sum.mean_weights[0] + sum.mean_weights[1] == doctest::Approx(1.0));
    }

    TEST_CASE("FWER stays below the level")
    {
        for (const MeanVector& theta : {MeanVector{0, 0}, MeanVector{0, 3}, MeanVector{0, 0, 3},
                                        MeanVector{-1, 0, 2, 2}}) {
            ScenarioSpec s;
            s.theta1 = theta;
            s.reps = 20000;
            s.seed = 5;
            const auto f = fwer_check(s);
            for (const auto& e : {f.weighted_trial1, f.weighted_trial2, f.unweighted_trial1,
                                  f.unweighted_trial2}) {
                REQUIRE(e.has_value());
                CHECK(e->value <= 0.05 + 3 * e->se);
            }
        }
        ScenarioSpec all_pos;
        all_pos.theta1 = {1.0, 2.0};
        CHECK_THROWS_AS(fwer_check(all_pos), InvalidArgument);
    }

    TEST_CASE("no signal gives no gain")
    {
        ScenarioSpec s;
        s.theta1 = {0.0, 0.0};
        s.reps = 5000;
        const auto sum = run_scenario(s);
        CHECK_FALSE(sum.weighted->dpos.has_value());
        CHECK(sum.weighted->mpos[0].value < 0.01);
        CHECK(std::isnan(sum.dpos_gain()));
    }

    TEST_CASE("families")
    {
        CHECK(family_means(Family::half_one_two, 2.0).means == MeanVector{1.0, 2.0, 4.0});
        CHECK(family_means(Family::swapped, 4.0).means == MeanVector{4.0, 2.0});
        const auto u = family_means(Family::uniform_five, 3.0);
        CHECK(u.means.size() == 5);
        CHECK(u.redraw_count == 4);
        CHECK(u.redraw_upper == 3.0);
        for (Family f : all_families()) CHECK(family_from_name(family_name(f)) == f);
        CHECK_THROWS_AS(family_from_name("nope"), InvalidArgument);
    }

    TEST_CASE("heatmap diagonal reproduces the sweep")
    {
        const std::vector<double> grid{0.0, 1.5, 3.0};
        ScenarioSpec base;
        base.reps = 600;
        base.seed = 4;
        const auto curve = sweep_curve(Family::half_theta, grid, base);
        const auto map = sweep_heatmap(Family::half_theta, Family::half_theta, grid, grid, base);
        REQUIRE(map.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) check_same(curve[i], map[i][i]);
        CHECK_THROWS_AS(sweep_heatmap(Family::zero_theta, Family::zero_zero_theta, grid, grid, base),
                        InvalidArgument);
        CHECK_THROWS_AS(sweep_curve(Family::equal, {}, base), InvalidArgument);
    }

    TEST_CASE("fixed means across replicates when not redrawn per replicate")
    {
        ScenarioSpec s;
        s.theta1 = {0, 0, 0, 0, 2.0};
        s.redraw_count = 4;
        s.redraw_upper = 2.0;
        s.redraw_per_rep = false;
        s.reps = 500;
        const auto a = run_scenario(s);
        s.redraw_per_rep = true;
        const auto b = run_scenario(s);
        CHECK(a.weighted->mpos[0].successes != b.weighted->mpos[0].successes);
    }
}
