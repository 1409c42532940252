#pragma once

// Monte Carlo engine comparing weighted and unweighted Bonferroni in the
// two-trial design. Replicate r always uses the random stream (seed, r), and
// per-replicate results are reduced in a fixed chunk order, so summaries are
// bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "repower/power.hpp"
#include "repower/solver.hpp"

namespace repower {

struct ScenarioSpec {
    MeanVector theta1;
    /// Trial-2 truth; empty means "same as theta1".
    MeanVector theta2;
    double alpha = 0.05;
    std::size_t reps = 1000;
    std::uint64_t seed = 1;
    bool run_weighted = true;
    bool run_unweighted = true;
    /// The first redraw_count means (both trials) are replaced by
    /// U[0, redraw_upper] draws.
    std::size_t redraw_count = 0;
    double redraw_upper = 0.0;
    /// Draw fresh means for every replicate rather than once per scenario.
    bool redraw_per_rep = true;
    /// Hypothesis whose weighted-arm weights are histogrammed.
    std::size_t histogram_index = 0;
    std::size_t histogram_bins = 20;
    /// 0 = automatic (see resolve_thread_count).
    std::size_t threads = 0;

    const MeanVector& trial2_means() const noexcept { return theta2.empty() ? theta1 : theta2; }
    /// Throws InvalidArgument on inconsistent fields.
    void validate() const;
};

/// Binomial proportion with its standard error sqrt(p(1-p)/n).
struct Estimate {
    double value = 0.0;
    double se = 0.0;
    std::size_t successes = 0;
    std::size_t trials = 0;

    static Estimate from_counts(std::size_t successes, std::size_t trials);
};

struct ArmSummary {
    /// P(some trial-2 non-null rejected in both trials); empty without non-nulls.
    std::optional<Estimate> dpos;
    /// P(H_i rejected in both trials).
    std::vector<Estimate> mpos;
    /// P(some true null rejected) in trial 1 / trial 2; empty without nulls.
    std::optional<Estimate> fwer1;
    std::optional<Estimate> fwer2;
};

/// Overall (both-trial) rejections of one hypothesis by the two arms.
struct CrossTable {
    std::size_t both = 0;
    std::size_t weighted_only = 0;
    std::size_t unweighted_only = 0;
    std::size_t neither = 0;

    std::size_t total() const noexcept { return both + weighted_only + unweighted_only + neither; }
};

struct SimSummary {
    std::size_t m = 0;
    std::size_t reps = 0;
    std::optional<ArmSummary> weighted;
    std::optional<ArmSummary> unweighted;
    /// One table per hypothesis; empty unless both arms ran.
    std::vector<CrossTable> cross;
    /// Same table for disjunctive success; all zero unless both arms ran.
    CrossTable dpos_cross;
    /// Mean weighted-arm trial-2 weights.
    std::vector<double> mean_weights;
    std::size_t histogram_index = 0;
    std::vector<std::size_t> weight_histogram;
    /// Replicates whose weight solve reported NoConvergence (the best point
    /// found was used).
    std::size_t solver_flags = 0;

    /// dpos(weighted) - dpos(unweighted), NaN when either is missing.
    double dpos_gain() const;
    /// Standard error of dpos_gain from the paired per-replicate differences;
    /// NaN when dpos_gain is.
    double dpos_gain_se() const;
};

/// Threads used when `requested` is 0: hardware concurrency, capped by the
/// REPOWER_THREADS environment variable when that is a positive integer.
std::size_t resolve_thread_count(std::size_t requested);

SimSummary run_scenario(const ScenarioSpec& spec, const SolverConfig& cfg = {});

/// Mean-vector families of the simulation study, parametrized by theta.
enum class Family {
    zero_theta,            // (0, t)
    half_theta,            // (t/2, t)
    equal,                 // (t, t)
    swapped,               // (t, t/2)
    zero_zero_theta,       // (0, 0, t)
    half_one_two,          // (t/2, t, 2t)
    four_zero_theta,       // (0, 0, 0, 0, t)
    two_zero_three_theta,  // (0, 0, t, t, t)
    uniform_five,          // (U[0,t] x 4, t)
};

struct FamilyPoint {
    MeanVector means;
    std::size_t redraw_count = 0;
    double redraw_upper = 0.0;
};

FamilyPoint family_means(Family family, double theta);
std::string_view family_name(Family family) noexcept;
/// Throws InvalidArgument for unknown names.
Family family_from_name(std::string_view name);
std::span<const Family> all_families() noexcept;

/// Seed of the grid cell (theta, theta_prime) for base seed `seed`.
std::uint64_t cell_seed(std::uint64_t seed, double theta, double theta_prime) noexcept;

/// One summary per grid point with theta1 = theta2 = family(theta). Uses
/// base for level, replicate count, seed, and options.
std::vector<SimSummary> sweep_curve(Family family, std::span<const double> grid,
                                    const ScenarioSpec& base, const SolverConfig& cfg = {});

/// result[a][b]: trial-1 truth family1(grid1[a]), trial-2 truth
/// family2(grid2[b]). The diagonal of a matched pair reproduces sweep_curve.
std::vector<std::vector<SimSummary>> sweep_heatmap(Family family1, Family family2,
                                                   std::span<const double> grid1,
                                                   std::span<const double> grid2,
                                                   const ScenarioSpec& base,
                                                   const SolverConfig& cfg = {});

struct FwerReport {
    std::optional<Estimate> weighted_trial1;
    std::optional<Estimate> weighted_trial2;
    std::optional<Estimate> unweighted_trial1;
    std::optional<Estimate> unweighted_trial2;
};

/// Familywise error rates per trial and arm. Throws InvalidArgument when
/// neither trial has a true null (theta_i <= 0).
FwerReport fwer_check(const ScenarioSpec& spec, const SolverConfig& cfg = {});

}  // namespace repower
