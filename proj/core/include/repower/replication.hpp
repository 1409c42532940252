#pragma once

// Two-trial replication pipeline: unweighted Bonferroni in trial 1, weights
// estimated from trial 1, weighted Bonferroni in trial 2.

#include <optional>
#include <span>
#include <vector>

#include "repower/mtp.hpp"
#include "repower/power.hpp"
#include "repower/solver.hpp"

namespace repower {

/// Standardized test statistics of one trial.
using TrialOutcome = std::vector<double>;

enum class AltRule {
    rejected_set,       ///< hypotheses rejected by unweighted Bonferroni in trial 1
    positive_estimate,  ///< hypotheses with a positive trial-1 statistic
};

struct ReplicationResult {
    AlternativeSet alt_set;
    SolveReport solve;
    RejectionSet trial1_rejections;
    RejectionSet trial2_rejections;
    /// Rejected in both trials.
    RejectionSet overall_rejections;
    PValueVector trial2_adjusted_p;

    const WeightVector& weights() const noexcept { return solve.weights; }
};

/// Alternative set and means (the trial-1 statistics themselves) for the
/// second trial's power objective.
AlternativeSet estimate_alt_set(std::span<const double> trial1, const ProblemSpec& spec,
                                AltRule rule = AltRule::rejected_set);

/// Full pipeline with data-dependent weights from optimal_weights.
ReplicationResult run_replication(std::span<const double> trial1, std::span<const double> trial2,
                                  const ProblemSpec& spec, const SolverConfig& cfg = {});

/// Same pipeline with trial-2 weights fixed to w (the unweighted arm uses
/// uniform weights). solve.method is fixed_point with no achieved power.
ReplicationResult run_replication_fixed(std::span<const double> trial1,
                                        std::span<const double> trial2, const WeightVector& w,
                                        const ProblemSpec& spec);

struct ClosedFormPoS {
    /// P(H_i rejected in both trials), every i.
    std::vector<double> mpos;
    /// P(some H_i with theta2_i > 0 rejected in both trials); empty when
    /// there is no such hypothesis.
    std::optional<double> dpos;
};

/// Probability of success of the unweighted two-trial Bonferroni design
/// with trial-1 means theta and trial-2 means theta2.
ClosedFormPoS unweighted_pos_closed_form(std::span<const double> theta,
                                         std::span<const double> theta2,
                                         const ProblemSpec& spec);

}  // namespace repower
