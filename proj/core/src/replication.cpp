#include "repower/replication.hpp"

#include <cmath>
#include <string>

#include "repower/gauss.hpp"

namespace repower {
namespace {

void check_trial(std::span<const double> z, const ProblemSpec& spec, const char* which)
{
    if (z.size() != spec.m()) {
        throw InvalidArgument(std::string(which) + ": expected " + std::to_string(spec.m()) +
                              " statistics, got " + std::to_string(z.size()));
    }
    for (double v : z) {
        if (!std::isfinite(v)) throw InvalidArgument(std::string(which) + ": non-finite statistic");
    }
}

ReplicationResult assemble(std::span<const double> trial1, std::span<const double> trial2,
                           const ProblemSpec& spec, AlternativeSet alt, SolveReport solve)
{
    const PValueVector p1 = z_to_p(trial1);
    const PValueVector p2 = z_to_p(trial2);
    ReplicationResult r{.alt_set = std::move(alt),
                        .solve = std::move(solve),
                        .trial1_rejections = bonferroni(p1, spec),
                        .trial2_rejections = {},
                        .overall_rejections = {},
                        .trial2_adjusted_p = {}};
    r.trial2_rejections = weighted_bonferroni(p2, r.solve.weights, spec);
    r.overall_rejections = both_rejected(r.trial1_rejections, r.trial2_rejections);
    r.trial2_adjusted_p = adjusted_p(p2, r.solve.weights);
    return r;
}

}  // namespace

AlternativeSet estimate_alt_set(std::span<const double> trial1, const ProblemSpec& spec,
                                AltRule rule)
{
    check_trial(trial1, spec, "trial 1");
    AlternativeSet alt;
    const double level = spec.bonferroni_level();
    for (std::size_t i = 0; i < trial1.size(); ++i) {
        const bool keep = rule == AltRule::rejected_set ? gauss::ccdf(trial1[i]) < level
                                                        : trial1[i] > 0.0;
        if (keep) {
            alt.indices.push_back(i);
            alt.means.push_back(trial1[i]);
        }
    }
    return alt;
}

ReplicationResult run_replication(std::span<const double> trial1, std::span<const double> trial2,
                                  const ProblemSpec& spec, const SolverConfig& cfg)
{
    check_trial(trial1, spec, "trial 1");
    check_trial(trial2, spec, "trial 2");
    AlternativeSet alt = estimate_alt_set(trial1, spec, AltRule::rejected_set);
    SolveReport solve = optimal_weights(alt, spec, cfg);
    return assemble(trial1, trial2, spec, std::move(alt), std::move(solve));
}

ReplicationResult run_replication_fixed(std::span<const double> trial1,
                                        std::span<const double> trial2, const WeightVector& w,
                                        const ProblemSpec& spec)
{
    check_trial(trial1, spec, "trial 1");
    check_trial(trial2, spec, "trial 2");
    if (w.size() != spec.m()) throw InvalidArgument("weight vector length differs from m");
    AlternativeSet alt = estimate_alt_set(trial1, spec, AltRule::rejected_set);
    SolveReport solve{.weights = w,
                      .achieved_power = std::nullopt,
                      .lagrange_c = std::nan(""),
                      .log_lagrange_c = std::nan(""),
                      .iterations = 0,
                      .converged = true,
                      .method = SolveMethod::fixed_point,
                      .residual = std::nan("")};
    return assemble(trial1, trial2, spec, std::move(alt), std::move(solve));
}

ClosedFormPoS unweighted_pos_closed_form(std::span<const double> theta,
                                         std::span<const double> theta2, const ProblemSpec& spec)
{
    if (theta.size() != spec.m() || theta2.size() != spec.m()) {
        throw InvalidArgument("closed-form PoS: mean vectors must have length m");
    }
    const double crit = gauss::inv_ccdf(spec.bonferroni_level());
    ClosedFormPoS out;
    out.mpos.resize(spec.m());
    double log_miss = 0.0;
    bool any_nonnull = false;
    for (std::size_t i = 0; i < spec.m(); ++i) {
        out.mpos[i] = gauss::ccdf(crit - theta[i]) * gauss::ccdf(crit - theta2[i]);
        if (theta2[i] > 0.0) {
            any_nonnull = true;
            log_miss += std::log1p(-out.mpos[i]);
        }
    }
    if (any_nonnull) out.dpos = -std::expm1(log_miss);
    return out;
}

}  // namespace repower
