#pragma once

// Rejection probabilities of weighted Bonferroni tests with independent
// N(theta_i, 1) statistics.

#include <cstddef>
#include <span>
#include <vector>

#include "repower/mtp.hpp"

namespace repower {

/// Standardized effect sizes, one per hypothesis.
using MeanVector = std::vector<double>;

/// Hypotheses treated as non-null by the power objective, with the means
/// used for them. Indices are 0-based and strictly increasing.
struct AlternativeSet {
    std::vector<std::size_t> indices;
    std::vector<double> means;

    bool empty() const noexcept { return indices.empty(); }
    std::size_t size() const noexcept { return indices.size(); }

    /// Throws InvalidArgument if the set is malformed for m hypotheses.
    void validate(std::size_t m) const;

    /// Builds the set {i : theta_i > 0} with means theta_i.
    static AlternativeSet positive_part(std::span<const double> theta);
};

/// Smallest and largest values of w * alpha passed to the quantile.
inline constexpr double kMinTailProbability = 1e-300;
inline constexpr double kMaxTailProbability = 1.0 - 1e-16;

/// Critical z-value of a weighted test, inv_ccdf(w * alpha) with the product
/// clamped to [kMinTailProbability, kMaxTailProbability]. Returns +inf for w == 0.
double rejection_threshold(double w, double alpha);

/// P(reject H_i) = ccdf(threshold - theta_i). Zero for w == 0.
double marginal_power(double theta, double w, double alpha);

/// log P(no hypothesis in alt is rejected) = sum_i log cdf(threshold_i - theta_i),
/// where w is the full length-m weight vector.
double log_nonrejection(const AlternativeSet& alt, std::span<const double> w, double alpha);

/// Probability of rejecting at least one hypothesis of alt. Computed as
/// -expm1(log_nonrejection). Throws InvalidArgument when alt is empty.
double disjunctive_power(const AlternativeSet& alt, std::span<const double> w, double alpha);
double disjunctive_power(const AlternativeSet& alt, const WeightVector& w, double alpha);

/// Partial derivatives of disjunctive_power with respect to every w_j
/// (length m, zero off alt). For j in alt:
///   alpha * prod_{i != j} cdf(t_i - theta_i) * pdf(t_j - theta_j) / pdf(t_j).
/// Entries with w_j == 0 are +inf.
std::vector<double> disjunctive_power_gradient(const AlternativeSet& alt,
                                               std::span<const double> w, double alpha);

}  // namespace repower
