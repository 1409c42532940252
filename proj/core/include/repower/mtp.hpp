#pragma once

// Bonferroni-type multiple testing procedures on one-sided p-values.

#include <cstddef>
#include <span>
#include <vector>

namespace repower {

/// Number of hypotheses and the overall one-sided familywise level.
class ProblemSpec {
public:
    /// Throws InvalidArgument unless m >= 1 and 0 < alpha < 1.
    ProblemSpec(std::size_t m, double alpha);

    std::size_t m() const noexcept { return m_; }
    double alpha() const noexcept { return alpha_; }
    /// alpha / m, the per-hypothesis level of the unweighted procedure. Formed
    /// as (1/m) * alpha so it matches the uniform weighted threshold bit for bit.
    double bonferroni_level() const noexcept { return (1.0 / static_cast<double>(m_)) * alpha_; }

private:
    std::size_t m_;
    double alpha_;
};

/// One-sided p-values, each in [0,1].
using PValueVector = std::vector<double>;

/// rejected[i] is true when H_i is rejected.
using RejectionSet = std::vector<bool>;

/// Nonnegative hypothesis weights summing to one.
class WeightVector {
public:
    static constexpr double kSumTolerance = 1e-9;

    /// Throws InvalidArgument if any entry is negative or non-finite, or if
    /// the entries do not sum to one within kSumTolerance.
    explicit WeightVector(std::vector<double> w);

    /// (1/m, ..., 1/m).
    static WeightVector uniform(std::size_t m);
    /// All mass on index k.
    static WeightVector corner(std::size_t m, std::size_t k);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> values() const noexcept { return w_; }
    const std::vector<double>& vector() const noexcept { return w_; }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<double> w_;
};

/// p_i = P(Z > z_i).
PValueVector z_to_p(std::span<const double> z);

/// Reject H_i iff p_i < alpha/m.
RejectionSet bonferroni(std::span<const double> p, const ProblemSpec& spec);

/// Reject H_i iff p_i < w_i * alpha. A zero weight never rejects.
RejectionSet weighted_bonferroni(std::span<const double> p, const WeightVector& w,
                                 const ProblemSpec& spec);

/// min(1, p_i / w_i), with 1 for every zero weight. Rejection at level alpha
/// is equivalent to adjusted_p < alpha.
PValueVector adjusted_p(std::span<const double> p, const WeightVector& w);

/// min(1, m * p_i), the unweighted Bonferroni adjustment.
PValueVector bonferroni_adjusted_p(std::span<const double> p);

/// Elementwise AND of two equally sized rejection sets.
RejectionSet both_rejected(const RejectionSet& a, const RejectionSet& b);

}  // namespace repower
