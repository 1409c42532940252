#pragma once

// Weights maximizing the disjunctive power of a weighted Bonferroni test.
//
// Three independent routes are provided:
//   * solve_fixed_point  - solves the stationarity system
//       w_i = ccdf(theta_i/2 + [log c - sum_{j != i} log cdf(t_j - theta_j)] / theta_i) / alpha
//     with t_j = inv_ccdf(w_j * alpha) and c > 0 chosen so the weights sum to one;
//   * solve_grid         - exhaustive search over a lattice on the simplex;
//   * solve_multistart   - projected gradient ascent from every subset-uniform start.
// optimal_weights combines them according to the size of the alternative set.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "repower/error.hpp"
#include "repower/mtp.hpp"
#include "repower/power.hpp"

namespace repower {

enum class SolveMethod { fixed_point, grid, multistart_ascent };

std::string_view to_string(SolveMethod method) noexcept;

struct SolverConfig {
    /// Accuracy of individual weights in the fixed-point solve.
    double weight_tol = 1e-10;
    /// Accuracy of sum(w) = 1 before the final renormalization.
    double sum_tol = 1e-10;
    /// Iteration cap for one-dimensional threshold solves (and, x10, for
    /// each multistart ascent).
    std::size_t max_inner = 500;
    /// Iteration cap for the search over the Lagrange constant.
    std::size_t max_outer = 200;
    /// Lattice spacing of solve_grid; must divide 1.
    double grid_step = 0.005;

    /// Throws InvalidArgument on nonpositive tolerances or a bad grid step.
    void validate() const;
    /// round(1 / grid_step).
    std::size_t grid_divisions() const;
};

struct SolveReport {
    /// Full length-m weights, exactly zero off the alternative set.
    WeightVector weights;
    /// disjunctive_power(alt, weights, alpha); empty when alt is empty.
    std::optional<double> achieved_power;
    /// Lagrange constant c of the stationarity system (fixed point only).
    double lagrange_c = 0.0;
    double log_lagrange_c = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    SolveMethod method = SolveMethod::fixed_point;
    /// max_i |w_i - map_i(w, c)| for fixed-point reports, otherwise NaN.
    double residual = 0.0;
    /// A safeguard candidate (uniform or single corner) beat every
    /// stationary point found.
    bool safeguard_used = false;
    /// The returned stationary point has one coordinate on the branch where
    /// its log-nonrejection term is concave.
    bool nonconvex_branch = false;
};

class NonPositiveMean : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class TooManyDimensions : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The search for c ran out of iterations. report() holds the best point
/// found (converged == false).
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, SolveReport report)
        : Error(what), report_(std::move(report))
    {
    }
    const SolveReport& report() const noexcept { return report_; }

private:
    SolveReport report_;
};

/// Right-hand side of the stationarity system for every hypothesis in alt,
/// as a length-m vector (zero off alt).
std::vector<double> fixed_point_map(const AlternativeSet& alt, std::span<const double> w,
                                    double log_c, double alpha);

/// max over alt of |w_i - fixed_point_map(...)_i|.
double fixed_point_residual(const AlternativeSet& alt, std::span<const double> w, double log_c,
                            double alpha);

/// Solves the stationarity system. Requires a nonempty alt with positive
/// means (NonPositiveMean otherwise). Every stationary point that can be a
/// local maximum is located and compared with the uniform and single-corner
/// candidates; the best is returned.
SolveReport solve_fixed_point(const AlternativeSet& alt, const ProblemSpec& spec,
                              const SolverConfig& cfg = {});

/// Exhaustive lattice search over the coordinates in alt (|alt| <= 4,
/// TooManyDimensions otherwise). Ties go to the lexicographically smallest
/// weight vector. Means may be any finite values.
SolveReport solve_grid(const AlternativeSet& alt, const ProblemSpec& spec,
                       const SolverConfig& cfg = {});

/// Projected gradient ascent on the simplex from the 2^|alt| - 1 starts that
/// are uniform over a nonempty subset of alt. Returns the best endpoint.
SolveReport solve_multistart(const AlternativeSet& alt, const ProblemSpec& spec,
                             const SolverConfig& cfg = {});

/// Weight selection used by the replication pipeline:
///   * empty alt      -> uniform 1/m, no achieved power;
///   * |alt| <= 3     -> grid result, replaced by the fixed-point result when
///                       that has strictly higher power;
///   * |alt| > 3      -> fixed-point result.
SolveReport optimal_weights(const AlternativeSet& alt, const ProblemSpec& spec,
                            const SolverConfig& cfg = {});

}  // namespace repower
