#include "repower/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "repower/gauss.hpp"

namespace repower {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Number of sample points used to bracket roots along a nonconvex branch.
constexpr int kBranchScanPoints = 64;

// Stationarity in threshold form. With t = inv_ccdf(w * alpha) and
// K = c / P(no rejection), every coordinate of a stationary point satisfies
//   h(t) := theta * t - theta^2 / 2 - log cdf(t - theta) = log K.
// h is convex in t, so for a given K each coordinate has at most two
// solutions: one where h increases (the term is convex in w) and one where it
// decreases. The coupling between coordinates is reduced to the scalar K.
double stationarity(double theta, double t)
{
    return theta * t - 0.5 * theta * theta - gauss::log_cdf(t - theta);
}

double stationarity_slope(double theta, double t)
{
    return theta - gauss::inverse_mills(t - theta);
}

struct Coordinate {
    double theta = 0.0;
    double t_min = 0.0;    // threshold at w = 1
    double t_max = 0.0;    // threshold at the smallest admissible w
    double t_turn = 0.0;   // argmin of h on [t_min, t_max]
    bool has_decreasing_branch = false;
};

Coordinate make_coordinate(double theta, double alpha)
{
    Coordinate c;
    c.theta = theta;
    c.t_min = rejection_threshold(1.0, alpha);
    c.t_max = gauss::inv_ccdf(kMinTailProbability);
    c.t_turn = c.t_min;
    if (stationarity_slope(theta, c.t_min) < 0.0) {
        c.has_decreasing_branch = true;
        double lo = c.t_min;
        double hi = c.t_max;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (stationarity_slope(theta, mid) < 0.0 ? lo : hi) = mid;
        }
        c.t_turn = 0.5 * (lo + hi);
    }
    return c;
}

double weight_of(double t, double alpha)
{
    return gauss::ccdf(t) / alpha;
}

// Solves h(t) = level on [a, b] where h is monotone (increasing when
// `increasing`). Values of level outside h([a, b]) clamp to the nearer end.
// Sets *clamped when that happens.
double solve_branch(double theta, double level, double a, double b, bool increasing,
                    double guess, double tol, std::size_t max_iter, bool* clamped)
{
    const double ha = stationarity(theta, a);
    const double hb = stationarity(theta, b);
    const double lo_val = increasing ? ha : hb;
    const double hi_val = increasing ? hb : ha;
    *clamped = false;
    if (level <= lo_val) {
        *clamped = true;
        return increasing ? a : b;
    }
    if (level >= hi_val) {
        *clamped = true;
        return increasing ? b : a;
    }

    // Safeguarded Newton: [lo, hi] always brackets the root.
    double lo = a;
    double hi = b;
    double t = (guess > a && guess < b) ? guess : 0.5 * (a + b);
    for (std::size_t it = 0; it < max_iter; ++it) {
        const double f = stationarity(theta, t) - level;
        const bool below = increasing ? f < 0.0 : f > 0.0;
        (below ? lo : hi) = t;
        if (f == 0.0) return t;
        const double slope = stationarity_slope(theta, t);
        double next = t - f / slope;
        if (!(next > lo && next < hi) || slope == 0.0) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= tol * (1.0 + std::abs(t)) || hi - lo <= tol) return next;
        t = next;
    }
    return t;
}

struct Candidate {
    std::vector<double> weights;  // length |alt|
    double log_c = kNaN;
    std::size_t iterations = 0;
    bool converged = false;
    bool stationary = false;
    bool nonconvex = false;
};

class StationarySolver {
public:
    StationarySolver(const AlternativeSet& alt, double alpha, const SolverConfig& cfg)
        : alpha_(alpha), cfg_(cfg), tol_t_(1e-3 * cfg.weight_tol)
    {
        coords_.reserve(alt.size());
        for (double theta : alt.means) coords_.push_back(make_coordinate(theta, alpha));
        thresholds_.assign(coords_.size(), kNaN);
        const double t_uniform = rejection_threshold(1.0 / static_cast<double>(alt.size()), alpha);
        for (std::size_t k = 0; k < coords_.size(); ++k) thresholds_[k] = t_uniform;
    }

    // Stationary point with every coordinate on its increasing branch. This
    // is the only candidate when the objective is convex in w.
    std::optional<Candidate> solve_increasing()
    {
        const std::size_t n = coords_.size();
        double level_lo = kInf;
        double level_hi = -kInf;
        double start = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Coordinate& c = coords_[k];
            level_lo = std::min(level_lo, stationarity(c.theta, c.t_turn));
            level_hi = std::max(level_hi, stationarity(c.theta, c.t_max));
            start += stationarity(c.theta, thresholds_[k]);
        }
        start /= static_cast<double>(n);

        double f_lo = excess(level_lo, -1, nullptr);
        if (f_lo < 0.0) return std::nullopt;  // even maximal weights fall short
        double lo = level_lo;
        double hi = level_hi;
        double level = std::clamp(start, lo, hi);
        Candidate cand;
        for (std::size_t it = 1; it <= cfg_.max_outer; ++it) {
            cand.iterations = it;
            double slope = 0.0;
            const double f = excess(level, -1, &slope);
            (f > 0.0 ? lo : hi) = level;
            if (std::abs(f) <= 1e-2 * cfg_.sum_tol) {
                cand.converged = true;
                break;
            }
            double next = slope < 0.0 ? level - f / slope : kNaN;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (hi - lo <= 1e-15 * (1.0 + std::abs(level))) {
                level = next;
                excess(level, -1, nullptr);
                cand.converged = std::abs(current_sum() - 1.0) <= cfg_.sum_tol;
                break;
            }
            level = next;
        }
        if (!cand.converged) excess(level, -1, nullptr);
        finish(cand, level);
        return cand;
    }

    // Stationary points with coordinate k on its decreasing branch.
    std::vector<Candidate> solve_with_decreasing(std::size_t k)
    {
        std::vector<Candidate> out;
        const Coordinate& c = coords_[k];
        if (!c.has_decreasing_branch) return out;
        const double lo_level = stationarity(c.theta, c.t_turn);
        const double hi_level = stationarity(c.theta, c.t_min);
        if (!(hi_level > lo_level)) return out;

        std::vector<double> levels(kBranchScanPoints + 1);
        std::vector<double> values(kBranchScanPoints + 1);
        for (int s = 0; s <= kBranchScanPoints; ++s) {
            levels[s] = lo_level + (hi_level - lo_level) * s / kBranchScanPoints;
            values[s] = excess(levels[s], static_cast<long>(k), nullptr);
        }
        for (int s = 0; s < kBranchScanPoints; ++s) {
            if ((values[s] > 0.0) == (values[s + 1] > 0.0)) continue;
            double a = levels[s];
            double b = levels[s + 1];
            const bool a_positive = values[s] > 0.0;
            Candidate cand;
            for (std::size_t it = 1; it <= cfg_.max_outer; ++it) {
                cand.iterations = it;
                const double mid = 0.5 * (a + b);
                const double f = excess(mid, static_cast<long>(k), nullptr);
                ((f > 0.0) == a_positive ? a : b) = mid;
                if (std::abs(f) <= 1e-2 * cfg_.sum_tol || b - a <= 1e-15 * (1.0 + std::abs(mid))) {
                    cand.converged = true;
                    break;
                }
            }
            const double level = 0.5 * (a + b);
            excess(level, static_cast<long>(k), nullptr);
            cand.nonconvex = true;
            finish(cand, level);
            out.push_back(std::move(cand));
        }
        return out;
    }

    std::size_t size() const noexcept { return coords_.size(); }

private:
    // sum_k w_k(level) - 1, with coordinate `decreasing` (or none when -1)
    // taken from its decreasing branch. Updates thresholds_ in place and, if
    // requested, the derivative of the sum with respect to level.
    double excess(double level, long decreasing, double* slope)
    {
        double sum = 0.0;
        double d = 0.0;
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            const Coordinate& c = coords_[k];
            const bool dec = static_cast<long>(k) == decreasing;
            bool clamped = false;
            const double t = dec ? solve_branch(c.theta, level, c.t_min, c.t_turn, false,
                                                thresholds_[k], tol_t_, cfg_.max_inner, &clamped)
                                 : solve_branch(c.theta, level, c.t_turn, c.t_max, true,
                                                thresholds_[k], tol_t_, cfg_.max_inner, &clamped);
            thresholds_[k] = t;
            sum += weight_of(t, alpha_);
            if (slope && !clamped) {
                // dw/dlevel = (dw/dt) / h'(t) = -pdf(t) / (alpha h'(t))
                const double hp = stationarity_slope(c.theta, t);
                if (hp != 0.0) d -= gauss::pdf(t) / (alpha_ * hp);
            }
        }
        if (slope) *slope = d;
        return sum - 1.0;
    }

    double current_sum() const
    {
        double sum = 0.0;
        for (double t : thresholds_) sum += weight_of(t, alpha_);
        return sum;
    }

    void finish(Candidate& cand, double level)
    {
        cand.weights.resize(coords_.size());
        double sum = 0.0;
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            cand.weights[k] = weight_of(thresholds_[k], alpha_);
            sum += cand.weights[k];
        }
        for (double& w : cand.weights) w /= sum;
        double log_p = 0.0;
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            log_p += gauss::log_cdf(rejection_threshold(cand.weights[k], alpha_) - coords_[k].theta);
        }
        cand.log_c = level + log_p;
        cand.stationary = true;
    }

    double alpha_;
    SolverConfig cfg_;
    double tol_t_;
    std::vector<Coordinate> coords_;
    std::vector<double> thresholds_;
};

std::vector<double> expand(const AlternativeSet& alt, std::span<const double> reduced,
                           std::size_t m)
{
    std::vector<double> full(m, 0.0);
    for (std::size_t k = 0; k < alt.size(); ++k) full[alt.indices[k]] = reduced[k];
    return full;
}

// Weight vector whose entries sum to one up to rounding; the last nonzero
// entry absorbs the rounding error.
WeightVector make_weights(std::vector<double> w)
{
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum > 0.0 && sum != 1.0) {
        for (double& v : w) v /= sum;
    }
    return WeightVector(std::move(w));
}

void check_alt(const AlternativeSet& alt, const ProblemSpec& spec)
{
    alt.validate(spec.m());
    if (alt.empty()) throw InvalidArgument("alternative set is empty");
}

void check_positive_means(const AlternativeSet& alt)
{
    for (double mean : alt.means) {
        if (!(mean > 0.0)) {
            throw NonPositiveMean("stationarity system requires positive means, got " +
                                  std::to_string(mean));
        }
    }
}

// Thresholds inv_ccdf(k * alpha / divisions) for k = 0..divisions (k = 0 is
// +inf). Cached per thread because the simulation engine solves many grids
// at the same level.
const std::vector<double>& grid_thresholds(double alpha, std::size_t divisions)
{
    struct Entry {
        double alpha;
        std::size_t divisions;
        std::vector<double> thresholds;
    };
    thread_local std::vector<Entry> cache;
    for (const Entry& e : cache) {
        if (e.alpha == alpha && e.divisions == divisions) return e.thresholds;
    }
    Entry e{alpha, divisions, std::vector<double>(divisions + 1)};
    e.thresholds[0] = kInf;
    for (std::size_t k = 1; k <= divisions; ++k) {
        e.thresholds[k] =
            rejection_threshold(static_cast<double>(k) / static_cast<double>(divisions), alpha);
    }
    if (cache.size() >= 8) cache.erase(cache.begin());
    cache.push_back(std::move(e));
    return cache.back().thresholds;
}

void project_to_simplex(std::vector<double>& v)
{
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double shift = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) shift = candidate;
    }
    for (double& x : v) x = std::max(0.0, x - shift);
}

}  // namespace

std::string_view to_string(SolveMethod method) noexcept
{
    switch (method) {
    case SolveMethod::fixed_point: return "fixed_point";
    case SolveMethod::grid: return "grid";
    case SolveMethod::multistart_ascent: return "multistart_ascent";
    }
    return "unknown";
}

void SolverConfig::validate() const
{
    if (!(weight_tol > 0.0) || !(sum_tol > 0.0)) {
        throw InvalidArgument("solver tolerances must be positive");
    }
    if (max_inner == 0 || max_outer == 0) {
        throw InvalidArgument("solver iteration limits must be positive");
    }
    if (!(grid_step > 0.0 && grid_step <= 1.0)) {
        throw InvalidArgument("grid step must lie in (0,1]");
    }
    const double divisions = std::round(1.0 / grid_step);
    if (std::abs(divisions * grid_step - 1.0) > 1e-9) {
        throw InvalidArgument("grid step must divide 1");
    }
}

std::size_t SolverConfig::grid_divisions() const
{
    return static_cast<std::size_t>(std::llround(1.0 / grid_step));
}

std::vector<double> fixed_point_map(const AlternativeSet& alt, std::span<const double> w,
                                    double log_c, double alpha)
{
    std::vector<double> out(w.size(), 0.0);
    std::vector<double> log_terms(alt.size());
    double total = 0.0;
    for (std::size_t k = 0; k < alt.size(); ++k) {
        log_terms[k] =
            gauss::log_cdf(rejection_threshold(w[alt.indices[k]], alpha) - alt.means[k]);
        total += log_terms[k];
    }
    for (std::size_t k = 0; k < alt.size(); ++k) {
        const double theta = alt.means[k];
        const double others = total - log_terms[k];
        out[alt.indices[k]] = gauss::ccdf(0.5 * theta + (log_c - others) / theta) / alpha;
    }
    return out;
}

double fixed_point_residual(const AlternativeSet& alt, std::span<const double> w, double log_c,
                            double alpha)
{
    const std::vector<double> mapped = fixed_point_map(alt, w, log_c, alpha);
    double worst = 0.0;
    for (std::size_t i : alt.indices) worst = std::max(worst, std::abs(w[i] - mapped[i]));
    return worst;
}

SolveReport solve_fixed_point(const AlternativeSet& alt, const ProblemSpec& spec,
                              const SolverConfig& cfg)
{
    check_alt(alt, spec);
    check_positive_means(alt);
    cfg.validate();
    const double alpha = spec.alpha();
    const std::size_t m = spec.m();
    const std::size_t n = alt.size();

    if (n == 1) {
        std::vector<double> w(m, 0.0);
        w[alt.indices[0]] = 1.0;
        const double theta = alt.means[0];
        // With a single term the system reads t = theta/2 + log c / theta.
        const double log_c = theta * rejection_threshold(1.0, alpha) - 0.5 * theta * theta;
        SolveReport r{.weights = WeightVector(w),
                      .achieved_power = disjunctive_power(alt, std::span<const double>(w), alpha),
                      .lagrange_c = std::exp(log_c),
                      .log_lagrange_c = log_c,
                      .iterations = 0,
                      .converged = true,
                      .method = SolveMethod::fixed_point};
        r.residual = fixed_point_residual(alt, w, log_c, alpha);
        return r;
    }

    StationarySolver solver(alt, alpha, cfg);
    std::vector<Candidate> candidates;
    if (auto c = solver.solve_increasing()) candidates.push_back(std::move(*c));
    for (std::size_t k = 0; k < n; ++k) {
        for (Candidate& c : solver.solve_with_decreasing(k)) candidates.push_back(std::move(c));
    }
    std::size_t total_iterations = 0;
    for (const Candidate& c : candidates) total_iterations += c.iterations;

    // Safeguards: uniform over alt and each single corner.
    {
        Candidate uniform;
        uniform.weights.assign(n, 1.0 / static_cast<double>(n));
        candidates.push_back(std::move(uniform));
        for (std::size_t k = 0; k < n; ++k) {
            Candidate corner;
            corner.weights.assign(n, 0.0);
            corner.weights[k] = 1.0;
            candidates.push_back(std::move(corner));
        }
    }

    const Candidate* best = nullptr;
    double best_log_p = kInf;
    std::vector<double> best_full;
    for (const Candidate& c : candidates) {
        std::vector<double> full = expand(alt, c.weights, m);
        const double log_p = log_nonrejection(alt, full, alpha);
        if (best == nullptr || log_p < best_log_p) {
            best = &c;
            best_log_p = log_p;
            best_full = std::move(full);
        }
    }

    SolveReport report{.weights = make_weights(best_full),
                       .achieved_power = std::nullopt,
                       .lagrange_c = kNaN,
                       .log_lagrange_c = kNaN,
                       .iterations = total_iterations,
                       .converged = false,
                       .method = SolveMethod::fixed_point};
    report.achieved_power = disjunctive_power(alt, report.weights, alpha);
    report.safeguard_used = !best->stationary;
    report.nonconvex_branch = best->nonconvex;
    if (best->stationary) {
        report.log_lagrange_c = best->log_c;
        report.lagrange_c = std::exp(best->log_c);
        report.residual = fixed_point_residual(alt, report.weights.values(), best->log_c, alpha);
        report.converged = best->converged && report.residual <= 1e-8;
    } else {
        report.residual = kNaN;
    }

    const bool search_exhausted =
        std::any_of(candidates.begin(), candidates.end(),
                    [&](const Candidate& c) { return c.stationary && !c.converged; }) &&
        !report.converged;
    if (search_exhausted) {
        throw NoConvergence("fixed-point search for the Lagrange constant did not converge",
                            std::move(report));
    }
    return report;
}

SolveReport solve_grid(const AlternativeSet& alt, const ProblemSpec& spec,
                       const SolverConfig& cfg)
{
    check_alt(alt, spec);
    cfg.validate();
    const std::size_t n = alt.size();
    if (n > 4) {
        throw TooManyDimensions("grid search supports at most 4 alternative hypotheses, got " +
                                std::to_string(n));
    }
    const double alpha = spec.alpha();
    const std::size_t divisions = cfg.grid_divisions();
    const std::vector<double>& thresholds = grid_thresholds(alpha, divisions);

    // table[k][j] = log cdf(threshold_j - theta_k); j = 0 contributes nothing.
    std::vector<std::vector<double>> table(n, std::vector<double>(divisions + 1, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 1; j <= divisions; ++j) {
            table[k][j] = gauss::log_cdf(thresholds[j] - alt.means[k]);
        }
    }

    // Compositions of `divisions` into n parts, visited in lexicographic
    // order; strict improvement keeps the lexicographically smallest argmin.
    std::vector<std::size_t> parts(n, 0);
    std::vector<std::size_t> best_parts(n, 0);
    double best = kInf;
    std::size_t evaluated = 0;
    const auto visit = [&](auto&& self, std::size_t k, std::size_t remaining,
                           double partial) -> void {
        if (k + 1 == n) {
            parts[k] = remaining;
            const double value = partial + table[k][remaining];
            ++evaluated;
            if (value < best) {
                best = value;
                best_parts = parts;
            }
            return;
        }
        for (std::size_t j = 0; j <= remaining; ++j) {
            parts[k] = j;
            self(self, k + 1, remaining - j, partial + table[k][j]);
        }
    };
    visit(visit, 0, divisions, 0.0);

    std::vector<double> reduced(n);
    for (std::size_t k = 0; k < n; ++k) {
        reduced[k] = static_cast<double>(best_parts[k]) / static_cast<double>(divisions);
    }
    SolveReport report{.weights = make_weights(expand(alt, reduced, spec.m())),
                       .achieved_power = std::nullopt,
                       .lagrange_c = kNaN,
                       .log_lagrange_c = kNaN,
                       .iterations = evaluated,
                       .converged = true,
                       .method = SolveMethod::grid,
                       .residual = kNaN};
    report.achieved_power = disjunctive_power(alt, report.weights, alpha);
    return report;
}

SolveReport solve_multistart(const AlternativeSet& alt, const ProblemSpec& spec,
                             const SolverConfig& cfg)
{
    check_alt(alt, spec);
    check_positive_means(alt);
    cfg.validate();
    const std::size_t n = alt.size();
    if (n > 20) throw TooManyDimensions("multistart supports at most 20 alternative hypotheses");
    const double alpha = spec.alpha();
    const double t_max = gauss::inv_ccdf(kMinTailProbability);

    const auto objective = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (v[k] > 0.0) s += gauss::log_cdf(rejection_threshold(v[k], alpha) - alt.means[k]);
        }
        return -s;  // maximize -log P(no rejection)
    };
    const auto gradient = [&](const std::vector<double>& v) {
        std::vector<double> g(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double theta = alt.means[k];
            const double t = v[k] > 0.0 ? rejection_threshold(v[k], alpha) : t_max;
            g[k] = alpha * std::exp(stationarity(theta, t));
        }
        return g;
    };

    const std::size_t max_iter = 10 * cfg.max_inner;
    std::vector<double> best_v;
    double best_value = -kInf;
    bool best_converged = false;
    std::size_t total_iterations = 0;

    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<double> v(n, 0.0);
        const double share = 1.0 / static_cast<double>(std::popcount(mask));
        for (std::size_t k = 0; k < n; ++k) {
            if (mask & (std::size_t{1} << k)) v[k] = share;
        }
        double value = objective(v);
        double step = 0.0;
        bool converged = false;
        for (std::size_t it = 0; it < max_iter && !converged; ++it) {
            ++total_iterations;
            const std::vector<double> g = gradient(v);
            if (it == 0) step = 1.0 / *std::max_element(g.begin(), g.end());
            bool accepted = false;
            for (int backtrack = 0; backtrack < 80; ++backtrack) {
                std::vector<double> trial(n);
                for (std::size_t k = 0; k < n; ++k) trial[k] = v[k] + step * g[k];
                project_to_simplex(trial);
                double gain = 0.0;
                double move = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    gain += g[k] * (trial[k] - v[k]);
                    move = std::max(move, std::abs(trial[k] - v[k]));
                }
                if (move <= 1e-13) {
                    converged = true;
                    break;
                }
                const double trial_value = objective(trial);
                if (trial_value >= value + 1e-4 * gain) {
                    accepted = true;
                    if (trial_value - value <= 1e-15 * std::max(1.0, std::abs(value)) &&
                        move <= 1e-9) {
                        converged = true;
                    }
                    v = std::move(trial);
                    value = trial_value;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) converged = true;
        }
        if (value > best_value) {
            best_value = value;
            best_v = v;
            best_converged = converged;
        }
    }

    SolveReport report{.weights = make_weights(expand(alt, best_v, spec.m())),
                       .achieved_power = std::nullopt,
                       .lagrange_c = kNaN,
                       .log_lagrange_c = kNaN,
                       .iterations = total_iterations,
                       .converged = best_converged,
                       .method = SolveMethod::multistart_ascent,
                       .residual = kNaN};
    report.achieved_power = disjunctive_power(alt, report.weights, alpha);
    return report;
}

SolveReport optimal_weights(const AlternativeSet& alt, const ProblemSpec& spec,
                            const SolverConfig& cfg)
{
    alt.validate(spec.m());
    if (alt.empty()) {
        return SolveReport{.weights = WeightVector::uniform(spec.m()),
                           .achieved_power = std::nullopt,
                           .lagrange_c = kNaN,
                           .log_lagrange_c = kNaN,
                           .iterations = 0,
                           .converged = true,
                           .method = SolveMethod::fixed_point,
                           .residual = kNaN};
    }
    if (alt.size() > 3) return solve_fixed_point(alt, spec, cfg);

    SolveReport grid = solve_grid(alt, spec, cfg);
    const bool all_positive =
        std::all_of(alt.means.begin(), alt.means.end(), [](double v) { return v > 0.0; });
    if (!all_positive) return grid;
    SolveReport exact = solve_fixed_point(alt, spec, cfg);
    const double grid_log_p = log_nonrejection(alt, grid.weights.values(), spec.alpha());
    const double exact_log_p = log_nonrejection(alt, exact.weights.values(), spec.alpha());
    return exact_log_p < grid_log_p ? exact : grid;
}

}  // namespace repower
