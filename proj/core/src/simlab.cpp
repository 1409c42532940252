#include "repower/simlab.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "repower/philox.hpp"
#include "repower/replication.hpp"

namespace repower {
namespace {

constexpr std::size_t kChunkSize = 256;
constexpr std::uint32_t kStatisticsDomain = 0;
constexpr std::uint32_t kMeansDomain = 1;

struct ArmTally {
    std::size_t dpos = 0;
    std::vector<std::size_t> mpos;
    std::size_t fwer1 = 0;
    std::size_t fwer2 = 0;

    explicit ArmTally(std::size_t m) : mpos(m, 0) {}

    void add(const ArmTally& o)
    {
        dpos += o.dpos;
        for (std::size_t i = 0; i < mpos.size(); ++i) mpos[i] += o.mpos[i];
        fwer1 += o.fwer1;
        fwer2 += o.fwer2;
    }
};

struct Tally {
    ArmTally weighted;
    ArmTally unweighted;
    std::vector<CrossTable> cross;
    CrossTable dpos_cross;
    std::vector<double> weight_sum;
    std::vector<std::size_t> histogram;
    std::size_t flags = 0;
    std::size_t nonnull_reps = 0;
    std::size_t null1_reps = 0;
    std::size_t null2_reps = 0;

    Tally(std::size_t m, std::size_t bins)
        : weighted(m), unweighted(m), cross(m), weight_sum(m, 0.0), histogram(bins, 0)
    {
    }

    void add(const Tally& o)
    {
        weighted.add(o.weighted);
        unweighted.add(o.unweighted);
        for (std::size_t i = 0; i < cross.size(); ++i) {
            cross[i].both += o.cross[i].both;
            cross[i].weighted_only += o.cross[i].weighted_only;
            cross[i].unweighted_only += o.cross[i].unweighted_only;
            cross[i].neither += o.cross[i].neither;
        }
        dpos_cross.both += o.dpos_cross.both;
        dpos_cross.weighted_only += o.dpos_cross.weighted_only;
        dpos_cross.unweighted_only += o.dpos_cross.unweighted_only;
        dpos_cross.neither += o.dpos_cross.neither;
        for (std::size_t i = 0; i < weight_sum.size(); ++i) weight_sum[i] += o.weight_sum[i];
        for (std::size_t b = 0; b < histogram.size(); ++b) histogram[b] += o.histogram[b];
        flags += o.flags;
        nonnull_reps += o.nonnull_reps;
        null1_reps += o.null1_reps;
        null2_reps += o.null2_reps;
    }
};

void draw_means(const ScenarioSpec& spec, std::uint64_t rep, MeanVector& theta1,
                MeanVector& theta2)
{
    theta1 = spec.theta1;
    theta2 = spec.trial2_means();
    if (spec.redraw_count == 0) return;
    StreamRng rng(spec.seed, spec.redraw_per_rep ? rep : std::numeric_limits<std::uint64_t>::max(),
                  kMeansDomain);
    for (std::size_t i = 0; i < spec.redraw_count; ++i) {
        const double draw = spec.redraw_upper * rng.uniform();
        theta1[i] = draw;
        theta2[i] = draw;
    }
}

// Tallies one arm's decisions for a replicate. Fills the overall rejections
// and returns whether some non-null was rejected in both trials.
bool score_arm(const RejectionSet& r1, const RejectionSet& r2, const MeanVector& theta1,
               const MeanVector& theta2, ArmTally& tally, RejectionSet& overall)
{
    const std::size_t m = r1.size();
    bool success = false;
    bool false1 = false;
    bool false2 = false;
    for (std::size_t i = 0; i < m; ++i) {
        overall[i] = r1[i] && r2[i];
        if (overall[i]) ++tally.mpos[i];
        if (overall[i] && theta2[i] > 0.0) success = true;
        if (r1[i] && theta1[i] <= 0.0) false1 = true;
        if (r2[i] && theta2[i] <= 0.0) false2 = true;
    }
    tally.dpos += success;
    tally.fwer1 += false1;
    tally.fwer2 += false2;
    return success;
}

void run_replicate(const ScenarioSpec& spec, const SolverConfig& cfg, const ProblemSpec& problem,
                   std::uint64_t rep, Tally& tally)
{
    const std::size_t m = problem.m();
    MeanVector theta1;
    MeanVector theta2;
    draw_means(spec, rep, theta1, theta2);

    StreamRng rng(spec.seed, rep, kStatisticsDomain);
    std::vector<double> z1(m);
    std::vector<double> z2(m);
    for (std::size_t i = 0; i < m; ++i) z1[i] = theta1[i] + rng.normal();
    for (std::size_t i = 0; i < m; ++i) z2[i] = theta2[i] + rng.normal();

    if (std::any_of(theta2.begin(), theta2.end(), [](double t) { return t > 0.0; })) {
        ++tally.nonnull_reps;
    }
    if (std::any_of(theta1.begin(), theta1.end(), [](double t) { return t <= 0.0; })) {
        ++tally.null1_reps;
    }
    if (std::any_of(theta2.begin(), theta2.end(), [](double t) { return t <= 0.0; })) {
        ++tally.null2_reps;
    }

    const PValueVector p1 = z_to_p(z1);
    const PValueVector p2 = z_to_p(z2);
    const RejectionSet r1 = bonferroni(p1, problem);

    RejectionSet overall_u(m);
    RejectionSet overall_w(m);
    bool success_u = false;
    bool success_w = false;
    if (spec.run_unweighted) {
        const RejectionSet r2 = bonferroni(p2, problem);
        success_u = score_arm(r1, r2, theta1, theta2, tally.unweighted, overall_u);
    }
    if (spec.run_weighted) {
        const AlternativeSet alt = estimate_alt_set(z1, problem, AltRule::rejected_set);
        std::optional<SolveReport> solve;
        try {
            solve = optimal_weights(alt, problem, cfg);
        } catch (const NoConvergence& e) {
            solve = e.report();
            ++tally.flags;
        }
        const WeightVector& w = solve->weights;
        const RejectionSet r2 = weighted_bonferroni(p2, w, problem);
        success_w = score_arm(r1, r2, theta1, theta2, tally.weighted, overall_w);
        for (std::size_t i = 0; i < m; ++i) tally.weight_sum[i] += w[i];
        const std::size_t bins = tally.histogram.size();
        const double wh = w[spec.histogram_index];
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(wh * static_cast<double>(bins)));
        ++tally.histogram[bin];
    }
    if (spec.run_weighted && spec.run_unweighted) {
        CrossTable& d = tally.dpos_cross;
        if (success_w && success_u) ++d.both;
        else if (success_w) ++d.weighted_only;
        else if (success_u) ++d.unweighted_only;
        else ++d.neither;
        for (std::size_t i = 0; i < m; ++i) {
            CrossTable& c = tally.cross[i];
            if (overall_w[i] && overall_u[i]) ++c.both;
            else if (overall_w[i]) ++c.weighted_only;
            else if (overall_u[i]) ++c.unweighted_only;
            else ++c.neither;
        }
    }
}

ArmSummary summarize(const ArmTally& t, const Tally& all, std::size_t reps)
{
    ArmSummary s;
    if (all.nonnull_reps > 0) s.dpos = Estimate::from_counts(t.dpos, reps);
    s.mpos.reserve(t.mpos.size());
    for (std::size_t c : t.mpos) s.mpos.push_back(Estimate::from_counts(c, reps));
    if (all.null1_reps > 0) s.fwer1 = Estimate::from_counts(t.fwer1, reps);
    if (all.null2_reps > 0) s.fwer2 = Estimate::from_counts(t.fwer2, reps);
    return s;
}

std::uint64_t double_bits(double x) noexcept
{
    if (x == 0.0) x = 0.0;  // fold -0 into +0
    return std::bit_cast<std::uint64_t>(x);
}

}  // namespace

void ScenarioSpec::validate() const
{
    if (theta1.empty()) throw InvalidArgument("scenario: theta1 is empty");
    if (!theta2.empty() && theta2.size() != theta1.size()) {
        throw InvalidArgument("scenario: theta1 and theta2 differ in length");
    }
    for (double t : theta1) {
        if (!std::isfinite(t)) throw InvalidArgument("scenario: non-finite mean");
    }
    for (double t : theta2) {
        if (!std::isfinite(t)) throw InvalidArgument("scenario: non-finite mean");
    }
    if (reps == 0) throw InvalidArgument("scenario: reps must be at least 1");
    if (!run_weighted && !run_unweighted) throw InvalidArgument("scenario: no method selected");
    if (redraw_count > theta1.size()) throw InvalidArgument("scenario: redraw count exceeds m");
    if (redraw_count > 0 && !(redraw_upper >= 0.0)) {
        throw InvalidArgument("scenario: redraw upper bound must be nonnegative");
    }
    if (histogram_index >= theta1.size()) {
        throw InvalidArgument("scenario: histogram index out of range");
    }
    if (histogram_bins == 0) throw InvalidArgument("scenario: histogram needs at least one bin");
    ProblemSpec(theta1.size(), alpha);
}

Estimate Estimate::from_counts(std::size_t successes, std::size_t trials)
{
    Estimate e;
    e.successes = successes;
    e.trials = trials;
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    e.value = static_cast<double>(successes) / n;
    e.se = std::sqrt(e.value * (1.0 - e.value) / n);
    return e;
}

double SimSummary::dpos_gain() const
{
    if (!weighted || !unweighted || !weighted->dpos || !unweighted->dpos) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return weighted->dpos->value - unweighted->dpos->value;
}

double SimSummary::dpos_gain_se() const
{
    if (std::isnan(dpos_gain())) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(dpos_cross.total());
    const double b = static_cast<double>(dpos_cross.weighted_only) / n;
    const double c = static_cast<double>(dpos_cross.unweighted_only) / n;
    return std::sqrt(std::max(0.0, b + c - (b - c) * (b - c)) / n);
}

std::size_t resolve_thread_count(std::size_t requested)
{
    std::size_t n = requested;
    if (n == 0) n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("REPOWER_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return n;
}

SimSummary run_scenario(const ScenarioSpec& spec, const SolverConfig& cfg)
{
    spec.validate();
    cfg.validate();
    const std::size_t m = spec.theta1.size();
    const ProblemSpec problem(m, spec.alpha);
    const std::size_t chunks = (spec.reps + kChunkSize - 1) / kChunkSize;
    std::vector<Tally> partial(chunks, Tally(m, spec.histogram_bins));

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            const std::size_t begin = c * kChunkSize;
            const std::size_t end = std::min(spec.reps, begin + kChunkSize);
            for (std::size_t r = begin; r < end; ++r) run_replicate(spec, cfg, problem, r, partial[c]);
        }
    };
    const std::size_t threads = std::min(resolve_thread_count(spec.threads), chunks);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    Tally total(m, spec.histogram_bins);
    for (const Tally& t : partial) total.add(t);

    SimSummary out;
    out.m = m;
    out.reps = spec.reps;
    out.histogram_index = spec.histogram_index;
    out.solver_flags = total.flags;
    if (spec.run_weighted) {
        out.weighted = summarize(total.weighted, total, spec.reps);
        out.mean_weights.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            out.mean_weights[i] = total.weight_sum[i] / static_cast<double>(spec.reps);
        }
        out.weight_histogram = total.histogram;
    }
    if (spec.run_unweighted) out.unweighted = summarize(total.unweighted, total, spec.reps);
    if (spec.run_weighted && spec.run_unweighted) {
        out.cross = total.cross;
        out.dpos_cross = total.dpos_cross;
    }
    return out;
}

FamilyPoint family_means(Family family, double theta)
{
    FamilyPoint p;
    switch (family) {
    case Family::zero_theta: p.means = {0.0, theta}; break;
    case Family::half_theta: p.means = {theta / 2.0, theta}; break;
    case Family::equal: p.means = {theta, theta}; break;
    case Family::swapped: p.means = {theta, theta / 2.0}; break;
    case Family::zero_zero_theta: p.means = {0.0, 0.0, theta}; break;
    case Family::half_one_two: p.means = {theta / 2.0, theta, 2.0 * theta}; break;
    case Family::four_zero_theta: p.means = {0.0, 0.0, 0.0, 0.0, theta}; break;
    case Family::two_zero_three_theta: p.means = {0.0, 0.0, theta, theta, theta}; break;
    case Family::uniform_five:
        p.means = {0.0, 0.0, 0.0, 0.0, theta};
        p.redraw_count = 4;
        p.redraw_upper = theta;
        break;
    }
    return p;
}

namespace {
constexpr std::array kFamilies = {
    Family::zero_theta,      Family::half_theta,         Family::equal,
    Family::swapped,         Family::zero_zero_theta,    Family::half_one_two,
    Family::four_zero_theta, Family::two_zero_three_theta, Family::uniform_five,
};
}  // namespace

std::string_view family_name(Family family) noexcept
{
    switch (family) {
    case Family::zero_theta: return "zero-theta";
    case Family::half_theta: return "half-theta";
    case Family::equal: return "equal";
    case Family::swapped: return "swapped";
    case Family::zero_zero_theta: return "zero-zero-theta";
    case Family::half_one_two: return "half-one-two";
    case Family::four_zero_theta: return "four-zero-theta";
    case Family::two_zero_three_theta: return "two-zero-three-theta";
    case Family::uniform_five: return "uniform-five";
    }
    return "unknown";
}

Family family_from_name(std::string_view name)
{
    for (Family f : kFamilies) {
        if (family_name(f) == name) return f;
    }
    throw InvalidArgument("unknown family: " + std::string(name));
}

std::span<const Family> all_families() noexcept
{
    return kFamilies;
}

std::uint64_t cell_seed(std::uint64_t seed, double theta, double theta_prime) noexcept
{
    return mix_seed(mix_seed(seed ^ double_bits(theta)) ^ double_bits(theta_prime));
}

std::vector<SimSummary> sweep_curve(Family family, std::span<const double> grid,
                                    const ScenarioSpec& base, const SolverConfig& cfg)
{
    if (grid.empty()) throw InvalidArgument("sweep: empty grid");
    std::vector<SimSummary> out;
    out.reserve(grid.size());
    for (double theta : grid) {
        FamilyPoint point = family_means(family, theta);
        ScenarioSpec s = base;
        s.theta1 = point.means;
        s.theta2.clear();
        s.redraw_count = point.redraw_count;
        s.redraw_upper = point.redraw_upper;
        s.seed = cell_seed(base.seed, theta, theta);
        s.histogram_index = std::min(base.histogram_index, point.means.size() - 1);
        out.push_back(run_scenario(s, cfg));
    }
    return out;
}

std::vector<std::vector<SimSummary>> sweep_heatmap(Family family1, Family family2,
                                                   std::span<const double> grid1,
                                                   std::span<const double> grid2,
                                                   const ScenarioSpec& base,
                                                   const SolverConfig& cfg)
{
    if (grid1.empty() || grid2.empty()) throw InvalidArgument("heatmap: empty grid");
    if (family1 == Family::uniform_five || family2 == Family::uniform_five) {
        throw InvalidArgument("heatmap: the uniform-five family has random means");
    }
    if (family_means(family1, 1.0).means.size() != family_means(family2, 1.0).means.size()) {
        throw InvalidArgument("heatmap: families have different numbers of hypotheses");
    }
    std::vector<std::vector<SimSummary>> out(grid1.size());
    for (std::size_t a = 0; a < grid1.size(); ++a) {
        out[a].reserve(grid2.size());
        for (double theta_prime : grid2) {
            ScenarioSpec s = base;
            s.theta1 = family_means(family1, grid1[a]).means;
            s.theta2 = family_means(family2, theta_prime).means;
            s.redraw_count = 0;
            s.seed = cell_seed(base.seed, grid1[a], theta_prime);
            s.histogram_index = std::min(base.histogram_index, s.theta1.size() - 1);
            out[a].push_back(run_scenario(s, cfg));
        }
    }
    return out;
}

FwerReport fwer_check(const ScenarioSpec& spec, const SolverConfig& cfg)
{
    spec.validate();
    // Redrawn means are U[0, upper] and therefore null only when upper == 0.
    const auto has_null = [&](const MeanVector& t) {
        if (spec.redraw_count > 0 && spec.redraw_upper <= 0.0) return true;
        return std::any_of(t.begin() + static_cast<std::ptrdiff_t>(spec.redraw_count), t.end(),
                           [](double v) { return v <= 0.0; });
    };
    if (!has_null(spec.theta1) && !has_null(spec.trial2_means())) {
        throw InvalidArgument("fwer_check: scenario has no true null hypothesis");
    }
    const SimSummary s = run_scenario(spec, cfg);
    FwerReport r;
    if (s.weighted) {
        r.weighted_trial1 = s.weighted->fwer1;
        r.weighted_trial2 = s.weighted->fwer2;
    }
    if (s.unweighted) {
        r.unweighted_trial1 = s.unweighted->fwer1;
        r.unweighted_trial2 = s.unweighted->fwer2;
    }
    return r;
}

}  // namespace repower
