#include "repower/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "repower/cli/case_study.hpp"
#include "repower/cli/csv.hpp"
#include "repower/error.hpp"
#include "repower/philox.hpp"
#include "repower/replication.hpp"
#include "repower/simlab.hpp"
#include "repower/solver.hpp"

namespace repower::cli {
namespace {

std::string fixed(double x, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string join_fixed(std::span<const double> v, int digits)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += fixed(v[i], digits);
    }
    return s;
}

std::string trim_copy(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Options shared by all commands. Vectors are kept as text and parsed after
// CLI11 so that malformed numbers raise InvalidArgument like other input errors.
struct Options {
    std::string out;
    std::string means, means2, alt, weights, z1, z2;
    double alpha = 0.05;
    std::size_t m = 0;
    std::string rule = "rejected";
    std::string method = "auto";
    double grid_step = 0.005;

    std::size_t reps = 10000;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string arms = "both";
    std::size_t redraw_count = 0;
    double redraw_upper = 0.0;
    bool fixed_redraw = false;

    std::string family, family1, family2;
    double from = 0.0, to = 6.0, step = 0.1;
    std::optional<double> from2, to2, step2;

    std::size_t instances = 100;
    std::optional<double> upper;

    std::string data;
    bool hypothetical = false;
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidArgument("cannot write " + path);
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

ProblemSpec problem(const Options& o, std::size_t n)
{
    if (o.m != 0 && o.m != n) {
        throw InvalidArgument("--m is " + std::to_string(o.m) + " but " + std::to_string(n) +
                              " values were given");
    }
    return ProblemSpec(n, o.alpha);
}

AlternativeSet alt_from_flag(const std::string& text, const MeanVector& means)
{
    AlternativeSet alt;
    for (double x : parse_list(text)) {
        if (x < 1 || x > static_cast<double>(means.size()) || x != std::floor(x)) {
            throw InvalidArgument("--alt index out of range: " + format_double(x));
        }
        alt.indices.push_back(static_cast<std::size_t>(x) - 1);
    }
    std::sort(alt.indices.begin(), alt.indices.end());
    if (std::adjacent_find(alt.indices.begin(), alt.indices.end()) != alt.indices.end()) {
        throw InvalidArgument("--alt has repeated indices");
    }
    for (auto i : alt.indices) alt.means.push_back(means[i]);
    return alt;
}

AltRule parse_rule(const std::string& s)
{
    if (s == "rejected") return AltRule::rejected_set;
    if (s == "positive") return AltRule::positive_estimate;
    throw InvalidArgument("--rule must be 'rejected' or 'positive'");
}

SolverConfig solver_config(const Options& o)
{
    SolverConfig cfg;
    cfg.grid_step = o.grid_step;
    cfg.validate();
    return cfg;
}

ScenarioSpec scenario(const Options& o)
{
    ScenarioSpec s;
    s.alpha = o.alpha;
    s.reps = o.reps;
    s.seed = o.seed;
    s.threads = o.threads;
    s.redraw_count = o.redraw_count;
    s.redraw_upper = o.redraw_upper;
    s.redraw_per_rep = !o.fixed_redraw;
    if (o.arms == "weighted") s.run_unweighted = false;
    else if (o.arms == "unweighted") s.run_weighted = false;
    else if (o.arms != "both") throw InvalidArgument("--arms must be both, weighted or unweighted");
    if (o.alpha <= 0.0 || o.alpha >= 1.0) throw InvalidArgument("--alpha must lie in (0,1)");
    return s;
}

void print_report(const SolveReport& r, const AlternativeSet& alt, std::ostream& err)
{
    err << "weights:  " << join_fixed(r.weights.values(), 2) << '\n';
    if (alt.empty()) err << "note:     empty alternative set, uniform weights\n";
    if (r.achieved_power) err << "power:    " << format_double(*r.achieved_power) << '\n';
    if (r.method == SolveMethod::fixed_point && !alt.empty()) {
        err << "c:        " << format_double(r.lagrange_c) << '\n';
    }
    err << "method:   " << to_string(r.method) << '\n';
    err << "converged: " << (r.converged ? "yes" : "no") << '\n';
}

int cmd_weights(const Options& o, std::ostream& out, std::ostream& err)
{
    const MeanVector means = parse_list(o.means);
    if (means.empty()) throw InvalidArgument("--means is empty");
    const ProblemSpec spec = problem(o, means.size());
    const SolverConfig cfg = solver_config(o);
    const AlternativeSet alt =
        o.alt.empty() ? estimate_alt_set(means, spec, parse_rule(o.rule)) : alt_from_flag(o.alt, means);

    int code = kExitOk;
    std::optional<SolveReport> solved;
    try {
        if (o.method == "auto") solved = optimal_weights(alt, spec, cfg);
        else if (o.method == "fixed-point") solved = solve_fixed_point(alt, spec, cfg);
        else if (o.method == "grid") solved = solve_grid(alt, spec, cfg);
        else if (o.method == "multistart") solved = solve_multistart(alt, spec, cfg);
        else throw InvalidArgument("--method must be auto, fixed-point, grid or multistart");
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << " (best point reported)\n";
        solved = e.report();
        code = kExitNoConvergence;
    }
    const SolveReport& report = *solved;

    std::vector<WeightRow> rows;
    for (std::size_t i = 0; i < spec.m(); ++i) {
        const bool in = std::find(alt.indices.begin(), alt.indices.end(), i) != alt.indices.end();
        rows.push_back({.index = i + 1, .weight = report.weights[i], .in_alt = in});
    }
    Output dst(o.out, out);
    write_weight_rows(*dst, rows);
    print_report(report, alt, err);
    return code;
}

int cmd_power(const Options& o, std::ostream& out, std::ostream& err)
{
    const MeanVector means = parse_list(o.means);
    if (means.empty()) throw InvalidArgument("--means is empty");
    const ProblemSpec spec = problem(o, means.size());
    const WeightVector w =
        o.weights.empty() ? WeightVector::uniform(spec.m()) : WeightVector(parse_list(o.weights));
    if (w.size() != spec.m()) throw InvalidArgument("--weights and --means differ in length");
    const AlternativeSet alt =
        o.alt.empty() ? AlternativeSet::positive_part(means) : alt_from_flag(o.alt, means);

    std::optional<double> disj;
    if (!alt.empty()) disj = disjunctive_power(alt, w, spec.alpha());
    std::vector<std::string> header{"disjunctive_power"};
    std::vector<std::string> row{format_optional(disj)};
    for (std::size_t i = 0; i < spec.m(); ++i) {
        header.push_back("marginal_power_" + std::to_string(i + 1));
        row.push_back(format_double(marginal_power(means[i], w[i], spec.alpha())));
    }
    Output dst(o.out, out);
    write_row(*dst, header);
    write_row(*dst, row);
    err << "disjunctive power: " << (disj ? fixed(*disj, 4) : std::string("NA (no positive mean)"))
        << '\n';
    return kExitOk;
}

int cmd_replicate(const Options& o, std::ostream& out, std::ostream& err)
{
    const std::vector<double> z1 = parse_list(o.z1);
    const std::vector<double> z2 = parse_list(o.z2);
    if (z1.empty() || z1.size() != z2.size()) {
        throw InvalidArgument("--z1 and --z2 must be nonempty and of equal length");
    }
    const ProblemSpec spec = problem(o, z1.size());
    const SolverConfig cfg = solver_config(o);
    const ReplicationResult w = run_replication(z1, z2, spec, cfg);
    const ReplicationResult u = run_replication_fixed(z1, z2, WeightVector::uniform(spec.m()), spec);

    Output dst(o.out, out);
    write_row(*dst, {"index", "z1", "z2", "in_alt", "weight", "trial1_rejected",
                     "unweighted_adjusted_p", "weighted_adjusted_p", "unweighted_overall",
                     "weighted_overall"});
    for (std::size_t i = 0; i < spec.m(); ++i) {
        const bool in = std::find(w.alt_set.indices.begin(), w.alt_set.indices.end(), i) !=
                        w.alt_set.indices.end();
        write_row(*dst, {std::to_string(i + 1), format_double(z1[i]), format_double(z2[i]),
                         in ? "1" : "0", format_double(w.weights()[i]),
                         w.trial1_rejections[i] ? "1" : "0", format_double(u.trial2_adjusted_p[i]),
                         format_double(w.trial2_adjusted_p[i]), u.overall_rejections[i] ? "1" : "0",
                         w.overall_rejections[i] ? "1" : "0"});
    }
    print_report(w.solve, w.alt_set, err);
    return kExitOk;
}

void print_sim(const SimSummary& s, std::ostream& err)
{
    if (s.weighted && s.weighted->dpos) err << "dPoS weighted:   " << fixed(s.weighted->dpos->value, 4) << '\n';
    if (s.unweighted && s.unweighted->dpos) err << "dPoS unweighted: " << fixed(s.unweighted->dpos->value, 4) << '\n';
    if (!std::isnan(s.dpos_gain())) err << "dPoS gain:       " << fixed(s.dpos_gain(), 4) << '\n';
    if (!s.mean_weights.empty()) err << "mean weights:    " << join_fixed(s.mean_weights, 3) << '\n';
    if (s.solver_flags) err << "solver flags:    " << s.solver_flags << '\n';
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err)
{
    ScenarioSpec s = scenario(o);
    s.theta1 = parse_list(o.means);
    s.theta2 = parse_list(o.means2);
    if (o.m != 0 && o.m != s.theta1.size()) throw InvalidArgument("--m disagrees with --theta");
    const SimSummary sum = run_scenario(s, solver_config(o));
    Output dst(o.out, out);
    write_sim_rows(*dst, sim_rows(sum, s.theta1), false);
    print_sim(sum, err);
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err)
{
    const Family family = family_from_name(o.family);
    const std::vector<double> grid = make_grid(o.from, o.to, o.step);
    ScenarioSpec base = scenario(o);
    const auto curve = sweep_curve(family, grid, base, solver_config(o));

    std::vector<SimRow> rows;
    double best = -std::numeric_limits<double>::infinity();
    double best_at = std::nan("");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto r = sim_rows(curve[i], family_means(family, grid[i]).means, grid[i]);
        rows.insert(rows.end(), r.begin(), r.end());
        const double g = curve[i].dpos_gain();
        if (!std::isnan(g) && g > best) {
            best = g;
            best_at = grid[i];
        }
    }
    Output dst(o.out, out);
    write_sim_rows(*dst, rows, true);
    err << "family " << family_name(family) << ", " << grid.size() << " points, " << base.reps
        << " replicates each\n";
    if (!std::isnan(best_at)) err << "max dPoS gain " << fixed(best, 4) << " at theta " << format_double(best_at) << '\n';
    return kExitOk;
}

int cmd_heatmap(const Options& o, std::ostream& out, std::ostream& err)
{
    const Family f1 = family_from_name(o.family1);
    const Family f2 = family_from_name(o.family2);
    const auto g1 = make_grid(o.from, o.to, o.step);
    const auto g2 = make_grid(o.from2.value_or(o.from), o.to2.value_or(o.to), o.step2.value_or(o.step));
    ScenarioSpec base = scenario(o);
    base.run_weighted = base.run_unweighted = true;
    const auto map = sweep_heatmap(f1, f2, g1, g2, base, solver_config(o));

    std::vector<HeatmapRow> rows;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t a = 0; a < g1.size(); ++a) {
        for (std::size_t b = 0; b < g2.size(); ++b) {
            rows.push_back(heatmap_row(map[a][b], g1[a], g2[b]));
            if (rows.back().diff_dpos) {
                lo = std::min(lo, *rows.back().diff_dpos);
                hi = std::max(hi, *rows.back().diff_dpos);
            }
        }
    }
    Output dst(o.out, out);
    write_heatmap_rows(*dst, rows);
    err << family_name(f1) << " vs " << family_name(f2) << ": " << rows.size() << " cells\n";
    if (std::isfinite(lo)) err << "dPoS difference range [" << fixed(lo, 4) << ", " << fixed(hi, 4) << "]\n";
    return kExitOk;
}

int cmd_fwer(const Options& o, std::ostream& out, std::ostream& err)
{
    ScenarioSpec s = scenario(o);
    s.theta1 = parse_list(o.means);
    s.theta2 = parse_list(o.means2);
    const FwerReport f = fwer_check(s, solver_config(o));
    Output dst(o.out, out);
    write_row(*dst, {"method", "trial", "fwer", "fwer_se", "within_bound"});
    const auto line = [&](const char* method, const char* trial, const std::optional<Estimate>& e) {
        if (!e) return;
        const bool ok = e->value <= s.alpha + 3.0 * e->se;
        write_row(*dst, {method, trial, format_double(e->value), format_double(e->se), ok ? "1" : "0"});
        err << method << " trial " << trial << ": FWER " << fixed(e->value, 4) << " (SE "
            << fixed(e->se, 4) << ")" << (ok ? "" : "  above alpha + 3 SE") << '\n';
    };
    line("weighted", "1", f.weighted_trial1);
    line("weighted", "2", f.weighted_trial2);
    line("unweighted", "1", f.unweighted_trial1);
    line("unweighted", "2", f.unweighted_trial2);
    return kExitOk;
}

struct BenchStats {
    std::string method;
    double seconds = 0.0;
    std::size_t fixed_point_ge = 0;
    double max_deficit = 0.0;
    std::size_t weights_match = 0;
};

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err)
{
    if (o.m == 0) throw InvalidArgument("--m is required");
    if (o.instances == 0) throw InvalidArgument("--instances must be at least 1");
    const std::size_t m = o.m;
    const double upper = o.upper.value_or(m == 2 ? 6.0 : 3.0);
    if (!(upper > 0.0)) throw InvalidArgument("--upper must be positive");
    const ProblemSpec spec(m, o.alpha);
    const SolverConfig cfg = solver_config(o);

    using Solver = std::function<SolveReport(const AlternativeSet&)>;
    std::vector<std::pair<std::string, Solver>> methods{
        {"fixed_point", [&](const AlternativeSet& a) { return solve_fixed_point(a, spec, cfg); }}};
    if (m <= 3) methods.emplace_back("grid", [&](const AlternativeSet& a) { return solve_grid(a, spec, cfg); });
    methods.emplace_back("multistart_ascent",
                         [&](const AlternativeSet& a) { return solve_multistart(a, spec, cfg); });

    std::vector<BenchStats> stats(methods.size());
    for (std::size_t k = 0; k < methods.size(); ++k) stats[k].method = methods[k].first;
    for (std::size_t n = 0; n < o.instances; ++n) {
        StreamRng rng(o.seed, n);
        AlternativeSet alt;
        for (std::size_t i = 0; i < m; ++i) {
            alt.indices.push_back(i);
            alt.means.push_back(upper * rng.uniform());
        }
        std::vector<SolveReport> reports;
        for (std::size_t k = 0; k < methods.size(); ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            reports.push_back(methods[k].second(alt));
            stats[k].seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        const double fp = *reports[0].achieved_power;
        for (std::size_t k = 0; k < methods.size(); ++k) {
            const double other = *reports[k].achieved_power;
            if (fp >= other - 1e-9) ++stats[k].fixed_point_ge;
            stats[k].max_deficit = std::max(stats[k].max_deficit, other - fp);
            double gap = 0.0;
            for (std::size_t i = 0; i < m; ++i) gap = std::max(gap, std::abs(reports[k].weights[i] - reports[0].weights[i]));
            if (gap <= cfg.grid_step + 1e-12) ++stats[k].weights_match;
        }
    }

    Output dst(o.out, out);
    write_row(*dst, {"method", "m", "instances", "mean_seconds", "fixed_point_ge_fraction",
                     "max_power_deficit", "weights_match_fraction"});
    const double n = static_cast<double>(o.instances);
    err << "m = " << m << ", " << o.instances << " instances, means ~ U[0, " << format_double(upper) << "]\n";
    for (const auto& s : stats) {
        write_row(*dst, {s.method, std::to_string(m), std::to_string(o.instances),
                         format_double(s.seconds / n), format_double(s.fixed_point_ge / n),
                         format_double(s.max_deficit), format_double(s.weights_match / n)});
        char line[160];
        std::snprintf(line, sizeof line, "%-18s %10.3g s/instance  fixed point >= %5.1f%%  weights match %5.1f%%\n",
                      s.method.c_str(), s.seconds / n, 100.0 * s.fixed_point_ge / n, 100.0 * s.weights_match / n);
        err << line;
    }
    return kExitOk;
}

int cmd_case_study(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto file = o.data.empty() ? default_case_study_file() : std::filesystem::path(o.data);
    const auto rows = load_case_study(file);
    const SolverConfig cfg = solver_config(o);

    Output dst(o.out, out);
    write_row(*dst, {"analysis", "index", "trial1_mean", "in_alt", "weight", "original_adjusted_p",
                     "new_adjusted_p", "published_new_p", "unweighted_overall", "weighted_overall"});
    for (const auto& row : rows) {
        if (row.hypothetical != o.hypothetical) continue;
        const CaseStudyResult r = analyse(row, cfg);
        const auto& w = r.weighted;
        double worst = 0.0;
        for (std::size_t i = 0; i < row.m; ++i) {
            const bool in = std::find(w.alt_set.indices.begin(), w.alt_set.indices.end(), i) !=
                            w.alt_set.indices.end();
            write_row(*dst, {row.name, std::to_string(i + 1), format_double(row.trial1_means[i]),
                             in ? "1" : "0", format_double(w.weights()[i]),
                             format_double(r.unweighted.trial2_adjusted_p[i]),
                             format_double(w.trial2_adjusted_p[i]), format_double(row.published_new_p[i]),
                             r.unweighted.overall_rejections[i] ? "1" : "0",
                             w.overall_rejections[i] ? "1" : "0"});
            worst = std::max(worst, std::abs(w.trial2_adjusted_p[i] - row.published_new_p[i]));
        }
        err << row.name << "\n  weights    " << join_fixed(w.weights().values(), 2)
            << "\n  new adj. p " << join_fixed(w.trial2_adjusted_p, 3)
            << "\n  max deviation from published " << fixed(worst, 4) << '\n';
    }
    return kExitOk;
}

}  // namespace

std::vector<double> make_grid(double from, double to, double step)
{
    if (!std::isfinite(from) || !std::isfinite(to) || !(step > 0.0) || to < from) {
        throw InvalidArgument("invalid grid: need finite from <= to and step > 0");
    }
    const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    if (n > 100000) throw InvalidArgument("grid has too many points");
    std::vector<double> g;
    for (std::size_t i = 0; i <= n; ++i) {
        g.push_back(std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return g;
}

std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path);

    const auto given = [&](const std::string& flag) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim_copy(line.substr(0, eq));
        const std::string value = trim_copy(line.substr(eq + 1));
        const std::string flag = "--" + key;
        if (key.empty() || given(flag)) continue;
        if (value == "true") args.push_back(flag);
        else if (value != "false") {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Optimal Bonferroni weights for two-trial designs", "repower"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "Write CSV here instead of stdout");
        c->add_option("--alpha", o.alpha, "Overall one-sided level")->check(CLI::Range(0.0, 1.0));
        c->add_option("--grid-step", o.grid_step, "Lattice spacing of the grid search");
    };
    const auto add_sim = [&](CLI::App* c) {
        c->add_option("--reps", o.reps, "Replicates per scenario")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "Base random seed");
        c->add_option("--threads", o.threads, "Worker threads (0 = automatic)");
        c->add_option("--arms", o.arms, "both, weighted or unweighted");
        c->add_flag("--fixed-redraw", o.fixed_redraw, "Draw random means once per scenario");
    };

    auto* weights = app.add_subcommand("weights", "Optimal weights for given trial-1 means");
    add_common(weights);
    weights->add_option("--means", o.means, "Trial-1 means, comma separated")->required();
    weights->add_option("--m", o.m, "Number of hypotheses (checked against --means)");
    weights->add_option("--alt", o.alt, "Force the alternative set (1-based indices)");
    weights->add_option("--rule", o.rule, "Alternative-set rule: rejected or positive");
    weights->add_option("--method", o.method, "auto, fixed-point, grid or multistart");

    auto* power = app.add_subcommand("power", "Disjunctive and marginal power");
    add_common(power);
    power->add_option("--means", o.means, "Means, comma separated")->required();
    power->add_option("--weights", o.weights, "Weights (default uniform)");
    power->add_option("--m", o.m, "Number of hypotheses");
    power->add_option("--alt", o.alt, "Hypotheses in the objective (default: positive means)");

    auto* replicate = app.add_subcommand("replicate", "Two-trial analysis of observed statistics");
    add_common(replicate);
    replicate->add_option("--z1", o.z1, "Trial-1 statistics")->required();
    replicate->add_option("--z2", o.z2, "Trial-2 statistics")->required();
    replicate->add_option("--m", o.m, "Number of hypotheses");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo PoS of one scenario");
    add_common(simulate);
    add_sim(simulate);
    simulate->add_option("--theta,--means", o.means, "Trial-1 means")->required();
    simulate->add_option("--theta2,--means2", o.means2, "Trial-2 means (default: --theta)");
    simulate->add_option("--m", o.m, "Number of hypotheses");
    simulate->add_option("--redraw-count", o.redraw_count, "Replace the first k means by U[0, upper]");
    simulate->add_option("--redraw-upper", o.redraw_upper, "Upper bound of redrawn means");

    auto* sweep = app.add_subcommand("sweep", "PoS along a mean family");
    add_common(sweep);
    add_sim(sweep);
    sweep->add_option("--family", o.family, "Family name")->required();
    sweep->add_option("--from", o.from, "First theta");
    sweep->add_option("--to", o.to, "Last theta");
    sweep->add_option("--step", o.step, "Theta step");

    auto* heatmap = app.add_subcommand("heatmap", "PoS differences when trial-2 truth drifts");
    add_common(heatmap);
    add_sim(heatmap);
    heatmap->add_option("--family1", o.family1, "Trial-1 family")->required();
    heatmap->add_option("--family2", o.family2, "Trial-2 family")->required();
    heatmap->add_option("--from", o.from, "First theta");
    heatmap->add_option("--to", o.to, "Last theta");
    heatmap->add_option("--step", o.step, "Theta step");
    heatmap->add_option("--from2", o.from2, "First theta' (default --from)");
    heatmap->add_option("--to2", o.to2, "Last theta' (default --to)");
    heatmap->add_option("--step2", o.step2, "Theta' step (default --step)");

    auto* fwer = app.add_subcommand("fwer", "Familywise error rates per trial");
    add_common(fwer);
    add_sim(fwer);
    fwer->add_option("--theta,--means", o.means, "Trial-1 means")->required();
    fwer->add_option("--theta2,--means2", o.means2, "Trial-2 means (default: --theta)");
    fwer->add_option("--redraw-count", o.redraw_count, "Replace the first k means by U[0, upper]");
    fwer->add_option("--redraw-upper", o.redraw_upper, "Upper bound of redrawn means");

    auto* bench = app.add_subcommand("bench", "Compare weight solvers on random instances");
    add_common(bench);
    bench->add_option("--m", o.m, "Number of hypotheses")->required()->check(CLI::PositiveNumber);
    bench->add_option("--instances", o.instances, "Random mean vectors");
    bench->add_option("--seed", o.seed, "Random seed");
    bench->add_option("--upper", o.upper, "Means ~ U[0, upper] (default 6 for m = 2, else 3)");

    auto* case_study = app.add_subcommand("case-study", "Reanalyse the bundled case study");
    add_common(case_study);
    case_study->add_option("--data", o.data, "Case-study CSV (default: bundled file)");
    case_study->add_flag("--hypothetical", o.hypothetical, "Run the altered-first-statistic variant");

    // Defaults that differ between commands.
    sweep->preparse_callback([&](std::size_t) { o.step = 0.1; });
    heatmap->preparse_callback([&](std::size_t) { o.step = 0.25; });
    fwer->preparse_callback([&](std::size_t) { o.reps = 100000; });

    try {
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        if (weights->parsed()) return cmd_weights(o, out, err);
        if (power->parsed()) return cmd_power(o, out, err);
        if (replicate->parsed()) return cmd_replicate(o, out, err);
        if (simulate->parsed()) return cmd_simulate(o, out, err);
        if (sweep->parsed()) return cmd_sweep(o, out, err);
        if (heatmap->parsed()) return cmd_heatmap(o, out, err);
        if (fwer->parsed()) return cmd_fwer(o, out, err);
        if (bench->parsed()) return cmd_bench(o, out, err);
        if (case_study->parsed()) return cmd_case_study(o, out, err);
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace repower::cli
