#include "repower/cli/case_study.hpp"

#include <cstdlib>
#include <fstream>

#include "repower/cli/csv.hpp"
#include "repower/error.hpp"
#include "repower/gauss.hpp"

#ifndef REPOWER_DATA_DIR
#define REPOWER_DATA_DIR "."
#endif

namespace repower::cli {
namespace {

// Half of the 3-dp rounding unit.
constexpr double kPrintedZero = 0.00025;

double parse_weight(const std::string& field)
{
    const auto slash = field.find('/');
    if (slash == std::string::npos) return parse_double(field);
    return parse_double(field.substr(0, slash)) / parse_double(field.substr(slash + 1));
}

}  // namespace

std::filesystem::path default_data_dir()
{
    if (const char* env = std::getenv("REPOWER_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    const std::filesystem::path built = REPOWER_DATA_DIR;
    std::error_code ec;
    if (std::filesystem::exists(built / "case_study.csv", ec)) return built;
    // Installed layout: <prefix>/bin/repower next to <prefix>/share/repower.
    const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const auto installed = exe.parent_path().parent_path() / "share" / "repower";
        if (std::filesystem::exists(installed / "case_study.csv", ec)) return installed;
    }
    return built;
}

std::filesystem::path default_case_study_file()
{
    return default_data_dir() / "case_study.csv";
}

std::vector<CaseStudyRow> load_case_study(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw Error("cannot open case-study data file " + file.string());
    const CsvTable t = read_csv(in);
    const std::size_t c_name = t.column("analysis");
    const std::size_t c_kind = t.column("kind");
    const std::size_t c_m = t.column("m");
    const std::size_t c_alpha = t.column("alpha");
    const std::size_t c_means = t.column("trial1_means");
    const std::size_t c_orig = t.column("original_adjusted_p");
    const std::size_t c_w = t.column("published_weights");
    const std::size_t c_new = t.column("published_new_p");

    std::vector<CaseStudyRow> rows;
    for (const auto& f : t.rows) {
        CaseStudyRow r;
        r.name = f[c_name];
        r.hypothetical = f[c_kind] == "hypothetical";
        r.m = static_cast<std::size_t>(parse_double(f[c_m]));
        r.alpha = parse_double(f[c_alpha]);
        r.trial1_means = parse_list(f[c_means], ';');
        r.original_adjusted_p = parse_list(f[c_orig], ';');
        for (const auto& w : split(f[c_w], ';')) r.published_weights.push_back(parse_weight(w));
        r.published_new_p = parse_list(f[c_new], ';');
        for (const auto* v : {&r.trial1_means, &r.original_adjusted_p, &r.published_weights,
                              &r.published_new_p}) {
            if (v->size() != r.m) throw Error("case-study row '" + r.name + "' has a bad vector length");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<double> reconstruct_trial2_p(const std::vector<double>& original_adjusted_p)
{
    const double m = static_cast<double>(original_adjusted_p.size());
    std::vector<double> p;
    p.reserve(original_adjusted_p.size());
    for (double a : original_adjusted_p) p.push_back((a > 0.0 ? a : kPrintedZero) / m);
    return p;
}

CaseStudyResult analyse(const CaseStudyRow& row, const SolverConfig& cfg)
{
    const ProblemSpec spec(row.m, row.alpha);
    std::vector<double> z2;
    for (double p : reconstruct_trial2_p(row.original_adjusted_p)) z2.push_back(gauss::inv_ccdf(p));
    return {.row = row,
            .weighted = run_replication(row.trial1_means, z2, spec, cfg),
            .unweighted = run_replication_fixed(row.trial1_means, z2,
                                                WeightVector::uniform(row.m), spec)};
}

}  // namespace repower::cli
