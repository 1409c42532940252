#pragma once

// The bundled two-trial case study: trial-1 statistics and the published
// trial-2 adjusted p-values for six analyses, plus one hypothetical variant.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "repower/replication.hpp"

namespace repower::cli {

struct CaseStudyRow {
    std::string name;
    bool hypothetical = false;
    std::size_t m = 0;
    double alpha = 0.05;
    std::vector<double> trial1_means;
    /// Published unweighted adjusted p-values of trial 2 (3 dp).
    std::vector<double> original_adjusted_p;
    std::vector<double> published_weights;
    std::vector<double> published_new_p;
};

/// REPOWER_DATA_DIR from the environment if set, else the source-tree data
/// directory baked in at build time, else <prefix>/share/repower relative to
/// the running executable.
std::filesystem::path default_data_dir();
std::filesystem::path default_case_study_file();

/// Throws Error when the file is missing or malformed.
std::vector<CaseStudyRow> load_case_study(const std::filesystem::path& file);

/// Raw trial-2 p-values implied by 3-dp unweighted adjusted values: p = adj/m,
/// where a printed 0 stands for the midpoint 0.00025 of its rounding interval.
std::vector<double> reconstruct_trial2_p(const std::vector<double>& original_adjusted_p);

struct CaseStudyResult {
    CaseStudyRow row;
    ReplicationResult weighted;
    ReplicationResult unweighted;
};

CaseStudyResult analyse(const CaseStudyRow& row, const SolverConfig& cfg = {});

}  // namespace repower::cli
