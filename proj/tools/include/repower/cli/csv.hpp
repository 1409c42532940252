#pragma once

// Minimal CSV support for the command-line tool: number formatting, a reader
// for the files the tool writes, and row types that round-trip through them.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repower/simlab.hpp"

namespace repower::cli {

/// 17 significant digits, enough to recover the double exactly.
std::string format_double(double x);
/// Empty optionals are written as "NA".
std::string format_optional(const std::optional<double>& x);
std::optional<double> parse_optional(std::string_view field);
/// Strict parse of a finite or infinite double; throws InvalidArgument.
double parse_double(std::string_view field);

/// Splits on `sep` and trims surrounding blanks.
std::vector<std::string> split(std::string_view text, char sep);
/// Comma-separated reals such as "3.93,3.72".
std::vector<double> parse_list(std::string_view text, char sep = ',');

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws InvalidArgument when the column is absent.
    std::size_t column(std::string_view name) const;
};

/// Reads comma-separated lines. Blank lines and lines starting with '#' are
/// skipped; the first remaining line is the header. Fields may not contain
/// commas.
CsvTable read_csv(std::istream& in);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// One line of the simulate / sweep schema.
struct SimRow {
    std::optional<double> theta;  // sweep only
    std::vector<double> means;
    std::string method;           // weighted, unweighted or difference
    std::optional<double> dpos;
    std::optional<double> dpos_se;
    std::vector<double> mpos;
    std::optional<double> fwer1;
    std::optional<double> fwer2;

    friend bool operator==(const SimRow&, const SimRow&) = default;
};

/// Rows for the arms present in s, followed by a difference row when both
/// arms ran. The difference row's SE is the paired one (dpos_gain_se).
std::vector<SimRow> sim_rows(const SimSummary& s, const MeanVector& means,
                             std::optional<double> theta = std::nullopt);
std::vector<std::string> sim_header(std::size_t m, bool with_theta);
void write_sim_rows(std::ostream& out, const std::vector<SimRow>& rows, bool with_theta);
/// Inverse of write_sim_rows (header included).
std::vector<SimRow> read_sim_rows(std::istream& in);

struct HeatmapRow {
    double theta = 0.0;
    double theta_prime = 0.0;
    std::optional<double> diff_dpos;
    std::vector<double> diff_mpos;

    friend bool operator==(const HeatmapRow&, const HeatmapRow&) = default;
};

HeatmapRow heatmap_row(const SimSummary& s, double theta, double theta_prime);
void write_heatmap_rows(std::ostream& out, const std::vector<HeatmapRow>& rows);
std::vector<HeatmapRow> read_heatmap_rows(std::istream& in);

struct WeightRow {
    std::size_t index = 0;  // 1-based
    double weight = 0.0;
    bool in_alt = false;

    friend bool operator==(const WeightRow&, const WeightRow&) = default;
};

void write_weight_rows(std::ostream& out, const std::vector<WeightRow>& rows);
std::vector<WeightRow> read_weight_rows(std::istream& in);

}  // namespace repower::cli
