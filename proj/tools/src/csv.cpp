#include "repower/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "repower/error.hpp"

namespace repower::cli {
namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<double> estimate_value(const std::optional<Estimate>& e)
{
    if (!e) return std::nullopt;
    return e->value;
}

}  // namespace

std::string format_double(double x)
{
    if (std::isnan(x)) return "NA";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_optional(const std::optional<double>& x)
{
    return x ? format_double(*x) : "NA";
}

std::optional<double> parse_optional(std::string_view field)
{
    field = trim(field);
    if (field == "NA" || field.empty()) return std::nullopt;
    return parse_double(field);
}

double parse_double(std::string_view field)
{
    field = trim(field);
    if (field == "inf") return HUGE_VAL;
    if (field == "-inf") return -HUGE_VAL;
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw InvalidArgument("not a number: '" + std::string(field) + "'");
    }
    return x;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.emplace_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<double> parse_list(std::string_view text, char sep)
{
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const auto& f : split(text, sep)) out.push_back(parse_double(f));
    return out;
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw InvalidArgument("CSV has no column '" + std::string(name) + "'");
}

CsvTable read_csv(std::istream& in)
{
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        const auto s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto fields = split(s, ',');
        if (!have_header) {
            t.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw InvalidArgument("CSV row has " + std::to_string(fields.size()) +
                                  " fields, header has " + std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(fields));
    }
    if (!have_header) throw InvalidArgument("CSV input is empty");
    return t;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::vector<SimRow> sim_rows(const SimSummary& s, const MeanVector& means,
                             std::optional<double> theta)
{
    std::vector<SimRow> rows;
    const auto arm_row = [&](const ArmSummary& a, const char* name) {
        SimRow r;
        r.theta = theta;
        r.means = means;
        r.method = name;
        r.dpos = estimate_value(a.dpos);
        if (a.dpos) r.dpos_se = a.dpos->se;
        for (const auto& e : a.mpos) r.mpos.push_back(e.value);
        r.fwer1 = estimate_value(a.fwer1);
        r.fwer2 = estimate_value(a.fwer2);
        rows.push_back(std::move(r));
    };
    if (s.weighted) arm_row(*s.weighted, "weighted");
    if (s.unweighted) arm_row(*s.unweighted, "unweighted");
    if (s.weighted && s.unweighted) {
        const SimRow& w = rows[0];
        const SimRow& u = rows[1];
        SimRow d;
        d.theta = theta;
        d.means = means;
        d.method = "difference";
        const auto diff = [](const std::optional<double>& a, const std::optional<double>& b) {
            return a && b ? std::optional<double>(*a - *b) : std::nullopt;
        };
        d.dpos = diff(w.dpos, u.dpos);
        if (d.dpos) d.dpos_se = s.dpos_gain_se();
        for (std::size_t i = 0; i < w.mpos.size(); ++i) d.mpos.push_back(w.mpos[i] - u.mpos[i]);
        d.fwer1 = diff(w.fwer1, u.fwer1);
        d.fwer2 = diff(w.fwer2, u.fwer2);
        rows.push_back(std::move(d));
    }
    return rows;
}

std::vector<std::string> sim_header(std::size_t m, bool with_theta)
{
    std::vector<std::string> h;
    if (with_theta) h.emplace_back("theta");
    for (std::size_t i = 1; i <= m; ++i) h.push_back("theta_" + std::to_string(i));
    h.insert(h.end(), {"method", "dpos", "dpos_se"});
    for (std::size_t i = 1; i <= m; ++i) h.push_back("mpos_" + std::to_string(i));
    h.insert(h.end(), {"fwer1", "fwer2"});
    return h;
}

void write_sim_rows(std::ostream& out, const std::vector<SimRow>& rows, bool with_theta)
{
    if (rows.empty()) return;
    write_row(out, sim_header(rows.front().means.size(), with_theta));
    for (const auto& r : rows) {
        std::vector<std::string> f;
        if (with_theta) f.push_back(format_optional(r.theta));
        for (double x : r.means) f.push_back(format_double(x));
        f.push_back(r.method);
        f.push_back(format_optional(r.dpos));
        f.push_back(format_optional(r.dpos_se));
        for (double x : r.mpos) f.push_back(format_double(x));
        f.push_back(format_optional(r.fwer1));
        f.push_back(format_optional(r.fwer2));
        write_row(out, f);
    }
}

std::vector<SimRow> read_sim_rows(std::istream& in)
{
    const CsvTable t = read_csv(in);
    const bool with_theta = !t.header.empty() && t.header.front() == "theta";
    const std::size_t offset = with_theta ? 1 : 0;
    if (t.header.size() < offset + 5 || (t.header.size() - offset - 5) % 2 != 0) {
        throw InvalidArgument("not a simulation table");
    }
    const std::size_t m = (t.header.size() - offset - 5) / 2;
    if (t.header != sim_header(m, with_theta)) throw InvalidArgument("not a simulation table");
    std::vector<SimRow> rows;
    for (const auto& f : t.rows) {
        SimRow r;
        if (with_theta) r.theta = parse_optional(f[0]);
        for (std::size_t i = 0; i < m; ++i) r.means.push_back(parse_double(f[offset + i]));
        std::size_t k = offset + m;
        r.method = f[k++];
        r.dpos = parse_optional(f[k++]);
        r.dpos_se = parse_optional(f[k++]);
        for (std::size_t i = 0; i < m; ++i) r.mpos.push_back(parse_double(f[k++]));
        r.fwer1 = parse_optional(f[k++]);
        r.fwer2 = parse_optional(f[k++]);
        rows.push_back(std::move(r));
    }
    return rows;
}

HeatmapRow heatmap_row(const SimSummary& s, double theta, double theta_prime)
{
    HeatmapRow r;
    r.theta = theta;
    r.theta_prime = theta_prime;
    if (!s.weighted || !s.unweighted) throw InvalidArgument("heatmap needs both arms");
    const double g = s.dpos_gain();
    if (!std::isnan(g)) r.diff_dpos = g;
    for (std::size_t i = 0; i < s.m; ++i) {
        r.diff_mpos.push_back(s.weighted->mpos[i].value - s.unweighted->mpos[i].value);
    }
    return r;
}

void write_heatmap_rows(std::ostream& out, const std::vector<HeatmapRow>& rows)
{
    if (rows.empty()) return;
    std::vector<std::string> h{"theta", "theta_prime", "diff_dpos"};
    for (std::size_t i = 1; i <= rows.front().diff_mpos.size(); ++i) {
        h.push_back("diff_mpos_" + std::to_string(i));
    }
    write_row(out, h);
    for (const auto& r : rows) {
        std::vector<std::string> f{format_double(r.theta), format_double(r.theta_prime),
                                   format_optional(r.diff_dpos)};
        for (double x : r.diff_mpos) f.push_back(format_double(x));
        write_row(out, f);
    }
}

std::vector<HeatmapRow> read_heatmap_rows(std::istream& in)
{
    const CsvTable t = read_csv(in);
    if (t.header.size() < 3 || t.header[0] != "theta" || t.header[1] != "theta_prime" ||
        t.header[2] != "diff_dpos") {
        throw InvalidArgument("not a heatmap table");
    }
    std::vector<HeatmapRow> rows;
    for (const auto& f : t.rows) {
        HeatmapRow r;
        r.theta = parse_double(f[0]);
        r.theta_prime = parse_double(f[1]);
        r.diff_dpos = parse_optional(f[2]);
        for (std::size_t i = 3; i < f.size(); ++i) r.diff_mpos.push_back(parse_double(f[i]));
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_weight_rows(std::ostream& out, const std::vector<WeightRow>& rows)
{
    write_row(out, {"index", "weight", "in_alt"});
    for (const auto& r : rows) {
        write_row(out, {std::to_string(r.index), format_double(r.weight), r.in_alt ? "1" : "0"});
    }
}

std::vector<WeightRow> read_weight_rows(std::istream& in)
{
    const CsvTable t = read_csv(in);
    if (t.header != std::vector<std::string>{"index", "weight", "in_alt"}) {
        throw InvalidArgument("not a weights table");
    }
    std::vector<WeightRow> rows;
    for (const auto& f : t.rows) {
        rows.push_back({.index = static_cast<std::size_t>(parse_double(f[0])),
                        .weight = parse_double(f[1]),
                        .in_alt = f[2] == "1"});
    }
    return rows;
}

}  // namespace repower::cli
