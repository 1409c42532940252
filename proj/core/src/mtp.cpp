#include "repower/mtp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "repower/error.hpp"
#include "repower/gauss.hpp"

namespace repower {
namespace {

void check_p_values(std::span<const double> p)
{
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidArgument("p-value outside [0,1]: " + std::to_string(v));
        }
    }
}

void check_length(std::size_t got, std::size_t want, const char* what)
{
    if (got != want) {
        throw InvalidArgument(std::string(what) + ": expected length " + std::to_string(want) +
                              ", got " + std::to_string(got));
    }
}

}  // namespace

ProblemSpec::ProblemSpec(std::size_t m, double alpha) : m_(m), alpha_(alpha)
{
    if (m == 0) throw InvalidArgument("number of hypotheses must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("alpha must lie in (0,1), got " + std::to_string(alpha));
    }
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w))
{
    if (w_.empty()) throw InvalidArgument("weight vector is empty");
    for (double v : w_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidArgument("weights must be finite and nonnegative, got " +
                                  std::to_string(v));
        }
    }
    const double sum = std::accumulate(w_.begin(), w_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw InvalidArgument("weights must sum to 1, got " + std::to_string(sum));
    }
}

WeightVector WeightVector::uniform(std::size_t m)
{
    if (m == 0) throw InvalidArgument("weight vector is empty");
    return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

WeightVector WeightVector::corner(std::size_t m, std::size_t k)
{
    if (k >= m) throw InvalidArgument("corner index out of range");
    std::vector<double> w(m, 0.0);
    w[k] = 1.0;
    return WeightVector(std::move(w));
}

PValueVector z_to_p(std::span<const double> z)
{
    PValueVector p(z.size());
    std::transform(z.begin(), z.end(), p.begin(), [](double v) { return gauss::ccdf(v); });
    return p;
}

RejectionSet bonferroni(std::span<const double> p, const ProblemSpec& spec)
{
    check_length(p.size(), spec.m(), "bonferroni");
    check_p_values(p);
    const double level = spec.bonferroni_level();
    RejectionSet out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] < level;
    return out;
}

RejectionSet weighted_bonferroni(std::span<const double> p, const WeightVector& w,
                                 const ProblemSpec& spec)
{
    check_length(p.size(), spec.m(), "weighted_bonferroni");
    check_length(w.size(), spec.m(), "weighted_bonferroni weights");
    check_p_values(p);
    RejectionSet out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = w[i] > 0.0 && p[i] < w[i] * spec.alpha();
    return out;
}

PValueVector adjusted_p(std::span<const double> p, const WeightVector& w)
{
    check_length(w.size(), p.size(), "adjusted_p weights");
    check_p_values(p);
    PValueVector out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = w[i] > 0.0 ? std::min(1.0, p[i] / w[i]) : 1.0;
    }
    return out;
}

PValueVector bonferroni_adjusted_p(std::span<const double> p)
{
    check_p_values(p);
    const double m = static_cast<double>(p.size());
    PValueVector out(p.size());
    std::transform(p.begin(), p.end(), out.begin(),
                   [m](double v) { return std::min(1.0, m * v); });
    return out;
}

RejectionSet both_rejected(const RejectionSet& a, const RejectionSet& b)
{
    check_length(b.size(), a.size(), "both_rejected");
    RejectionSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
}

}  // namespace repower
