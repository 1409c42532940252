#include "repower/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "repower/error.hpp"
#include "repower/gauss.hpp"

namespace repower {

void AlternativeSet::validate(std::size_t m) const
{
    if (indices.size() != means.size()) {
        throw InvalidArgument("alternative set: indices and means differ in length");
    }
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= m) {
            throw InvalidArgument("alternative set: index " + std::to_string(indices[k]) +
                                  " out of range for m = " + std::to_string(m));
        }
        if (k > 0 && indices[k] <= indices[k - 1]) {
            throw InvalidArgument("alternative set: indices must be strictly increasing");
        }
        if (!std::isfinite(means[k])) throw InvalidArgument("alternative set: non-finite mean");
    }
}

AlternativeSet AlternativeSet::positive_part(std::span<const double> theta)
{
    AlternativeSet alt;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (theta[i] > 0.0) {
            alt.indices.push_back(i);
            alt.means.push_back(theta[i]);
        }
    }
    return alt;
}

double rejection_threshold(double w, double alpha)
{
    if (w <= 0.0) return std::numeric_limits<double>::infinity();
    const double tail = std::clamp(w * alpha, kMinTailProbability, kMaxTailProbability);
    return gauss::inv_ccdf(tail);
}

double marginal_power(double theta, double w, double alpha)
{
    if (w <= 0.0) return 0.0;
    return gauss::ccdf(rejection_threshold(w, alpha) - theta);
}

double log_nonrejection(const AlternativeSet& alt, std::span<const double> w, double alpha)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < alt.size(); ++k) {
        const double wk = w[alt.indices[k]];
        if (wk <= 0.0) continue;  // factor is exactly 1
        sum += gauss::log_cdf(rejection_threshold(wk, alpha) - alt.means[k]);
    }
    return sum;
}

double disjunctive_power(const AlternativeSet& alt, std::span<const double> w, double alpha)
{
    if (alt.empty()) throw InvalidArgument("disjunctive power of an empty alternative set");
    return -std::expm1(log_nonrejection(alt, w, alpha));
}

double disjunctive_power(const AlternativeSet& alt, const WeightVector& w, double alpha)
{
    if (w.size() <= (alt.empty() ? 0 : alt.indices.back())) {
        throw InvalidArgument("weight vector shorter than the alternative set requires");
    }
    return disjunctive_power(alt, w.values(), alpha);
}

std::vector<double> disjunctive_power_gradient(const AlternativeSet& alt,
                                               std::span<const double> w, double alpha)
{
    std::vector<double> grad(w.size(), 0.0);
    const double log_p = log_nonrejection(alt, w, alpha);
    for (std::size_t k = 0; k < alt.size(); ++k) {
        const std::size_t j = alt.indices[k];
        if (w[j] <= 0.0) {
            grad[j] = std::numeric_limits<double>::infinity();
            continue;
        }
        const double t = rejection_threshold(w[j], alpha);
        const double x = t - alt.means[k];
        // prod_{i != j} cdf(.) = exp(log_p - log cdf(x)); the density ratio
        // pdf(x)/pdf(t) is exp(theta * t - theta^2 / 2).
        const double log_rest = log_p - gauss::log_cdf(x);
        const double log_ratio = alt.means[k] * t - 0.5 * alt.means[k] * alt.means[k];
        grad[j] = alpha * std::exp(log_rest + log_ratio);
    }
    return grad;
}

}  // namespace repower
