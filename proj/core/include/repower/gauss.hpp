#pragma once

// Standard normal kernel. All probability arithmetic in the library goes
// through these functions so the tail behaviour is controlled in one place.

namespace repower::gauss {

/// Density of N(0,1).
double pdf(double z) noexcept;

/// P(Z <= z), evaluated through erfc so the lower tail keeps full relative
/// precision.
double cdf(double z) noexcept;

/// P(Z > z) without forming 1 - cdf(z).
double ccdf(double z) noexcept;

/// log P(Z <= z). Uses log1p(-ccdf) on the upper half line and an
/// asymptotic expansion once cdf itself would leave the normal range.
double log_cdf(double z) noexcept;

/// log P(Z > z).
double log_ccdf(double z) noexcept;

/// pdf(z) / cdf(z), stable for large negative z.
double inverse_mills(double z) noexcept;

/// Quantile of the lower tail: cdf(inv_cdf(p)) == p. Throws DomainError
/// unless 0 < p < 1.
double inv_cdf(double p);

/// Upper-tail quantile: ccdf(inv_ccdf(p)) == p to ~1e-15 relative error.
/// Throws DomainError unless 0 < p < 1.
double inv_ccdf(double p);

}  // namespace repower::gauss
