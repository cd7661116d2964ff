#pragma once

#include <span>

namespace permlab {

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt 2) / 2 using Boost.Math's
/// erfc (absolute error far below 1e-10).
double normal_cdf(double x);

/// Standard normal quantile, -sqrt 2 * erfc_inv(2p) using Boost.Math's
/// rational approximations. Defined on the open interval (0, 1).
double normal_quantile(double p);

/// Two-sided Kolmogorov-Smirnov statistic of a sample against N(0, 1):
/// max_k max(k/N - Phi(x_(k)), Phi(x_(k)) - (k-1)/N).
double ks_to_normal(std::span<const double> sample);

/// Empirical Wasserstein-1 proxy against N(0, 1):
/// (1/N) sum_k |x_(k) - Phi^{-1}((k - 0.5)/N)|.
double wasserstein1_to_normal(std::span<const double> sample);

}  // namespace permlab
