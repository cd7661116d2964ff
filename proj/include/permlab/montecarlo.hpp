#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "permlab/models.hpp"
#include "permlab/normal.hpp"
#include "permlab/parallel.hpp"
#include "permlab/statistics.hpp"

namespace permlab {

struct RunOptions {
    unsigned threads = 0;  ///< 0: hardware concurrency
    /// Upper bound on n * reps for one call.
    double max_work = 5e10;
};

/// Monte Carlo estimate of a statistic's mean and variance.
struct EstimateReport {
    StatisticKind statistic;
    ModelSpec model;
    std::size_t n = 0;
    std::size_t reps = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased sample variance
    double std_error = 0.0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  ///< seconds
};

/// T(sample(model, n, Rng(seed, r))) for r = 0..reps-1, in replica order.
std::vector<double> sample_statistic(const StatisticKind& kind, const ModelSpec& model, std::size_t n,
                                     std::size_t reps, std::uint64_t seed, const RunOptions& options = {});

EstimateReport estimate(const StatisticKind& kind, const ModelSpec& model, std::size_t n, std::size_t reps,
                        std::uint64_t seed, const RunOptions& options = {});

enum class Centering { ExactMean, ClosedForm, AsymptoticFormula };

std::string_view to_string(Centering mode);
/// "exact-mean", "closed-form", "asymptotic".
Centering parse_centering(std::string_view text);

struct Normalization {
    double center = 0.0;
    double scale = 1.0;
};

/// Center and scale for (T - center) / scale.
///
/// Inversions (inverse-unfair or unfair): ExactMean centers at
/// sum_{i<j} i/(i+j), AsymptoticFormula at ((1 - ln 2)/2) n^2; both scale by
/// sqrt(var_coeff) n^{3/2}. Uniform inversions use the exact n(n-1)/4 and
/// n(n-1)(2n+5)/72 for ExactMean and ClosedForm.
///
/// m-descents (inverse-unfair, uniform, phi-draw): ClosedForm and ExactMean
/// use exact mean and variance (the m = 1 inverse-unfair case through
/// mean_m_descents / var_descents); AsymptoticFormula uses
/// nm/2 - m(m+1)/4 - m(m+1) ln(n)/8 and (6nm + 4m^3 + 3m^2 - m)/72.
///
/// Throws InvalidArgument for any other combination.
Normalization normalization_for(const StatisticKind& kind, const ModelSpec& model, std::size_t n, Centering mode);

struct StandardizedSample {
    std::vector<double> values;
    double center = 0.0;
    double scale = 1.0;
    Centering centering_mode = Centering::ExactMean;
};

StandardizedSample standardized_sample(const StatisticKind& kind, const ModelSpec& model, std::size_t n,
                                       std::size_t reps, std::uint64_t seed, Centering mode,
                                       const RunOptions& options = {});

double ks_to_normal(const StandardizedSample& s);
double wasserstein1_to_normal(const StandardizedSample& s);

/// E[D_n(rho_n)] / E[D_n(pi_n)] from closed forms.
double moment_ratio_descents(std::uint64_t n);

struct RatioEstimate {
    double ratio = 0.0;
    double se = 0.0;  ///< delta-method standard error
    double moment_rho = 0.0;
    double moment_pi = 0.0;
};

/// E[T(rho_n)^k] / E[T(pi_n)^k] from `reps` inverse-unfair and `reps`
/// uniform permutations (replica r: Rng(seed, r, 0) and Rng(seed, r, 1)).
RatioEstimate moment_ratio_mc(const StatisticKind& kind, std::size_t n, std::size_t reps, std::uint64_t seed,
                              unsigned k, const RunOptions& options = {});

}  // namespace permlab
