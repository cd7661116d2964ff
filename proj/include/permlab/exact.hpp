#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permlab/models.hpp"
#include "permlab/permutation.hpp"
#include "permlab/statistics.hpp"

namespace permlab {

using Rational = boost::multiprecision::cpp_rational;

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Finite probability mass function over distinct outcomes.
template <typename Outcome>
struct ExactDistribution {
    std::vector<Outcome> support;
    std::vector<double> probs;

    double total() const {
        CompensatedSum s;
        for (double p : probs) s += p;
        return s.value();
    }
};

using PermutationLaw = ExactDistribution<Permutation>;
/// Law of an integer statistic; support sorted ascending.
struct IntegerLaw : ExactDistribution<std::int64_t> {
    double mean() const;
    double variance() const;
};

// --- closed-form probabilities for the inverse-unfair / unfair models ---

/// P(rho(i) < rho(j)) = j / (i + j).
double prob_pair_less(std::uint64_t i, std::uint64_t j);
Rational prob_pair_less_exact(std::uint64_t i, std::uint64_t j);

/// P(rho(i_1) < ... < rho(i_k)) = prod_l i_l / (i_1 + ... + i_l). The indices
/// double as draw-count weights, so the same product serves the phi-draw
/// model with weights phi(i). Products of more than 30 factors are formed in
/// log space.
double prob_ordered_tuple(std::span<const std::uint64_t> indices);
Rational prob_ordered_tuple_exact(std::span<const std::uint64_t> indices);

/// P(rho_n = sigma).
double pmf_inverse_unfair(const Permutation& sigma);
Rational pmf_inverse_unfair_exact(const Permutation& sigma);

/// P(gamma_n = a) = n! / prod_i (a_1 + ... + a_i).
double pmf_unfair(const Permutation& a);
Rational pmf_unfair_exact(const Permutation& a);

// --- exhaustive enumeration over S_n ---

inline constexpr std::size_t kDefaultEnumerationLimit = 8;
inline constexpr std::size_t kMaxEnumerationLimit = 10;

/// Full PMF over S_n in lexicographic order for Uniform, Unfair or
/// InverseUnfair. Throws EnumerationLimit when n > limit (limit <= 10).
PermutationLaw enumerate_law(std::size_t n, ModelKind model, std::size_t limit = kDefaultEnumerationLimit);

/// Same, with exact rational probabilities.
std::vector<std::pair<Permutation, Rational>> enumerate_law_exact(std::size_t n, ModelKind model,
                                                                  std::size_t limit = kDefaultEnumerationLimit);

/// Pushforward of enumerate_law through a statistic.
IntegerLaw statistic_law(std::size_t n, ModelKind model, const StatisticKind& kind,
                         std::size_t limit = kDefaultEnumerationLimit);

/// Half L1 distance. Permutation laws must be over the same S_n.
double tv_distance(const PermutationLaw& a, const PermutationLaw& b);
double tv_distance(const IntegerLaw& a, const IntegerLaw& b);

struct TvEventBound {
    double p_rho = 0.0;  ///< P(rho_n in A_n)
    double p_pi = 0.0;   ///< P(pi_n in A_n), pi_n uniform
    double diff = 0.0;   ///< p_rho - p_pi, a lower bound on the TV distance
    std::uint64_t floor_log_n = 0;
};

/// A_n = {tau : tau(l) < tau(n) for l = 1..L}, L = floor(ln n), n >= 3.
TvEventBound tv_event_lower_bound(std::uint64_t n);

struct ArgExtremes {
    Permutation argmax;
    Permutation argmin;
    double max_prob = 0.0;
    double min_prob = 0.0;
};

/// Lexicographically first outcomes of largest and smallest probability.
ArgExtremes argmax_argmin_pmf(std::size_t n, ModelKind model, std::size_t limit = kDefaultEnumerationLimit);

// --- moments ---

/// E[D_{n,m}] for the inverse-unfair model:
/// nm/2 - m(m+1)/4 - sum_{k=1..m} sum_{i=1..n-k} k / (2(2i+k)). Needs 1 <= m < n.
double mean_m_descents(std::uint64_t n, std::uint64_t m);

/// Var(D_{n,1}) for the inverse-unfair model:
/// sum_{i=1..n-1} i(i+1)/(2i+1)^2 - (2/3) sum_{i=1..n-2} i(i+2)/((2i+3)(2i+1)).
double var_descents(std::uint64_t n);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact mean and variance of the m-descent count when position i carries an
/// independent score that is the max of weights[i] uniforms (weights all 1:
/// uniform model; weights i: inverse-unfair). Indicators on disjoint position
/// pairs are independent, so the variance is a sum over pairs sharing an
/// index, each evaluated through 3-point ordering probabilities. O(n m^2).
Moments m_descent_moments(std::span<const double> weights, std::uint64_t m);

/// m_descent_moments with weights 1..n.
Moments m_descent_moments_inverse_unfair(std::uint64_t n, std::uint64_t m);

/// Uniform-model m-descents: mean sum_k (n-k)/2, exact variance.
Moments m_descent_moments_uniform(std::uint64_t n, std::uint64_t m);

/// sum_{i<j} i / (i + j), O(n^2) with compensated summation.
double mean_inversions_exact(std::uint64_t n);

struct InversionConstants {
    double mean_coeff = 0.0;  ///< (1 - ln 2) / 2
    double var_coeff = 0.0;   ///< 1/3 - pi^2/18 + 2 ln2 / 3 - ln3 / 2 + 2 ln^2 2 / 3
};

InversionConstants inversion_constants();

/// Uniform model: n(n-1)/4 and n(n-1)(2n+5)/72.
Moments inversion_moments_uniform(std::uint64_t n);

}  // namespace permlab
