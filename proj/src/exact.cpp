#include "permlab/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "permlab/error.hpp"

namespace permlab {

namespace {

void check_distinct_positive(std::span<const std::uint64_t> indices) {
    if (indices.empty()) throw InvalidArgument("ordered tuple needs at least one index");
    std::unordered_set<std::uint64_t> seen;
    for (auto i : indices) {
        if (i < 1) throw InvalidArgument("indices must be >= 1");
        if (!seen.insert(i).second) throw InvalidArgument("duplicate index " + std::to_string(i));
    }
}

std::vector<std::uint64_t> positions_by_rank(const Permutation& sigma) {
    const auto inv = sigma.inverse();
    return {inv.entries().begin(), inv.entries().end()};
}

void check_enumerable(std::size_t n, ModelKind model, std::size_t limit) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    if (limit > kMaxEnumerationLimit)
        throw EnumerationLimit("enumeration limit cannot exceed " + std::to_string(kMaxEnumerationLimit));
    if (n > limit)
        throw EnumerationLimit("n = " + std::to_string(n) + " exceeds the enumeration limit " + std::to_string(limit));
    if (model != ModelKind::Uniform && model != ModelKind::Unfair && model != ModelKind::InverseUnfair)
        throw InvalidArgument("exact laws exist only for uniform, unfair and inverse-unfair models");
}

template <typename Visit>
void for_each_permutation(std::size_t n, Visit&& visit) {
    std::vector<Permutation::value_type> e(n);
    std::iota(e.begin(), e.end(), Permutation::value_type{1});
    do {
        visit(adopt_trusted(e));
    } while (std::next_permutation(e.begin(), e.end()));
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

}  // namespace

double IntegerLaw::mean() const {
    CompensatedSum s;
    for (std::size_t k = 0; k < support.size(); ++k) s += probs[k] * static_cast<double>(support[k]);
    return s.value();
}

double IntegerLaw::variance() const {
    const double mu = mean();
    CompensatedSum s;
    for (std::size_t k = 0; k < support.size(); ++k) {
        const double d = static_cast<double>(support[k]) - mu;
        s += probs[k] * d * d;
    }
    return s.value();
}

double prob_pair_less(std::uint64_t i, std::uint64_t j) {
    if (i < 1 || j < 1) throw InvalidArgument("indices must be >= 1");
    if (i == j) throw InvalidArgument("prob_pair_less: indices must differ");
    return static_cast<double>(j) / static_cast<double>(i + j);
}

Rational prob_pair_less_exact(std::uint64_t i, std::uint64_t j) {
    prob_pair_less(i, j);
    return Rational(j, i + j);
}

double prob_ordered_tuple(std::span<const std::uint64_t> indices) {
    check_distinct_positive(indices);
    double prefix = 0.0;
    if (indices.size() <= 30) {
        double prob = 1.0;
        for (auto i : indices) {
            prefix += static_cast<double>(i);
            prob *= static_cast<double>(i) / prefix;
        }
        return prob;
    }
    CompensatedSum log_prob;
    for (auto i : indices) {
        prefix += static_cast<double>(i);
        log_prob += std::log(static_cast<double>(i)) - std::log(prefix);
    }
    return std::exp(log_prob.value());
}

Rational prob_ordered_tuple_exact(std::span<const std::uint64_t> indices) {
    check_distinct_positive(indices);
    boost::multiprecision::cpp_int num = 1, den = 1, prefix = 0;
    for (auto i : indices) {
        prefix += i;
        num *= i;
        den *= prefix;
    }
    return Rational(num, den);
}

double pmf_inverse_unfair(const Permutation& sigma) { return prob_ordered_tuple(positions_by_rank(sigma)); }

Rational pmf_inverse_unfair_exact(const Permutation& sigma) {
    return prob_ordered_tuple_exact(positions_by_rank(sigma));
}

double pmf_unfair(const Permutation& a) {
    const std::size_t n = a.size();
    if (n <= 30) {
        double prefix = 0.0, denom = 1.0;
        for (auto v : a.entries()) {
            prefix += v;
            denom *= prefix;
        }
        return factorial(n) / denom;
    }
    CompensatedSum log_denom;
    double prefix = 0.0;
    for (auto v : a.entries()) {
        prefix += v;
        log_denom += std::log(prefix);
    }
    return std::exp(std::lgamma(static_cast<double>(n) + 1.0) - log_denom.value());
}

Rational pmf_unfair_exact(const Permutation& a) {
    boost::multiprecision::cpp_int num = 1, den = 1, prefix = 0;
    for (std::size_t k = 2; k <= a.size(); ++k) num *= k;
    for (auto v : a.entries()) {
        prefix += v;
        den *= prefix;
    }
    return Rational(num, den);
}

PermutationLaw enumerate_law(std::size_t n, ModelKind model, std::size_t limit) {
    check_enumerable(n, model, limit);
    PermutationLaw law;
    const double uniform = 1.0 / factorial(n);
    for_each_permutation(n, [&](Permutation p) {
        double prob = uniform;
        if (model == ModelKind::Unfair)
            prob = pmf_unfair(p);
        else if (model == ModelKind::InverseUnfair)
            prob = pmf_inverse_unfair(p);
        law.support.push_back(std::move(p));
        law.probs.push_back(prob);
    });
    return law;
}

std::vector<std::pair<Permutation, Rational>> enumerate_law_exact(std::size_t n, ModelKind model, std::size_t limit) {
    check_enumerable(n, model, limit);
    std::vector<std::pair<Permutation, Rational>> law;
    boost::multiprecision::cpp_int nfact = 1;
    for (std::size_t k = 2; k <= n; ++k) nfact *= k;
    const Rational uniform(1, nfact);
    for_each_permutation(n, [&](Permutation p) {
        Rational prob = uniform;
        if (model == ModelKind::Unfair)
            prob = pmf_unfair_exact(p);
        else if (model == ModelKind::InverseUnfair)
            prob = pmf_inverse_unfair_exact(p);
        law.emplace_back(std::move(p), std::move(prob));
    });
    return law;
}

IntegerLaw statistic_law(std::size_t n, ModelKind model, const StatisticKind& kind, std::size_t limit) {
    const auto law = enumerate_law(n, model, limit);
    std::map<std::int64_t, CompensatedSum> mass;
    for (std::size_t k = 0; k < law.support.size(); ++k)
        mass[static_cast<std::int64_t>(evaluate(kind, law.support[k]))] += law.probs[k];
    IntegerLaw out;
    for (const auto& [value, p] : mass) {
        out.support.push_back(value);
        out.probs.push_back(p.value());
    }
    return out;
}

double tv_distance(const PermutationLaw& a, const PermutationLaw& b) {
    const std::size_t na = a.support.empty() ? 0 : a.support.front().size();
    const std::size_t nb = b.support.empty() ? 0 : b.support.front().size();
    if (na != nb) throw InvalidArgument("tv_distance: laws live on different symmetric groups");
    std::map<Permutation, double> diff;
    for (std::size_t k = 0; k < a.support.size(); ++k) {
        if (a.support[k].size() != na) throw InvalidArgument("tv_distance: mixed permutation sizes");
        diff[a.support[k]] += a.probs[k];
    }
    for (std::size_t k = 0; k < b.support.size(); ++k) {
        if (b.support[k].size() != nb) throw InvalidArgument("tv_distance: mixed permutation sizes");
        diff[b.support[k]] -= b.probs[k];
    }
    CompensatedSum s;
    for (const auto& [_, d] : diff) s += std::abs(d);
    return 0.5 * s.value();
}

double tv_distance(const IntegerLaw& a, const IntegerLaw& b) {
    std::map<std::int64_t, double> diff;
    for (std::size_t k = 0; k < a.support.size(); ++k) diff[a.support[k]] += a.probs[k];
    for (std::size_t k = 0; k < b.support.size(); ++k) diff[b.support[k]] -= b.probs[k];
    CompensatedSum s;
    for (const auto& [_, d] : diff) s += std::abs(d);
    return 0.5 * s.value();
}

TvEventBound tv_event_lower_bound(std::uint64_t n) {
    if (n < 3) throw InvalidArgument("tv_event_lower_bound: n must be >= 3");
    TvEventBound b;
    auto L = static_cast<std::uint64_t>(std::floor(std::log(static_cast<double>(n))));
    // guard the floor against log rounding at exact powers of e (never integers, but be exact anyway)
    while (std::exp(static_cast<double>(L + 1)) <= static_cast<double>(n)) ++L;
    b.floor_log_n = L;
    const double l = static_cast<double>(L);
    b.p_pi = 1.0 / (l + 1.0);
    b.p_rho = static_cast<double>(n) / (static_cast<double>(n) + l * (l + 1.0) / 2.0);
    b.diff = b.p_rho - b.p_pi;
    return b;
}

ArgExtremes argmax_argmin_pmf(std::size_t n, ModelKind model, std::size_t limit) {
    const auto law = enumerate_law(n, model, limit);
    std::size_t best = 0, worst = 0;
    for (std::size_t k = 1; k < law.probs.size(); ++k) {
        if (law.probs[k] > law.probs[best]) best = k;
        if (law.probs[k] < law.probs[worst]) worst = k;
    }
    return {law.support[best], law.support[worst], law.probs[best], law.probs[worst]};
}

double mean_m_descents(std::uint64_t n, std::uint64_t m) {
    if (m < 1 || m >= n) throw InvalidArgument("mean_m_descents: need 1 <= m < n");
    const double nd = static_cast<double>(n), md = static_cast<double>(m);
    CompensatedSum correction;
    for (std::uint64_t k = 1; k <= m; ++k) {
        const double kd = static_cast<double>(k);
        for (std::uint64_t i = 1; i <= n - k; ++i) correction += kd / (2.0 * (2.0 * static_cast<double>(i) + kd));
    }
    return nd * md / 2.0 - md * (md + 1.0) / 4.0 - correction.value();
}

double var_descents(std::uint64_t n) {
    if (n < 2) throw InvalidArgument("var_descents: n must be >= 2");
    CompensatedSum s;
    for (std::uint64_t i = 1; i <= n - 1; ++i) {
        const double x = static_cast<double>(i);
        s += x * (x + 1.0) / ((2.0 * x + 1.0) * (2.0 * x + 1.0));
    }
    // the covariance terms pair U_i with U_{i+1}, so i stops at n - 2
    for (std::uint64_t i = 1; i + 2 <= n; ++i) {
        const double x = static_cast<double>(i);
        s += -(2.0 / 3.0) * x * (x + 2.0) / ((2.0 * x + 3.0) * (2.0 * x + 1.0));
    }
    return s.value();
}

namespace {

// P(Z_a > Z_b) for scores that are maxima of w_a, w_b uniforms.
double prob_greater(double wa, double wb) { return wa / (wa + wb); }

// P(Z_x < Z_y < Z_z) with weights
double prob_chain(double wx, double wy, double wz) { return (wx / wx) * (wy / (wx + wy)) * (wz / (wx + wy + wz)); }

// E[1(Z_a > Z_b) 1(Z_c > Z_d)] when the two pairs share exactly one position.
// Positions are encoded 0, 1, 2 over three distinct scores with weights w.
double joint_descent(const std::array<double, 3>& w, int a, int b, int c, int d) {
    static constexpr std::array<std::array<int, 3>, 6> orders{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    double total = 0.0;
    for (const auto& o : orders) {
        // rank of each slot in ascending order o
        std::array<int, 3> rank{};
        for (int r = 0; r < 3; ++r) rank[o[r]] = r;
        if (rank[a] > rank[b] && rank[c] > rank[d]) total += prob_chain(w[o[0]], w[o[1]], w[o[2]]);
    }
    return total;
}

}  // namespace

Moments m_descent_moments(std::span<const double> weights, std::uint64_t m) {
    const std::uint64_t n = weights.size();
    if (n < 2) throw InvalidArgument("m_descent_moments: n must be >= 2");
    if (m < 1) throw InvalidArgument("m_descent_moments: m must be >= 1");
    const std::uint64_t span = std::min<std::uint64_t>(m, n - 1);
    CompensatedSum mean, var;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = i + 1; j <= std::min(n - 1, i + span); ++j) {
            const double p = prob_greater(weights[i], weights[j]);
            mean += p;
            var += p * (1.0 - p);
        }
    // Covariances: unordered pairs of window pairs sharing one position x.
    // Enumerate each such couple once by its shared position and the two
    // partner positions y < z (both within distance `span` of x).
    for (std::uint64_t x = 0; x < n; ++x) {
        const std::uint64_t lo = x >= span ? x - span : 0;
        const std::uint64_t hi = std::min(n - 1, x + span);
        for (std::uint64_t y = lo; y <= hi; ++y) {
            if (y == x) continue;
            for (std::uint64_t z = y + 1; z <= hi; ++z) {
                if (z == x) continue;
                const std::array<double, 3> w{weights[x], weights[y], weights[z]};
                // pair (x, y) oriented by position: descent means earlier score > later score
                const int a1 = x < y ? 0 : 1, b1 = x < y ? 1 : 0;
                const int a2 = x < z ? 0 : 2, b2 = x < z ? 2 : 0;
                const double joint = joint_descent(w, a1, b1, a2, b2);
                const double p1 = prob_greater(w[a1], w[b1]);
                const double p2 = prob_greater(w[a2], w[b2]);
                var += 2.0 * (joint - p1 * p2);
            }
        }
    }
    return {mean.value(), var.value()};
}

Moments m_descent_moments_inverse_unfair(std::uint64_t n, std::uint64_t m) {
    std::vector<double> w(n);
    std::iota(w.begin(), w.end(), 1.0);
    return m_descent_moments(w, m);
}

Moments m_descent_moments_uniform(std::uint64_t n, std::uint64_t m) {
    std::vector<double> w(n, 1.0);
    return m_descent_moments(w, m);
}

double mean_inversions_exact(std::uint64_t n) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    CompensatedSum s;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const double x = static_cast<double>(i);
        for (std::uint64_t j = i + 1; j <= n; ++j) s += x / (x + static_cast<double>(j));
    }
    return s.value();
}

InversionConstants inversion_constants() {
    using std::numbers::ln2;
    using std::numbers::pi;
    const double ln3 = std::log(3.0);
    return {(1.0 - ln2) / 2.0,
            1.0 / 3.0 - pi * pi / 18.0 + 2.0 * ln2 / 3.0 - ln3 / 2.0 + 2.0 * ln2 * ln2 / 3.0};
}

Moments inversion_moments_uniform(std::uint64_t n) {
    const double x = static_cast<double>(n);
    return {x * (x - 1.0) / 4.0, x * (x - 1.0) * (2.0 * x + 5.0) / 72.0};
}

}  // namespace permlab
