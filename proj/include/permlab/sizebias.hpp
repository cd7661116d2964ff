#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "permlab/models.hpp"
#include "permlab/montecarlo.hpp"
#include "permlab/rng.hpp"

namespace permlab {

/// Walker/Vose alias table: O(k) setup, O(1) draws.
class AliasTable {
public:
    explicit AliasTable(std::span<const double> weights);

    std::size_t sample(Rng& rng) const;
    std::size_t size() const noexcept { return prob_.size(); }
    /// Normalized probability of outcome k.
    double probability(std::size_t k) const { return normalized_[k]; }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
    std::vector<double> normalized_;
};

struct IndexPair {
    std::uint32_t i = 0;  ///< 1-based, i < j
    std::uint32_t j = 0;

    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// P(I = (i, j)) = (i / (i + j)) / sum_{k<l} k / (k + l) over pairs i < j.
class PairIndexDistribution {
public:
    explicit PairIndexDistribution(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::span<const IndexPair> pairs() const noexcept { return pairs_; }
    double probability(std::size_t k) const { return table_.probability(k); }
    /// sum_{k<l} k / (k + l), i.e. E[W].
    double normalizer() const noexcept { return normalizer_; }
    IndexPair sample(Rng& rng) const { return pairs_[table_.sample(rng)]; }

private:
    std::size_t n_;
    std::vector<IndexPair> pairs_;
    double normalizer_ = 0.0;
    AliasTable table_;
};

inline PairIndexDistribution index_distribution(std::size_t n) { return PairIndexDistribution(n); }

/// (Z_i*, Z_j*) distributed as independent (max of i uniforms, max of j
/// uniforms) conditioned on Z_i* > Z_j*, by rejection. Requires 1 <= i < j.
std::pair<double, double> resample_conditional_pair(std::uint64_t i, std::uint64_t j, Rng& rng,
                                                    std::uint64_t* attempts = nullptr);

struct CouplingDraw {
    ScoreVector z;
    std::uint64_t w = 0;
    IndexPair index_pair;
    std::uint64_t w_s = 0;
    bool resampled = false;
};

enum class Recount {
    Full,        ///< recount sum_{k<l} 1(Z'_k > Z'_l) on the modified scores, O(n log n)
    Incremental  ///< add the four-sum difference W^{ij} - W, O(n)
};

/// W^{ij} - W for replacing (Z_i, Z_j) by (zi_star, zj_star), from the sums
/// over positions touching i or j plus 1 - 1(Z_i > Z_j).
std::int64_t coupling_increment(std::span<const double> z, IndexPair pair, double zi_star, double zj_star);

/// One draw of (W, W^s): inverse-unfair scores Z, W = sum_{i<j} 1(Z_i > Z_j),
/// I from `index`, and (Z_i, Z_j) resampled conditionally when Z_i < Z_j.
CouplingDraw couple(const PairIndexDistribution& index, Rng& rng, Recount recount = Recount::Full);
CouplingDraw couple(std::size_t n, Rng& rng, Recount recount = Recount::Full);

/// W^I - W for an already drawn score vector; the coupling step of `couple`.
std::int64_t complete_coupling(const PairIndexDistribution& index, std::span<const double> z, std::uint64_t w,
                               Rng& rng, Recount recount, IndexPair* chosen = nullptr, bool* resampled = nullptr);

struct TestFunction {
    enum class Kind { Identity, Square, IndicatorAtLeast };
    Kind kind = Kind::Identity;
    double threshold = 0.0;  ///< for IndicatorAtLeast: f(w) = 1(w >= threshold)

    double operator()(double w) const {
        switch (kind) {
            case Kind::Identity: return w;
            case Kind::Square: return w * w;
            case Kind::IndicatorAtLeast: return w >= threshold ? 1.0 : 0.0;
        }
        return w;
    }
};

struct IdentityCheck {
    double lhs = 0.0;        ///< E[W f(W)]
    double rhs = 0.0;        ///< E[W] E[f(W^s)]
    double pooled_se = 0.0;  ///< standard error of lhs - rhs
    double lhs_se = 0.0;
    double rhs_se = 0.0;
};

/// lhs from `reps` plain draws (Rng(seed, r, 0)); E[f(W^s)] from `reps`
/// coupled draws (Rng(seed, r, 1)). Requires reps >= 100.
IdentityCheck verify_size_bias_identity(std::size_t n, const TestFunction& f, std::size_t reps, std::uint64_t seed,
                                        const RunOptions& options = {});

struct VarConditionalEstimate {
    double value = 0.0;  ///< clamped at 0
    double raw = 0.0;    ///< before clamping
    bool clamped = false;
};

/// Var(E[W^I - W | Z]) by paired replicates: for each of `outer_reps` score
/// vectors, `inner_pairs` independent completions D_1..D_K give an unbiased
/// estimate of E[D | Z]^2 from the off-diagonal products; (E D)^2 is
/// estimated from products across distinct outer draws. Outer draw r uses
/// Rng(seed, r, 0), its completions Rng(seed, r, c + 1).
VarConditionalEstimate estimate_var_conditional(std::size_t n, std::size_t outer_reps, std::size_t inner_pairs,
                                                std::uint64_t seed, const RunOptions& options = {},
                                                Recount recount = Recount::Full);

struct SteinBoundReport {
    std::size_t n = 0;
    double mu = 0.0;
    double sigma2 = 0.0;
    double var_cond = 0.0;
    double second_moment = 0.0;  ///< E[(W^s - W)^2]
    double bound = 0.0;
    bool var_cond_clamped = false;
    std::size_t reps = 0;
    std::size_t pair_reps = 0;
    std::uint64_t seed = 0;
};

/// (mu / sigma^2) sqrt(2/pi) sqrt(var_cond) + (mu / sigma^3) E[(W^s - W)^2],
/// every ingredient estimated from the same outer/inner draws as
/// estimate_var_conditional.
SteinBoundReport stein_bound(std::size_t n, std::size_t outer_reps, std::size_t inner_pairs, std::uint64_t seed,
                             const RunOptions& options = {}, Recount recount = Recount::Full);

}  // namespace permlab
