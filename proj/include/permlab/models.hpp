#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permlab/permutation.hpp"
#include "permlab/rng.hpp"

namespace permlab {

/// Player scores Z_1..Z_n, each strictly inside (0, 1).
struct ScoreVector {
    std::vector<double> scores;

    std::size_t size() const noexcept { return scores.size(); }
};

/// Draw-count rule phi(i) >= 1 for the phi-draw model.
class PhiRule {
public:
    enum class Default { One, Identity, Constant };

    static PhiRule one() { return PhiRule{}; }
    static PhiRule identity() {
        PhiRule r;
        r.fallback_ = Default::Identity;
        return r;
    }
    /// Explicit (i, phi(i)) entries; indices beyond the table follow `fallback`
    /// (`constant` is used only with Default::Constant).
    static PhiRule table(std::map<std::uint64_t, std::uint64_t> entries, Default fallback,
                         std::uint64_t constant = 1);

    std::uint64_t operator()(std::uint64_t i) const;

    const std::map<std::uint64_t, std::uint64_t>& entries() const noexcept { return table_; }
    Default fallback() const noexcept { return fallback_; }
    std::uint64_t constant() const noexcept { return constant_; }

private:
    std::map<std::uint64_t, std::uint64_t> table_;
    Default fallback_ = Default::One;
    std::uint64_t constant_ = 1;
};

/// Finite-state Markov chain over draw counts, started in state 1.
struct MarkovChainSpec {
    std::vector<std::uint64_t> states;
    /// Row-major |states| x |states| transition matrix.
    std::vector<double> transitions;

    /// Throws ConfigError unless states are distinct positive integers that
    /// include 1 and every row is a probability vector (sum within 1e-12).
    void validate() const;

    std::size_t start_index() const;

    /// phi(1..n): state 1 followed by n - 1 transitions.
    std::vector<std::uint64_t> walk(std::size_t n, Rng& rng) const;
};

enum class ModelKind { Uniform, Unfair, InverseUnfair, PhiDraw, MarkovDraw };

std::string_view to_string(ModelKind kind);
/// Accepts "uniform", "unfair", "inverse-unfair", "phi", "markov".
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
    ModelKind kind = ModelKind::InverseUnfair;
    PhiRule phi;
    MarkovChainSpec chain;

    static ModelSpec uniform() { return {ModelKind::Uniform, {}, {}}; }
    static ModelSpec unfair() { return {ModelKind::Unfair, {}, {}}; }
    static ModelSpec inverse_unfair() { return {ModelKind::InverseUnfair, {}, {}}; }
    static ModelSpec phi_draw(PhiRule rule) { return {ModelKind::PhiDraw, std::move(rule), {}}; }
    static ModelSpec markov_draw(MarkovChainSpec c) { return {ModelKind::MarkovDraw, {}, std::move(c)}; }

    void validate() const;
};

/// Maximum of k independent uniform(0,1) variates, drawn in O(1) as
/// exp(ln U / k). k == 1 returns U itself.
double max_of_k_uniforms(std::uint64_t k, Rng& rng);

/// Draw counts phi(1..n) implied by the model (the Markov chain is walked here).
std::vector<std::uint64_t> draw_counts(const ModelSpec& spec, std::size_t n, Rng& rng);

/// Z_i = max of phi(i) uniforms. Uniform uses phi = 1, Unfair and
/// InverseUnfair use phi(i) = i.
ScoreVector sample_scores(const ModelSpec& spec, std::size_t n, Rng& rng);

/// rho(i) = rank of Z_i among all scores (1 = smallest). Throws TieDetected if
/// two scores are equal.
Permutation ranks(const ScoreVector& z);

/// Ranks with ties broken by player index; for sampler output.
Permutation ranks_tiebreak(std::span<const double> keys);

Permutation sample_inverse_unfair(std::size_t n, Rng& rng);
Permutation sample_unfair(std::size_t n, Rng& rng);
/// Fisher-Yates shuffle driven by Rng::below.
Permutation sample_uniform(std::size_t n, Rng& rng);

/// Samples from any model. PhiDraw and MarkovDraw return the rank sequence,
/// like InverseUnfair.
Permutation sample(const ModelSpec& spec, std::size_t n, Rng& rng);

}  // namespace permlab
