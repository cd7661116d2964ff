#include "permlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "permlab/error.hpp"

namespace permlab {

PhiRule PhiRule::table(std::map<std::uint64_t, std::uint64_t> entries, Default fallback, std::uint64_t constant) {
    for (const auto& [i, k] : entries) {
        if (i < 1) throw ConfigError("phi table index must be >= 1");
        if (k < 1) throw ConfigError("phi(" + std::to_string(i) + ") must be >= 1");
    }
    if (fallback == Default::Constant && constant < 1) throw ConfigError("phi default constant must be >= 1");
    PhiRule r;
    r.table_ = std::move(entries);
    r.fallback_ = fallback;
    r.constant_ = constant;
    return r;
}

std::uint64_t PhiRule::operator()(std::uint64_t i) const {
    if (auto it = table_.find(i); it != table_.end()) return it->second;
    switch (fallback_) {
        case Default::One: return 1;
        case Default::Identity: return i;
        case Default::Constant: return constant_;
    }
    return 1;
}

void MarkovChainSpec::validate() const {
    const std::size_t s = states.size();
    if (s == 0) throw ConfigError("markov chain needs at least one state");
    if (transitions.size() != s * s)
        throw ConfigError("transition matrix must have " + std::to_string(s * s) + " entries, got " +
                          std::to_string(transitions.size()));
    std::unordered_set<std::uint64_t> seen;
    for (auto st : states) {
        if (st < 1) throw ConfigError("markov states must be positive draw counts");
        if (!seen.insert(st).second) throw ConfigError("duplicate markov state " + std::to_string(st));
    }
    if (!seen.contains(1)) throw ConfigError("markov chain must contain the start state 1");
    for (std::size_t r = 0; r < s; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < s; ++c) {
            const double p = transitions[r * s + c];
            if (!(p >= 0.0)) throw ConfigError("transition probabilities must be >= 0");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw ConfigError("row " + std::to_string(r) + " of the transition matrix sums to " + std::to_string(sum));
    }
}

std::size_t MarkovChainSpec::start_index() const {
    auto it = std::find(states.begin(), states.end(), std::uint64_t{1});
    if (it == states.end()) throw ConfigError("markov chain must contain the start state 1");
    return static_cast<std::size_t>(it - states.begin());
}

std::vector<std::uint64_t> MarkovChainSpec::walk(std::size_t n, Rng& rng) const {
    const std::size_t s = states.size();
    std::vector<std::uint64_t> phi;
    phi.reserve(n);
    std::size_t current = start_index();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double u = rng.uniform();
            double acc = 0.0;
            std::size_t next = s;
            for (std::size_t c = 0; c < s; ++c) {
                acc += transitions[current * s + c];
                if (u < acc) {
                    next = c;
                    break;
                }
            }
            if (next == s) {
                // rounding left u above the accumulated row sum: take the last positive entry
                for (std::size_t c = s; c-- > 0;)
                    if (transitions[current * s + c] > 0.0) {
                        next = c;
                        break;
                    }
            }
            current = next;
        }
        phi.push_back(states[current]);
    }
    return phi;
}

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Uniform: return "uniform";
        case ModelKind::Unfair: return "unfair";
        case ModelKind::InverseUnfair: return "inverse-unfair";
        case ModelKind::PhiDraw: return "phi";
        case ModelKind::MarkovDraw: return "markov";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "uniform") return ModelKind::Uniform;
    if (name == "unfair") return ModelKind::Unfair;
    if (name == "inverse-unfair" || name == "inverse_unfair") return ModelKind::InverseUnfair;
    if (name == "phi" || name == "phi-draw") return ModelKind::PhiDraw;
    if (name == "markov" || name == "markov-draw") return ModelKind::MarkovDraw;
    throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
    if (kind == ModelKind::MarkovDraw) chain.validate();
}

double max_of_k_uniforms(std::uint64_t k, Rng& rng) {
    if (k == 0) throw InvalidArgument("max_of_k_uniforms: k must be >= 1");
    const double u = rng.uniform();
    if (k == 1) return u;
    const double z = std::exp(std::log(u) / static_cast<double>(k));
    return z < 1.0 ? z : std::nextafter(1.0, 0.0);
}

std::vector<std::uint64_t> draw_counts(const ModelSpec& spec, std::size_t n, Rng& rng) {
    std::vector<std::uint64_t> phi(n);
    switch (spec.kind) {
        case ModelKind::Uniform: std::fill(phi.begin(), phi.end(), 1); break;
        case ModelKind::Unfair:
        case ModelKind::InverseUnfair: std::iota(phi.begin(), phi.end(), std::uint64_t{1}); break;
        case ModelKind::PhiDraw:
            for (std::size_t i = 0; i < n; ++i) phi[i] = spec.phi(i + 1);
            break;
        case ModelKind::MarkovDraw: phi = spec.chain.walk(n, rng); break;
    }
    return phi;
}

namespace {

// ln Z_i = ln(U) / phi(i); ordering by this key is ordering by Z_i, with full
// relative precision even when Z_i is within 1e-12 of 1.
std::vector<double> log_score_keys(std::span<const std::uint64_t> phi, Rng& rng) {
    std::vector<double> keys(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] == 0) throw InvalidArgument("draw count must be >= 1");
        keys[i] = std::log(rng.uniform()) / static_cast<double>(phi[i]);
    }
    return keys;
}

std::vector<std::uint32_t> order_by_key(std::span<const double> keys) {
    std::vector<std::uint32_t> order(keys.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
    });
    return order;
}

}  // namespace

ScoreVector sample_scores(const ModelSpec& spec, std::size_t n, Rng& rng) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    spec.validate();
    const auto phi = draw_counts(spec, n, rng);
    ScoreVector z;
    z.scores.reserve(n);
    for (auto k : phi) z.scores.push_back(max_of_k_uniforms(k, rng));
    return z;
}

Permutation ranks(const ScoreVector& z) {
    if (z.scores.empty()) throw InvalidArgument("ranks: empty score vector");
    const auto order = order_by_key(z.scores);
    std::vector<Permutation::value_type> rho(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && z.scores[order[r]] == z.scores[order[r - 1]])
            throw TieDetected("scores of players " + std::to_string(order[r - 1] + 1) + " and " +
                              std::to_string(order[r] + 1) + " are equal");
        rho[order[r]] = static_cast<Permutation::value_type>(r + 1);
    }
    return adopt_trusted(std::move(rho));
}

Permutation ranks_tiebreak(std::span<const double> keys) {
    const auto order = order_by_key(keys);
    std::vector<Permutation::value_type> rho(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rho[order[r]] = static_cast<Permutation::value_type>(r + 1);
    return adopt_trusted(std::move(rho));
}

Permutation sample_inverse_unfair(std::size_t n, Rng& rng) { return sample(ModelSpec::inverse_unfair(), n, rng); }

Permutation sample_unfair(std::size_t n, Rng& rng) { return sample_inverse_unfair(n, rng).inverse(); }

Permutation sample_uniform(std::size_t n, Rng& rng) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    std::vector<Permutation::value_type> e(n);
    std::iota(e.begin(), e.end(), Permutation::value_type{1});
    for (std::size_t k = n; k > 1; --k) std::swap(e[k - 1], e[rng.below(k)]);
    return adopt_trusted(std::move(e));
}

Permutation sample(const ModelSpec& spec, std::size_t n, Rng& rng) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    switch (spec.kind) {
        case ModelKind::Uniform: return sample_uniform(n, rng);
        case ModelKind::Unfair: return sample_unfair(n, rng);
        default: break;
    }
    spec.validate();
    const auto phi = draw_counts(spec, n, rng);
    return ranks_tiebreak(log_score_keys(phi, rng));
}

}  // namespace permlab
