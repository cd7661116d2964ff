#include "permlab/sizebias.hpp"

#include <cmath>
#include <numbers>

#include "permlab/error.hpp"
#include "permlab/exact.hpp"
#include "permlab/statistics.hpp"

namespace permlab {

AliasTable::AliasTable(std::span<const double> weights) {
    const std::size_t k = weights.size();
    if (k == 0) throw InvalidArgument("alias table needs at least one outcome");
    if (k > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("alias table too large");
    CompensatedSum total;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("alias weights must be finite and >= 0");
        total += w;
    }
    const double sum = total.value();
    if (!(sum > 0.0)) throw InvalidArgument("alias weights sum to zero");

    normalized_.resize(k);
    prob_.resize(k);
    alias_.resize(k);
    std::vector<double> scaled(k);
    std::vector<std::uint32_t> small, large;
    for (std::size_t t = 0; t < k; ++t) {
        normalized_[t] = weights[t] / sum;
        scaled[t] = normalized_[t] * static_cast<double>(k);
        (scaled[t] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(t));
    }
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (auto t : large) {
        prob_[t] = 1.0;
        alias_[t] = t;
    }
    // leftovers from rounding
    for (auto t : small) {
        prob_[t] = 1.0;
        alias_[t] = t;
    }
}

std::size_t AliasTable::sample(Rng& rng) const {
    const auto k = static_cast<std::size_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[k] ? k : alias_[k];
}

namespace {

std::vector<double> pair_weights(std::size_t n, std::vector<IndexPair>& pairs, double& normalizer) {
    if (n < 2) throw InvalidArgument("index distribution needs n >= 2");
    if (n > 1u << 16) throw ResourceLimit("index distribution over n^2/2 pairs limited to n <= 65536");
    pairs.reserve(pair_count(n));
    std::vector<double> w;
    w.reserve(pair_count(n));
    CompensatedSum total;
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = i + 1; j <= n; ++j) {
            pairs.push_back({i, j});
            const double p = static_cast<double>(i) / static_cast<double>(i + j);
            w.push_back(p);
            total += p;
        }
    normalizer = total.value();
    return w;
}

}  // namespace

PairIndexDistribution::PairIndexDistribution(std::size_t n)
    : n_(n), table_(pair_weights(n, pairs_, normalizer_)) {}

std::pair<double, double> resample_conditional_pair(std::uint64_t i, std::uint64_t j, Rng& rng,
                                                    std::uint64_t* attempts) {
    if (i < 1 || i >= j) throw InvalidArgument("resample_conditional_pair: need 1 <= i < j");
    std::uint64_t tries = 0;
    for (;;) {
        ++tries;
        const double zi = max_of_k_uniforms(i, rng);
        const double zj = max_of_k_uniforms(j, rng);
        if (zi > zj) {
            if (attempts) *attempts = tries;
            return {zi, zj};
        }
    }
}

std::int64_t coupling_increment(std::span<const double> z, IndexPair pair, double zi_star, double zj_star) {
    const std::size_t i = pair.i - 1, j = pair.j - 1, n = z.size();
    if (pair.i < 1 || pair.i >= pair.j || j >= n) throw InvalidArgument("coupling_increment: bad index pair");
    std::int64_t d = 0;
    for (std::size_t s = 0; s < i; ++s) d += (z[s] > zi_star) - (z[s] > z[i]);
    for (std::size_t s = i + 1; s < n; ++s)
        if (s != j) d += (zi_star > z[s]) - (z[i] > z[s]);
    for (std::size_t s = 0; s < j; ++s)
        if (s != i) d += (z[s] > zj_star) - (z[s] > z[j]);
    for (std::size_t s = j + 1; s < n; ++s) d += (zj_star > z[s]) - (z[j] > z[s]);
    d += 1 - (z[i] > z[j]);
    return d;
}

std::int64_t complete_coupling(const PairIndexDistribution& index, std::span<const double> z, std::uint64_t w,
                               Rng& rng, Recount recount, IndexPair* chosen, bool* resampled) {
    const IndexPair pair = index.sample(rng);
    if (chosen) *chosen = pair;
    const std::size_t i = pair.i - 1, j = pair.j - 1;
    if (z[i] > z[j]) {
        if (resampled) *resampled = false;
        return static_cast<std::int64_t>(w);
    }
    if (resampled) *resampled = true;
    const auto [zi, zj] = resample_conditional_pair(pair.i, pair.j, rng);
    if (recount == Recount::Incremental) return static_cast<std::int64_t>(w) + coupling_increment(z, pair, zi, zj);
    std::vector<double> modified(z.begin(), z.end());
    modified[i] = zi;
    modified[j] = zj;
    return static_cast<std::int64_t>(count_inversions(modified));
}

namespace {

std::vector<double> draw_scores(std::size_t n, Rng& rng) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = max_of_k_uniforms(i + 1, rng);
    return z;
}

}  // namespace

CouplingDraw couple(const PairIndexDistribution& index, Rng& rng, Recount recount) {
    CouplingDraw d;
    d.z.scores = draw_scores(index.n(), rng);
    d.w = count_inversions(d.z.scores);
    d.w_s = static_cast<std::uint64_t>(
        complete_coupling(index, d.z.scores, d.w, rng, recount, &d.index_pair, &d.resampled));
    return d;
}

CouplingDraw couple(std::size_t n, Rng& rng, Recount recount) {
    return couple(PairIndexDistribution(n), rng, recount);
}

IdentityCheck verify_size_bias_identity(std::size_t n, const TestFunction& f, std::size_t reps, std::uint64_t seed,
                                        const RunOptions& options) {
    if (reps < 100) throw InsufficientReplicas("verify_size_bias_identity: reps must be >= 100");
    if (static_cast<double>(n) * static_cast<double>(reps) * 2.0 > options.max_work)
        throw ResourceLimit("verify_size_bias_identity: work cap exceeded");
    const PairIndexDistribution index(n);
    std::vector<double> w(reps), wf(reps), fs(reps);
    parallel_for(reps, options.threads, [&](std::size_t r) {
        Rng plain(seed, r, 0);
        const double wr = static_cast<double>(count_inversions(draw_scores(n, plain)));
        w[r] = wr;
        wf[r] = wr * f(wr);
        Rng coupled(seed, r, 1);
        fs[r] = f(static_cast<double>(couple(index, coupled).w_s));
    });
    const auto sw = tree_summary(w), swf = tree_summary(wf), sfs = tree_summary(fs);
    const double N = static_cast<double>(reps);
    IdentityCheck out;
    out.lhs = swf.mean;
    out.rhs = sw.mean * sfs.mean;
    // delta method for lhs - a*b with a, lhs from the plain draws and b independent
    std::vector<double> combo(reps);
    for (std::size_t r = 0; r < reps; ++r) combo[r] = wf[r] - sfs.mean * w[r];
    const double var_combo = tree_summary(combo).variance();
    out.pooled_se = std::sqrt(var_combo / N + sw.mean * sw.mean * sfs.variance() / N);
    out.lhs_se = std::sqrt(swf.variance() / N);
    out.rhs_se = std::sqrt(sfs.mean * sfs.mean * sw.variance() / N + sw.mean * sw.mean * sfs.variance() / N);
    return out;
}

namespace {

struct PairedDraws {
    std::vector<double> w;      // per outer draw
    std::vector<double> delta;  // outer-major, inner_pairs per outer draw
};

PairedDraws paired_draws(std::size_t n, std::size_t outer, std::size_t inner, std::uint64_t seed,
                         const RunOptions& options, Recount recount) {
    if (outer < 2) throw InsufficientReplicas("need at least 2 outer replicas");
    if (inner < 2) throw InsufficientReplicas("need at least 2 inner completions per outer replica");
    if (static_cast<double>(n) * static_cast<double>(outer) * static_cast<double>(inner + 1) > options.max_work)
        throw ResourceLimit("paired coupling draws exceed the work cap");
    const PairIndexDistribution index(n);
    PairedDraws d;
    d.w.resize(outer);
    d.delta.resize(outer * inner);
    parallel_for(outer, options.threads, [&](std::size_t r) {
        Rng rng(seed, r, 0);
        const auto z = draw_scores(n, rng);
        const auto w = count_inversions(z);
        d.w[r] = static_cast<double>(w);
        for (std::size_t c = 0; c < inner; ++c) {
            Rng sub(seed, r, c + 1);
            const auto ws = complete_coupling(index, z, w, sub, recount);
            d.delta[r * inner + c] = static_cast<double>(ws) - static_cast<double>(w);
        }
    });
    return d;
}

VarConditionalEstimate var_conditional_from(const PairedDraws& d, std::size_t outer, std::size_t inner) {
    const double K = static_cast<double>(inner), R = static_cast<double>(outer);
    CompensatedSum cross_within, sum_means, sum_means_sq;
    for (std::size_t r = 0; r < outer; ++r) {
        CompensatedSum s, sq;
        for (std::size_t c = 0; c < inner; ++c) {
            const double x = d.delta[r * inner + c];
            s += x;
            sq += x * x;
        }
        const double total = s.value();
        cross_within += (total * total - sq.value()) / (K * (K - 1.0));
        const double mean_r = total / K;
        sum_means += mean_r;
        sum_means_sq += mean_r * mean_r;
    }
    const double S = sum_means.value();
    const double mean_sq = (S * S - sum_means_sq.value()) / (R * (R - 1.0));
    VarConditionalEstimate out;
    out.raw = cross_within.value() / R - mean_sq;
    out.clamped = out.raw < 0.0;
    out.value = std::max(0.0, out.raw);
    return out;
}

}  // namespace

VarConditionalEstimate estimate_var_conditional(std::size_t n, std::size_t outer_reps, std::size_t inner_pairs,
                                                std::uint64_t seed, const RunOptions& options, Recount recount) {
    const auto d = paired_draws(n, outer_reps, inner_pairs, seed, options, recount);
    return var_conditional_from(d, outer_reps, inner_pairs);
}

SteinBoundReport stein_bound(std::size_t n, std::size_t outer_reps, std::size_t inner_pairs, std::uint64_t seed,
                             const RunOptions& options, Recount recount) {
    const auto d = paired_draws(n, outer_reps, inner_pairs, seed, options, recount);
    const auto vc = var_conditional_from(d, outer_reps, inner_pairs);
    const auto sw = tree_summary(d.w);
    std::vector<double> sq(d.delta.size());
    for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = d.delta[k] * d.delta[k];
    SteinBoundReport rep;
    rep.n = n;
    rep.mu = sw.mean;
    rep.sigma2 = sw.variance();
    rep.var_cond = vc.value;
    rep.var_cond_clamped = vc.clamped;
    rep.second_moment = tree_summary(sq).mean;
    rep.reps = outer_reps;
    rep.pair_reps = inner_pairs;
    rep.seed = seed;
    if (rep.sigma2 > 0.0) {
        const double sigma = std::sqrt(rep.sigma2);
        rep.bound = rep.mu / rep.sigma2 * std::sqrt(2.0 / std::numbers::pi) * std::sqrt(rep.var_cond) +
                    rep.mu / (rep.sigma2 * sigma) * rep.second_moment;
    } else {
        rep.bound = std::numeric_limits<double>::infinity();
    }
    return rep;
}

}  // namespace permlab
