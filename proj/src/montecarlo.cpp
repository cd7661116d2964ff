#include "permlab/montecarlo.hpp"

#include <chrono>
#include <cmath>

#include "permlab/error.hpp"
#include "permlab/exact.hpp"

namespace permlab {

namespace {

void check_work(std::size_t n, std::size_t reps, const RunOptions& options) {
    if (static_cast<double>(n) * static_cast<double>(reps) > options.max_work)
        throw ResourceLimit("n * reps = " + std::to_string(static_cast<double>(n) * static_cast<double>(reps)) +
                            " exceeds the work cap " + std::to_string(options.max_work));
}

std::vector<double> sample_statistic_substream(const StatisticKind& kind, const ModelSpec& model, std::size_t n,
                                               std::size_t reps, std::uint64_t seed, std::uint64_t substream,
                                               const RunOptions& options) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    check_work(n, reps, options);
    model.validate();
    // surface parameter errors before spawning workers
    if ((kind.tag == StatisticKind::Tag::Rising || kind.tag == StatisticKind::Tag::IncSubseq) && kind.m > n)
        throw InvalidArgument(kind.to_string() + ": m exceeds n = " + std::to_string(n));
    std::vector<double> values(reps);
    parallel_for(reps, options.threads, [&](std::size_t r) {
        Rng rng(seed, r, substream);
        values[r] = static_cast<double>(evaluate(kind, sample(model, n, rng)));
    });
    return values;
}

std::vector<double> descent_weights(const ModelSpec& model, std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (model.kind) {
            case ModelKind::Uniform: w[i] = 1.0; break;
            case ModelKind::InverseUnfair: w[i] = static_cast<double>(i + 1); break;
            case ModelKind::PhiDraw: w[i] = static_cast<double>(model.phi(i + 1)); break;
            default: throw InvalidArgument("no closed-form descent moments for model " + std::string(to_string(model.kind)));
        }
    }
    return w;
}

}  // namespace

std::vector<double> sample_statistic(const StatisticKind& kind, const ModelSpec& model, std::size_t n,
                                     std::size_t reps, std::uint64_t seed, const RunOptions& options) {
    return sample_statistic_substream(kind, model, n, reps, seed, 0, options);
}

EstimateReport estimate(const StatisticKind& kind, const ModelSpec& model, std::size_t n, std::size_t reps,
                        std::uint64_t seed, const RunOptions& options) {
    if (reps < 2) throw InsufficientReplicas("estimate: reps must be >= 2");
    const auto start = std::chrono::steady_clock::now();
    const auto values = sample_statistic(kind, model, n, reps, seed, options);
    const auto s = tree_summary(values);
    EstimateReport report;
    report.statistic = kind;
    report.model = model;
    report.n = n;
    report.reps = reps;
    report.mean = s.mean;
    report.variance = std::max(0.0, s.variance());
    report.std_error = std::sqrt(report.variance / static_cast<double>(reps));
    report.seed = seed;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string_view to_string(Centering mode) {
    switch (mode) {
        case Centering::ExactMean: return "exact-mean";
        case Centering::ClosedForm: return "closed-form";
        case Centering::AsymptoticFormula: return "asymptotic";
    }
    return "?";
}

Centering parse_centering(std::string_view text) {
    if (text == "exact-mean" || text == "exact") return Centering::ExactMean;
    if (text == "closed-form" || text == "closed") return Centering::ClosedForm;
    if (text == "asymptotic") return Centering::AsymptoticFormula;
    throw InvalidArgument("unknown centering mode '" + std::string(text) + "'");
}

Normalization normalization_for(const StatisticKind& kind, const ModelSpec& model, std::size_t n, Centering mode) {
    using Tag = StatisticKind::Tag;
    const double nd = static_cast<double>(n);
    auto unsupported = [&]() -> InvalidArgument {
        return InvalidArgument("no " + std::string(to_string(mode)) + " normalization for " + kind.to_string() +
                               " under the " + std::string(to_string(model.kind)) + " model");
    };
    if (n < 2) throw InvalidArgument("standardization needs n >= 2");

    if (kind.tag == Tag::Inv) {
        if (model.kind == ModelKind::InverseUnfair || model.kind == ModelKind::Unfair) {
            const auto c = inversion_constants();
            const double scale = std::sqrt(c.var_coeff) * std::pow(nd, 1.5);
            if (mode == Centering::ExactMean) return {mean_inversions_exact(n), scale};
            if (mode == Centering::AsymptoticFormula) return {c.mean_coeff * nd * nd, scale};
            throw unsupported();
        }
        if (model.kind == ModelKind::Uniform) {
            if (mode == Centering::AsymptoticFormula) return {nd * nd / 4.0, std::pow(nd, 1.5) / 6.0};
            const auto m = inversion_moments_uniform(n);
            return {m.mean, std::sqrt(m.variance)};
        }
        throw unsupported();
    }

    if (kind.tag == Tag::Descents) {
        const std::uint64_t m = kind.m;
        if (m >= n) throw InvalidArgument("descent standardization needs m < n");
        if (model.kind != ModelKind::InverseUnfair && model.kind != ModelKind::Uniform &&
            model.kind != ModelKind::PhiDraw)
            throw unsupported();
        const double md = static_cast<double>(m);
        if (mode == Centering::AsymptoticFormula) {
            const double var = (6.0 * nd * md + 4.0 * md * md * md + 3.0 * md * md - md) / 72.0;
            double center = 0.0;
            if (model.kind == ModelKind::Uniform)
                center = nd * md / 2.0 - md * (md + 1.0) / 4.0;
            else if (model.kind == ModelKind::InverseUnfair)
                center = nd * md / 2.0 - md * (md + 1.0) / 4.0 - md * (md + 1.0) * std::log(nd) / 8.0;
            else
                throw unsupported();
            return {center, std::sqrt(var)};
        }
        if (model.kind == ModelKind::InverseUnfair && mode == Centering::ClosedForm) {
            const double var = m == 1 ? var_descents(n) : m_descent_moments_inverse_unfair(n, m).variance;
            return {mean_m_descents(n, m), std::sqrt(var)};
        }
        const auto moments = m_descent_moments(descent_weights(model, n), m);
        return {moments.mean, std::sqrt(moments.variance)};
    }
    throw unsupported();
}

StandardizedSample standardized_sample(const StatisticKind& kind, const ModelSpec& model, std::size_t n,
                                       std::size_t reps, std::uint64_t seed, Centering mode,
                                       const RunOptions& options) {
    if (reps < 1) throw InsufficientReplicas("standardized_sample: reps must be >= 1");
    const auto norm = normalization_for(kind, model, n, mode);
    if (!(norm.scale > 0.0)) throw InvalidArgument("standardization scale is not positive");
    StandardizedSample out;
    out.values = sample_statistic(kind, model, n, reps, seed, options);
    for (auto& v : out.values) v = (v - norm.center) / norm.scale;
    out.center = norm.center;
    out.scale = norm.scale;
    out.centering_mode = mode;
    return out;
}

double ks_to_normal(const StandardizedSample& s) { return ks_to_normal(std::span<const double>(s.values)); }

double wasserstein1_to_normal(const StandardizedSample& s) {
    return wasserstein1_to_normal(std::span<const double>(s.values));
}

double moment_ratio_descents(std::uint64_t n) {
    if (n < 2) throw InvalidArgument("moment_ratio_descents: n must be >= 2");
    return mean_m_descents(n, 1) / ((static_cast<double>(n) - 1.0) / 2.0);
}

RatioEstimate moment_ratio_mc(const StatisticKind& kind, std::size_t n, std::size_t reps, std::uint64_t seed,
                              unsigned k, const RunOptions& options) {
    if (k < 1) throw InvalidArgument("moment order k must be >= 1");
    if (reps < 2) throw InsufficientReplicas("moment_ratio_mc: reps must be >= 2");
    check_work(2 * n, reps, options);
    auto rho = sample_statistic_substream(kind, ModelSpec::inverse_unfair(), n, reps, seed, 0, options);
    auto pi = sample_statistic_substream(kind, ModelSpec::uniform(), n, reps, seed, 1, options);
    for (auto* v : {&rho, &pi})
        for (auto& x : *v) x = std::pow(x, static_cast<double>(k));
    const auto a = tree_summary(rho);
    const auto b = tree_summary(pi);
    if (b.mean == 0.0) throw InvalidArgument("moment_ratio_mc: uniform moment estimate is zero");
    RatioEstimate out;
    out.moment_rho = a.mean;
    out.moment_pi = b.mean;
    out.ratio = a.mean / b.mean;
    const double r = static_cast<double>(reps);
    const double rel_a = a.mean != 0.0 ? a.variance() / (r * a.mean * a.mean) : 0.0;
    const double rel_b = b.variance() / (r * b.mean * b.mean);
    out.se = std::abs(out.ratio) * std::sqrt(rel_a + rel_b);
    return out;
}

}  // namespace permlab
