#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "permlab/cli.hpp"
#include "permlab/config.hpp"
#include "permlab/error.hpp"
#include "permlab/exact.hpp"
#include "permlab/models.hpp"
#include "permlab/montecarlo.hpp"
#include "permlab/sizebias.hpp"
#include "permlab/statistics.hpp"

namespace py = pybind11;
using namespace permlab;

namespace {

using Entries = std::vector<Permutation::value_type>;

Entries to_list(const Permutation& p) { return Entries(p.entries().begin(), p.entries().end()); }

// phi and chain arrive as JSON text; the Python wrapper serializes dicts.
ModelSpec make_model(const std::string& name, const std::optional<std::string>& phi,
                     const std::optional<std::string>& chain) {
    const auto kind = parse_model_kind(name);
    if (kind == ModelKind::PhiDraw) {
        if (!phi) throw InvalidArgument("model 'phi' needs a phi rule");
        return ModelSpec::phi_draw(parse_phi_rule(nlohmann::json::parse(*phi)));
    }
    if (kind == ModelKind::MarkovDraw) {
        if (!chain) throw InvalidArgument("model 'markov' needs a chain");
        return ModelSpec::markov_draw(parse_markov_chain(nlohmann::json::parse(*chain)));
    }
    return ModelSpec{kind, {}, {}};
}

ModelKind enumerable(const std::string& name) {
    const auto kind = parse_model_kind(name);
    if (kind == ModelKind::PhiDraw || kind == ModelKind::MarkovDraw)
        throw InvalidArgument("exact laws exist only for uniform, unfair and inverse-unfair");
    return kind;
}

RunOptions options(unsigned threads) {
    RunOptions o;
    o.threads = threads;
    return o;
}

std::string rational_text(const Rational& q) { return q.str(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "permlab core bindings";

    py::register_exception<Error>(m, "PermlabError", PyExc_RuntimeError);

    m.def("version", [] { return std::string(version()); });

    m.def(
        "sample",
        [](std::size_t n, std::size_t reps, std::uint64_t seed, const std::string& model,
           const std::optional<std::string>& phi, const std::optional<std::string>& chain) {
            const auto spec = make_model(model, phi, chain);
            std::vector<Entries> rows;
            rows.reserve(reps);
            for (std::size_t r = 0; r < reps; ++r) {
                Rng rng(seed, r);
                rows.push_back(to_list(permlab::sample(spec, n, rng)));
            }
            return rows;
        },
        py::arg("n"), py::arg("reps") = 1, py::arg("seed") = 0, py::arg("model") = "inverse-unfair",
        py::arg("phi") = py::none(), py::arg("chain") = py::none());

    m.def(
        "pmf",
        [](const Entries& sigma, const std::string& model) {
            const Permutation p(sigma);
            switch (enumerable(model)) {
                case ModelKind::Unfair: return pmf_unfair(p);
                case ModelKind::InverseUnfair: return pmf_inverse_unfair(p);
                default: return 1.0 / std::tgamma(static_cast<double>(p.size()) + 1.0);
            }
        },
        py::arg("sigma"), py::arg("model") = "inverse-unfair");

    m.def(
        "pmf_exact",
        [](const Entries& sigma, const std::string& model) {
            const Permutation p(sigma);
            switch (enumerable(model)) {
                case ModelKind::Unfair: return rational_text(pmf_unfair_exact(p));
                case ModelKind::InverseUnfair: return rational_text(pmf_inverse_unfair_exact(p));
                default: {
                    Rational f = 1;
                    for (std::size_t k = 2; k <= p.size(); ++k) f *= k;
                    return rational_text(1 / f);
                }
            }
        },
        py::arg("sigma"), py::arg("model") = "inverse-unfair");

    m.def(
        "enumerate_law",
        [](std::size_t n, const std::string& model, std::size_t limit) {
            const auto law = permlab::enumerate_law(n, enumerable(model), limit);
            std::vector<std::pair<Entries, double>> rows;
            for (std::size_t k = 0; k < law.support.size(); ++k)
                rows.emplace_back(to_list(law.support[k]), law.probs[k]);
            return rows;
        },
        py::arg("n"), py::arg("model") = "inverse-unfair", py::arg("limit") = kDefaultEnumerationLimit);

    m.def(
        "statistic",
        [](const std::string& kind, const Entries& sigma) {
            return evaluate(StatisticKind::parse(kind), Permutation(sigma));
        },
        py::arg("kind"), py::arg("sigma"));

    m.def(
        "estimate",
        [](const std::string& kind, std::size_t n, std::size_t reps, std::uint64_t seed, const std::string& model,
           const std::optional<std::string>& phi, const std::optional<std::string>& chain, unsigned threads) {
            const auto r = permlab::estimate(StatisticKind::parse(kind), make_model(model, phi, chain), n, reps, seed,
                                             options(threads));
            return py::dict(py::arg("statistic") = r.statistic.to_string(), py::arg("n") = r.n,
                            py::arg("reps") = r.reps, py::arg("mean") = r.mean, py::arg("variance") = r.variance,
                            py::arg("std_error") = r.std_error, py::arg("seed") = r.seed,
                            py::arg("wall_time") = r.wall_time);
        },
        py::arg("kind"), py::arg("n"), py::arg("reps"), py::arg("seed") = 0, py::arg("model") = "inverse-unfair",
        py::arg("phi") = py::none(), py::arg("chain") = py::none(), py::arg("threads") = 0);

    m.def("mean_m_descents", &mean_m_descents, py::arg("n"), py::arg("m") = 1);
    m.def("var_descents", &var_descents, py::arg("n"));
    m.def(
        "m_descent_moments",
        [](std::uint64_t n, std::uint64_t m, const std::string& model) {
            const auto kind = parse_model_kind(model);
            if (kind != ModelKind::Uniform && kind != ModelKind::InverseUnfair)
                throw InvalidArgument("m_descent_moments: model must be uniform or inverse-unfair");
            const auto mo = kind == ModelKind::Uniform ? m_descent_moments_uniform(n, m)
                                                       : m_descent_moments_inverse_unfair(n, m);
            return std::make_pair(mo.mean, mo.variance);
        },
        py::arg("n"), py::arg("m") = 1, py::arg("model") = "inverse-unfair");
    m.def("mean_inversions_exact", &mean_inversions_exact, py::arg("n"));
    m.def("inversion_constants", [] {
        const auto c = permlab::inversion_constants();
        return py::dict(py::arg("mean_coeff") = c.mean_coeff, py::arg("var_coeff") = c.var_coeff);
    });
    m.def(
        "tv_event_lower_bound",
        [](std::uint64_t n) {
            const auto b = permlab::tv_event_lower_bound(n);
            return py::dict(py::arg("floor_log_n") = b.floor_log_n, py::arg("p_rho") = b.p_rho,
                            py::arg("p_pi") = b.p_pi, py::arg("diff") = b.diff);
        },
        py::arg("n"));
    m.def(
        "tv_to_uniform",
        [](std::size_t n, const std::string& model, std::size_t limit) {
            return tv_distance(permlab::enumerate_law(n, enumerable(model), limit),
                               permlab::enumerate_law(n, ModelKind::Uniform, limit));
        },
        py::arg("n"), py::arg("model") = "inverse-unfair", py::arg("limit") = kDefaultEnumerationLimit);

    m.def(
        "clt",
        [](const std::string& kind, std::size_t n, std::size_t reps, std::uint64_t seed, const std::string& model,
           const std::string& centering, unsigned threads) {
            const auto s = standardized_sample(StatisticKind::parse(kind), make_model(model, std::nullopt, std::nullopt),
                                               n, reps, seed, parse_centering(centering), options(threads));
            return py::dict(py::arg("ks") = ks_to_normal(s), py::arg("w1") = wasserstein1_to_normal(s),
                            py::arg("center") = s.center, py::arg("scale") = s.scale,
                            py::arg("values") = s.values);
        },
        py::arg("kind"), py::arg("n"), py::arg("reps"), py::arg("seed") = 0, py::arg("model") = "inverse-unfair",
        py::arg("centering") = "exact-mean", py::arg("threads") = 0);

    m.def("moment_ratio_descents", &moment_ratio_descents, py::arg("n"));
    m.def(
        "moment_ratio",
        [](const std::string& kind, std::size_t n, std::size_t reps, std::uint64_t seed, unsigned k,
           unsigned threads) {
            const auto r = moment_ratio_mc(StatisticKind::parse(kind), n, reps, seed, k, options(threads));
            return py::dict(py::arg("ratio") = r.ratio, py::arg("se") = r.se, py::arg("moment_rho") = r.moment_rho,
                            py::arg("moment_pi") = r.moment_pi);
        },
        py::arg("kind"), py::arg("n"), py::arg("reps"), py::arg("seed") = 0, py::arg("k") = 1,
        py::arg("threads") = 0);

    m.def(
        "couple",
        [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            Rng rng(seed, stream);
            const auto d = permlab::couple(n, rng);
            return py::dict(py::arg("scores") = d.z.scores, py::arg("w") = d.w,
                            py::arg("pair") = std::make_pair(d.index_pair.i, d.index_pair.j),
                            py::arg("w_s") = d.w_s, py::arg("resampled") = d.resampled);
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

    m.def(
        "verify_size_bias_identity",
        [](std::size_t n, const std::string& f, double threshold, std::size_t reps, std::uint64_t seed,
           unsigned threads) {
            TestFunction tf;
            if (f == "identity") tf.kind = TestFunction::Kind::Identity;
            else if (f == "square") tf.kind = TestFunction::Kind::Square;
            else if (f == "indicator") tf = {TestFunction::Kind::IndicatorAtLeast, threshold};
            else throw InvalidArgument("f must be identity, square or indicator");
            const auto r = permlab::verify_size_bias_identity(n, tf, reps, seed, options(threads));
            return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("pooled_se") = r.pooled_se,
                            py::arg("lhs_se") = r.lhs_se, py::arg("rhs_se") = r.rhs_se);
        },
        py::arg("n"), py::arg("f") = "identity", py::arg("threshold") = 0.0, py::arg("reps") = 10000,
        py::arg("seed") = 0, py::arg("threads") = 0);

    m.def(
        "estimate_var_conditional",
        [](std::size_t n, std::size_t outer, std::size_t inner, std::uint64_t seed, unsigned threads) {
            const auto r = permlab::estimate_var_conditional(n, outer, inner, seed, options(threads));
            return py::dict(py::arg("value") = r.value, py::arg("raw") = r.raw, py::arg("clamped") = r.clamped);
        },
        py::arg("n"), py::arg("outer"), py::arg("inner") = 2, py::arg("seed") = 0, py::arg("threads") = 0);

    m.def(
        "stein_bound",
        [](std::size_t n, std::size_t outer, std::size_t inner, std::uint64_t seed, unsigned threads) {
            const auto r = permlab::stein_bound(n, outer, inner, seed, options(threads));
            return py::dict(py::arg("n") = r.n, py::arg("mu") = r.mu, py::arg("sigma2") = r.sigma2,
                            py::arg("var_cond") = r.var_cond, py::arg("second_moment") = r.second_moment,
                            py::arg("bound") = r.bound, py::arg("var_cond_clamped") = r.var_cond_clamped);
        },
        py::arg("n"), py::arg("outer"), py::arg("inner") = 2, py::arg("seed") = 0, py::arg("threads") = 0);
}
