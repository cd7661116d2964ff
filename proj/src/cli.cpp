#include "permlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "permlab/config.hpp"
#include "permlab/error.hpp"
#include "permlab/exact.hpp"
#include "permlab/models.hpp"
#include "permlab/montecarlo.hpp"
#include "permlab/sizebias.hpp"
#include "permlab/statistics.hpp"

#ifndef PERMLAB_VERSION
#define PERMLAB_VERSION "0.0.0"
#endif

namespace permlab {

const char* version() { return PERMLAB_VERSION; }

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Common {
    unsigned threads = 0;
    std::string format;
    std::optional<std::uint64_t> seed;
    double max_work = 5e10;
};

std::uint64_t resolve_seed(const Common& c, std::ostream& err) {
    if (c.seed) return *c.seed;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "permlab: no --seed given, using generated seed " << s << "\n";
    return s;
}

std::size_t enumeration_limit(std::ostream& err) {
    const char* env = std::getenv("PERMLAB_ENUM_LIMIT");
    if (!env || !*env) return kDefaultEnumerationLimit;
    char* end = nullptr;
    const auto v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v < 1) throw InvalidArgument("PERMLAB_ENUM_LIMIT must be a positive integer");
    if (v > kMaxEnumerationLimit)
        throw InvalidArgument("PERMLAB_ENUM_LIMIT cannot exceed " + std::to_string(kMaxEnumerationLimit));
    if (v > kDefaultEnumerationLimit)
        err << "permlab: warning: enumeration limit " << v << " may need several GB of memory at n = " << v << "\n";
    return v;
}

std::string truncate_5dp(const Rational& p) {
    using boost::multiprecision::cpp_int;
    const cpp_int scaled = numerator(p) * 100000 / denominator(p);
    const auto whole = static_cast<unsigned long long>(scaled / 100000);
    const auto frac = static_cast<unsigned long long>(scaled % 100000);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llu.%05llu", whole, frac);
    return buf;
}

std::string full_precision(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_record(std::ostream& out, const std::string& command, Json params, Json results, Clock::time_point start) {
    Json rec;
    rec["command"] = command;
    rec["params"] = std::move(params);
    rec["results"] = std::move(results);
    rec["version"] = version();
    rec["runtime_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    out << rec.dump() << "\n";
}

ModelSpec build_model(const std::string& name, const std::string& phi, const std::string& phi_table,
                      const std::string& chain) {
    const auto kind = parse_model_kind(name);
    switch (kind) {
        case ModelKind::PhiDraw: {
            if (!phi_table.empty()) return ModelSpec::phi_draw(load_phi_rule(phi_table));
            if (phi.empty()) throw InvalidArgument("--model phi needs --phi one|identity or --phi-table FILE");
            return ModelSpec::phi_draw(parse_phi_rule(nlohmann::json::parse("\"" + phi + "\"")));
        }
        case ModelKind::MarkovDraw:
            if (chain.empty()) throw InvalidArgument("--model markov needs --chain FILE");
            return ModelSpec::markov_draw(load_markov_chain(chain));
        default: return ModelSpec{kind, {}, {}};
    }
}

Json model_params(const ModelSpec& m, const std::string& phi, const std::string& phi_table, const std::string& chain) {
    Json j;
    j["model"] = std::string(to_string(m.kind));
    if (m.kind == ModelKind::PhiDraw) j[phi_table.empty() ? "phi" : "phi_table"] = phi_table.empty() ? phi : phi_table;
    if (m.kind == ModelKind::MarkovDraw) j["chain"] = chain;
    return j;
}

void add_common(CLI::App* cmd, Common& c, bool randomized, const std::string& default_format) {
    c.format = default_format;
    cmd->add_option("--threads", c.threads, "worker threads (0 = available parallelism)");
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    if (randomized) {
        cmd->add_option("--seed", c.seed, "64-bit seed; generated and reported when omitted");
        cmd->add_option("--max-work", c.max_work, "cap on n * reps");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"permlab: unfair and inverse-unfair random permutations", "permlab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    // sample
    Common sample_c;
    std::string sample_model = "inverse-unfair", phi, phi_table, chain;
    std::size_t sample_n = 0, sample_reps = 1;
    auto* sample_cmd = app.add_subcommand("sample", "draw permutations from a model");
    sample_cmd->add_option("--model", sample_model, "uniform|unfair|inverse-unfair|phi|markov");
    sample_cmd->add_option("--n", sample_n, "permutation size")->required();
    sample_cmd->add_option("--reps", sample_reps, "number of permutations");
    sample_cmd->add_option("--phi", phi, "phi rule for --model phi: one|identity");
    sample_cmd->add_option("--phi-table", phi_table, "phi config file for --model phi");
    sample_cmd->add_option("--chain", chain, "markov chain config file for --model markov");
    add_common(sample_cmd, sample_c, true, "csv");

    // pmf
    Common pmf_c;
    std::string pmf_model = "inverse-unfair";
    std::size_t pmf_n = 0;
    bool pmf_rational = false;
    auto* pmf_cmd = app.add_subcommand("pmf", "exact probability of every permutation in S_n");
    pmf_cmd->add_option("--model", pmf_model, "uniform|unfair|inverse-unfair");
    pmf_cmd->add_option("--n", pmf_n, "permutation size")->required();
    pmf_cmd->add_flag("--rational", pmf_rational, "add an exact prob_rational column");
    add_common(pmf_cmd, pmf_c, false, "csv");

    // tv
    Common tv_c;
    std::uint64_t tv_n = 0;
    auto* tv_cmd = app.add_subcommand("tv", "total variation distance to the uniform law");
    tv_cmd->add_option("--n", tv_n, "permutation size")->required();
    add_common(tv_cmd, tv_c, false, "json");

    // stats
    Common stats_c;
    std::vector<std::string> stats_kinds, stats_perms;
    std::string stats_model;
    std::size_t stats_n = 0, stats_reps = 0;
    std::string phi_s, phi_table_s, chain_s;
    auto* stats_cmd = app.add_subcommand("stats", "evaluate statistics on permutations, or estimate them by simulation");
    stats_cmd->add_option("--stat", stats_kinds, "inv|ainv|desc:m|asc:m|locmax|las|rising:m|incsub:m")->required();
    stats_cmd->add_option("--perm", stats_perms, "permutation in one-line notation; '-' reads lines from stdin");
    stats_cmd->add_option("--model", stats_model, "simulate from this model instead of --perm");
    stats_cmd->add_option("--n", stats_n, "permutation size for simulation");
    stats_cmd->add_option("--reps", stats_reps, "replicas for simulation");
    stats_cmd->add_option("--phi", phi_s, "phi rule for --model phi");
    stats_cmd->add_option("--phi-table", phi_table_s, "phi config file");
    stats_cmd->add_option("--chain", chain_s, "markov chain config file");
    add_common(stats_cmd, stats_c, true, "json");

    // moments
    Common mom_c;
    std::string mom_stat = "desc:1", mom_model = "inverse-unfair";
    std::uint64_t mom_n = 0;
    std::optional<std::uint32_t> mom_m;
    auto* mom_cmd = app.add_subcommand("moments", "closed-form moments");
    mom_cmd->add_option("--stat", mom_stat, "desc:m|asc:m|inv|ainv");
    mom_cmd->add_option("--n", mom_n, "permutation size")->required();
    mom_cmd->add_option("--m", mom_m, "window size (overrides the :m suffix)");
    mom_cmd->add_option("--model", mom_model, "inverse-unfair|uniform");
    add_common(mom_cmd, mom_c, false, "json");

    // clt
    Common clt_c;
    std::string clt_stat = "inv", clt_model = "inverse-unfair", clt_centering = "exact-mean", clt_emit;
    std::size_t clt_n = 0, clt_reps = 0;
    std::string phi_c, phi_table_c;
    auto* clt_cmd = app.add_subcommand("clt", "standardized Monte Carlo sample and its distance to N(0,1)");
    clt_cmd->add_option("--stat", clt_stat, "inv|desc:m");
    clt_cmd->add_option("--model", clt_model, "inverse-unfair|unfair|uniform|phi");
    clt_cmd->add_option("--n", clt_n, "permutation size")->required();
    clt_cmd->add_option("--reps", clt_reps, "replicas")->required();
    clt_cmd->add_option("--centering", clt_centering, "exact-mean|closed-form|asymptotic");
    clt_cmd->add_option("--emit-sample", clt_emit, "write the standardized values, one per line");
    clt_cmd->add_option("--phi", phi_c, "phi rule for --model phi");
    clt_cmd->add_option("--phi-table", phi_table_c, "phi config file");
    add_common(clt_cmd, clt_c, true, "json");

    // ratio
    Common ratio_c;
    std::string ratio_stat = "desc:1";
    std::size_t ratio_n = 0, ratio_reps = 0;
    unsigned ratio_k = 1;
    auto* ratio_cmd = app.add_subcommand("ratio", "moment ratio E[T(rho)^k] / E[T(pi)^k]");
    ratio_cmd->add_option("--stat", ratio_stat, "statistic");
    ratio_cmd->add_option("--n", ratio_n, "permutation size")->required();
    ratio_cmd->add_option("--reps", ratio_reps, "replicas per model (0: closed form only)");
    ratio_cmd->add_option("--k", ratio_k, "moment order");
    add_common(ratio_cmd, ratio_c, true, "json");

    // sizebias
    Common sb_c;
    std::size_t sb_n = 0, sb_outer = 1000, sb_inner = 2;
    std::string sb_check = "bound";
    double sb_threshold = 0.0;
    auto* sb_cmd = app.add_subcommand("sizebias", "size-biased coupling checks and the Stein bound");
    sb_cmd->add_option("--n", sb_n, "permutation size")->required();
    sb_cmd->add_option("--outer", sb_outer, "outer replicas (draws for identity checks)");
    sb_cmd->add_option("--inner", sb_inner, "coupling completions per outer replica");
    sb_cmd->add_option("--check", sb_check, "identity|square|indicator|bound")
        ->check(CLI::IsMember({"identity", "square", "indicator", "bound"}));
    sb_cmd->add_option("--threshold", sb_threshold, "t for --check indicator, f(w) = 1(w >= t)");
    add_common(sb_cmd, sb_c, true, "json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const auto start = Clock::now();
    try {
        if (*sample_cmd) {
            const auto seed = resolve_seed(sample_c, err);
            const auto model = build_model(sample_model, phi, phi_table, chain);
            if (sample_n < 1) throw InvalidArgument("--n must be >= 1");
            Json params = model_params(model, phi, phi_table, chain);
            params["n"] = sample_n;
            params["reps"] = sample_reps;
            params["seed"] = seed;
            std::vector<Permutation> perms;
            perms.reserve(sample_reps);
            for (std::size_t r = 0; r < sample_reps; ++r) {
                Rng rng(seed, r);
                perms.push_back(sample(model, sample_n, rng));
            }
            if (sample_c.format == "csv") {
                for (const auto& p : perms) out << p.to_string() << "\n";
                Json rec{{"command", "sample"}, {"params", params}, {"version", version()}};
                err << "permlab: run " << rec.dump() << "\n";
            } else {
                Json rows = Json::array();
                for (const auto& p : perms) rows.push_back(std::vector<std::uint32_t>(p.entries().begin(), p.entries().end()));
                emit_record(out, "sample", params, {{"permutations", rows}}, start);
            }
            return 0;
        }

        if (*pmf_cmd) {
            const auto kind = parse_model_kind(pmf_model);
            const auto limit = enumeration_limit(err);
            const auto exact = enumerate_law_exact(pmf_n, kind, limit);
            const auto law = enumerate_law(pmf_n, kind, limit);
            Json params{{"model", std::string(to_string(kind))}, {"n", pmf_n}};
            if (pmf_c.format == "csv") {
                out << "permutation,prob_5dp,prob_full" << (pmf_rational ? ",prob_rational" : "") << "\n";
                for (std::size_t k = 0; k < law.support.size(); ++k) {
                    out << "\"(" << law.support[k].to_string() << ")\"," << truncate_5dp(exact[k].second) << ","
                        << full_precision(law.probs[k]);
                    if (pmf_rational) out << "," << exact[k].second.str();
                    out << "\n";
                }
                Json rec{{"command", "pmf"}, {"params", params}, {"version", version()}};
                err << "permlab: run " << rec.dump() << "\n";
            } else {
                Json rows = Json::array();
                for (std::size_t k = 0; k < law.support.size(); ++k)
                    rows.push_back({{"permutation", law.support[k].to_string()},
                                    {"prob_5dp", truncate_5dp(exact[k].second)},
                                    {"prob_full", law.probs[k]},
                                    {"prob_rational", exact[k].second.str()}});
                emit_record(out, "pmf", params, {{"rows", rows}, {"total", law.total()}}, start);
            }
            return 0;
        }

        if (*tv_cmd) {
            if (tv_n < 1) throw InvalidArgument("--n must be >= 1");
            Json results;
            const auto limit = enumeration_limit(err);
            if (tv_n <= limit) {
                const auto uniform = enumerate_law(tv_n, ModelKind::Uniform, limit);
                results["tv_inverse_unfair_uniform"] = tv_distance(enumerate_law(tv_n, ModelKind::InverseUnfair, limit), uniform);
                results["tv_unfair_uniform"] = tv_distance(enumerate_law(tv_n, ModelKind::Unfair, limit), uniform);
            } else {
                results["tv_inverse_unfair_uniform"] = nullptr;
                err << "permlab: n above the enumeration limit; exact TV skipped\n";
            }
            if (tv_n >= 3) {
                const auto b = tv_event_lower_bound(tv_n);
                results["lower_bound"] = {{"floor_log_n", b.floor_log_n}, {"p_rho", b.p_rho}, {"p_pi", b.p_pi}, {"diff", b.diff}};
            }
            emit_record(out, "tv", {{"n", tv_n}}, results, start);
            return 0;
        }

        if (*stats_cmd) {
            std::vector<StatisticKind> kinds;
            for (const auto& s : stats_kinds) kinds.push_back(StatisticKind::parse(s));
            if (!stats_model.empty()) {
                const auto seed = resolve_seed(stats_c, err);
                const auto model = build_model(stats_model, phi_s, phi_table_s, chain_s);
                Json params = model_params(model, phi_s, phi_table_s, chain_s);
                params["n"] = stats_n;
                params["reps"] = stats_reps;
                params["seed"] = seed;
                RunOptions opt{stats_c.threads, stats_c.max_work};
                Json results = Json::array();
                for (const auto& k : kinds) {
                    const auto rep = estimate(k, model, stats_n, stats_reps, seed, opt);
                    results.push_back({{"statistic", k.to_string()},
                                       {"mean", rep.mean},
                                       {"variance", rep.variance},
                                       {"std_error", rep.std_error},
                                       {"reps", rep.reps},
                                       {"wall_time", rep.wall_time}});
                }
                emit_record(out, "stats", params, {{"estimates", results}}, start);
                return 0;
            }
            std::vector<Permutation> perms;
            for (const auto& s : stats_perms) {
                if (s == "-") {
                    std::string line;
                    while (std::getline(std::cin, line))
                        if (!line.empty()) perms.push_back(Permutation::parse(line));
                } else {
                    perms.push_back(Permutation::parse(s));
                }
            }
            if (perms.empty()) throw InvalidArgument("stats needs --perm or --model");
            if (stats_c.format == "csv") {
                out << "permutation";
                for (const auto& k : kinds) out << "," << k.to_string();
                out << "\n";
                for (const auto& p : perms) {
                    out << "\"" << p.to_string() << "\"";
                    for (const auto& k : kinds) out << "," << evaluate(k, p);
                    out << "\n";
                }
            } else {
                Json rows = Json::array();
                for (const auto& p : perms) {
                    Json row{{"permutation", p.to_string()}};
                    for (const auto& k : kinds) row[k.to_string()] = evaluate(k, p);
                    rows.push_back(row);
                }
                Json params{{"stats", stats_kinds}};
                emit_record(out, "stats", params, {{"rows", rows}}, start);
            }
            return 0;
        }

        if (*mom_cmd) {
            auto kind = StatisticKind::parse(mom_stat);
            if (mom_m) kind.m = *mom_m;
            const auto model = parse_model_kind(mom_model);
            if (model != ModelKind::InverseUnfair && model != ModelKind::Uniform)
                throw InvalidArgument("moments supports the inverse-unfair and uniform models");
            const double n = static_cast<double>(mom_n);
            Json results;
            using Tag = StatisticKind::Tag;
            if (kind.tag == Tag::Descents || kind.tag == Tag::Ascents) {
                const std::uint64_t m = kind.m;
                const auto mo = model == ModelKind::Uniform ? m_descent_moments_uniform(mom_n, m)
                                                            : m_descent_moments_inverse_unfair(mom_n, m);
                const double pairs = static_cast<double>(window_pair_count(mom_n, m));
                const bool asc = kind.tag == Tag::Ascents;
                results["mean"] = asc ? pairs - mo.mean : mo.mean;
                results["variance"] = mo.variance;
                const double md = static_cast<double>(m);
                results["variance_asymptotic"] = (6.0 * n * md + 4.0 * md * md * md + 3.0 * md * md - md) / 72.0;
                if (model == ModelKind::InverseUnfair) {
                    const double mf = mean_m_descents(mom_n, m);
                    results["mean_formula"] = asc ? pairs - mf : mf;
                    if (m == 1) {
                        results["variance_formula"] = var_descents(mom_n);
                        results["mean_asymptotic"] = asc ? n / 2.0 + 3.0 * std::log(n) / 4.0 : n / 2.0 - std::log(n) / 4.0;
                        results["moment_ratio_vs_uniform"] = moment_ratio_descents(mom_n);
                    }
                }
            } else if (kind.tag == Tag::Inv || kind.tag == Tag::AInv) {
                const auto c = inversion_constants();
                const double pairs = static_cast<double>(pair_count(mom_n));
                const bool anti = kind.tag == Tag::AInv;
                if (model == ModelKind::Uniform) {
                    const auto mo = inversion_moments_uniform(mom_n);
                    results["mean"] = anti ? pairs - mo.mean : mo.mean;
                    results["variance"] = mo.variance;
                } else {
                    const double mean = mean_inversions_exact(mom_n);
                    results["mean"] = anti ? pairs - mean : mean;
                    results["mean_asymptotic"] = (anti ? 0.5 - c.mean_coeff : c.mean_coeff) * n * n;
                    results["variance_asymptotic"] = c.var_coeff * n * n * n;
                    results["mean_coeff"] = c.mean_coeff;
                    results["var_coeff"] = c.var_coeff;
                }
            } else {
                throw InvalidArgument("moments supports desc:m, asc:m, inv and ainv");
            }
            emit_record(out, "moments", {{"stat", kind.to_string()}, {"model", std::string(to_string(model))}, {"n", mom_n}},
                        results, start);
            return 0;
        }

        if (*clt_cmd) {
            const auto seed = resolve_seed(clt_c, err);
            const auto kind = StatisticKind::parse(clt_stat);
            const auto model = build_model(clt_model, phi_c, phi_table_c, "");
            const auto mode = parse_centering(clt_centering);
            RunOptions opt{clt_c.threads, clt_c.max_work};
            const auto t0 = Clock::now();
            const auto s = standardized_sample(kind, model, clt_n, clt_reps, seed, mode, opt);
            const auto summary = tree_summary(s.values);
            Json results;
            results["kind"] = kind.to_string();
            results["model"] = std::string(to_string(model.kind));
            results["n"] = clt_n;
            results["reps"] = clt_reps;
            results["seed"] = seed;
            results["mean"] = summary.mean;
            results["var"] = summary.variance();
            results["ks"] = ks_to_normal(s);
            results["w1"] = clt_reps >= 2 ? Json(wasserstein1_to_normal(s)) : Json(nullptr);
            results["runtime"] = std::chrono::duration<double>(Clock::now() - t0).count();
            results["center"] = s.center;
            results["scale"] = s.scale;
            results["centering"] = std::string(to_string(mode));
            if (!clt_emit.empty()) {
                std::ofstream f(clt_emit);
                if (!f) throw InvalidArgument("cannot write " + clt_emit);
                for (double v : s.values) f << full_precision(v) << "\n";
            }
            Json params = model_params(model, phi_c, phi_table_c, "");
            params["stat"] = kind.to_string();
            params["n"] = clt_n;
            params["reps"] = clt_reps;
            params["seed"] = seed;
            params["centering"] = std::string(to_string(mode));
            emit_record(out, "clt", params, results, start);
            return 0;
        }

        if (*ratio_cmd) {
            const auto kind = StatisticKind::parse(ratio_stat);
            Json params{{"stat", kind.to_string()}, {"n", ratio_n}, {"reps", ratio_reps}, {"k", ratio_k}};
            Json results;
            if (kind == StatisticKind::descents(1) && ratio_k == 1) results["closed_form_ratio"] = moment_ratio_descents(ratio_n);
            if (ratio_reps > 0) {
                const auto seed = resolve_seed(ratio_c, err);
                params["seed"] = seed;
                const auto r = moment_ratio_mc(kind, ratio_n, ratio_reps, seed, ratio_k, {ratio_c.threads, ratio_c.max_work});
                results["ratio"] = r.ratio;
                results["se"] = r.se;
                results["moment_rho"] = r.moment_rho;
                results["moment_pi"] = r.moment_pi;
            }
            emit_record(out, "ratio", params, results, start);
            return 0;
        }

        if (*sb_cmd) {
            const auto seed = resolve_seed(sb_c, err);
            RunOptions opt{sb_c.threads, sb_c.max_work};
            Json params{{"n", sb_n}, {"outer", sb_outer}, {"inner", sb_inner}, {"seed", seed}, {"check", sb_check}};
            Json results;
            if (sb_check == "bound") {
                const auto r = stein_bound(sb_n, sb_outer, sb_inner, seed, opt);
                results = {{"n", r.n},           {"mu", r.mu},
                           {"sigma2", r.sigma2}, {"var_cond", r.var_cond},
                           {"second_moment", r.second_moment}, {"bound", r.bound},
                           {"var_cond_clamped", r.var_cond_clamped}, {"reps", r.reps},
                           {"pair_reps", r.pair_reps}, {"seed", r.seed}};
            } else {
                TestFunction f;
                if (sb_check == "square") f.kind = TestFunction::Kind::Square;
                if (sb_check == "indicator") {
                    f.kind = TestFunction::Kind::IndicatorAtLeast;
                    f.threshold = sb_threshold;
                    params["threshold"] = sb_threshold;
                }
                const auto r = verify_size_bias_identity(sb_n, f, sb_outer, seed, opt);
                results = {{"lhs", r.lhs},         {"rhs", r.rhs},       {"pooled_se", r.pooled_se},
                           {"lhs_se", r.lhs_se},   {"rhs_se", r.rhs_se},
                           {"z", r.pooled_se > 0 ? (r.lhs - r.rhs) / r.pooled_se : 0.0}};
            }
            emit_record(out, "sizebias", params, results, start);
            return 0;
        }
    } catch (const Error& e) {
        err << "permlab: error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "permlab: error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace permlab
