#include "causalflow/cli.hpp"

#include "causalflow/ar_analytic.hpp"
#include "causalflow/errors.hpp"
#include "causalflow/inference.hpp"
#include "causalflow/io.hpp"
#include "causalflow/measures.hpp"
#include "causalflow/presets.hpp"
#include "causalflow/simulator.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

namespace causalflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    out << text;
}

void emit(const json& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << j.dump(2) << '\n';
    } else {
        write_text(out_path, j.dump(2) + "\n");
    }
}

std::vector<std::string> others(const std::vector<std::string>& names, const std::string& a, const std::string& b) {
    std::vector<std::string> out;
    for (const auto& n : names) {
        if (n != a && n != b) out.push_back(n);
    }
    return out;
}

std::optional<ConditioningMode> parse_mode(const std::string& s) {
    if (s == "none") return std::nullopt;
    if (s == "full") return ConditioningMode::Full;
    if (s == "causal") return ConditioningMode::Causal;
    if (s == "delayed") return ConditioningMode::Delayed;
    throw Error(ErrorCode::InvalidInput, "unknown conditioning mode '" + s + "'");
}

std::vector<Conditioner> conditioners(const std::vector<std::string>& names, std::optional<ConditioningMode> mode) {
    std::vector<Conditioner> out;
    if (!mode) return out;
    for (const auto& n : names) out.push_back({n, *mode});
    return out;
}

json conditioning_json(const std::vector<Conditioner>& cond) {
    json out = json::array();
    for (const auto& c : cond) out.push_back({{"channel", c.channel}, {"mode", to_string(c.mode)}});
    return out;
}

json rate_options_json(const RateOptions& r) {
    return {{"initial_horizon", r.initial_horizon}, {"tolerance", r.tolerance}, {"max_horizon", r.max_horizon}};
}

// ---------------------------------------------------------------------------
// measure

struct MeasureArgs {
    std::string spec_path;
    std::string csv_path;
    std::string kind = "di";
    std::string source;
    std::string target;
    std::vector<std::string> cond;
    std::string cond_mode = "delayed";
    int horizon = 0;
    bool rate = false;
    int k = 0;
    int l = 0;
    int lag = 5;
    RateOptions rate_options;
    bool bits = false;
    std::string out;
};

MeasureReport finite_measure(const GaussianJointModel& model, const MeasureArgs& a,
                             const std::vector<Conditioner>& cond) {
    if (a.horizon < 1) throw Error(ErrorCode::InvalidInput, "--horizon is required for finite-horizon measures");
    if (a.kind == "mi") return mutual_information_block(model, a.source, a.target, a.horizon, cond);
    if (a.kind == "di") return directed_information(model, a.source, a.target, a.horizon, cond);
    if (a.kind == "delayed-di") return delayed_directed_information(model, a.source, a.target, a.horizon, cond);
    if (a.kind == "iie") return instantaneous_information_exchange(model, a.source, a.target, a.horizon, cond);
    if (a.kind == "te") {
        if (!cond.empty()) throw Error(ErrorCode::InvalidInput, "te takes no conditioning channels");
        return transfer_entropy(model, a.source, a.target, a.k > 0 ? a.k : a.horizon, a.l > 0 ? a.l : a.horizon,
                                a.horizon);
    }
    throw Error(ErrorCode::InvalidInput, "unknown measure kind '" + a.kind + "'");
}

MeasureKind rate_kind(const std::string& kind) {
    if (kind == "mi") return MeasureKind::MI;
    if (kind == "di") return MeasureKind::DI;
    if (kind == "te" || kind == "delayed-di") return MeasureKind::TE;
    if (kind == "iie") return MeasureKind::IIE;
    throw Error(ErrorCode::InvalidInput, "unknown measure kind '" + kind + "'");
}

int run_measure(const MeasureArgs& a, std::ostream& out) {
    if (a.spec_path.empty() == a.csv_path.empty()) throw Error(ErrorCode::InvalidInput, "give exactly one of --spec, --csv");
    const auto mode = parse_mode(a.cond_mode);
    if (!a.cond.empty() && !mode) throw Error(ErrorCode::InvalidInput, "--cond channels given with --cond-mode none");
    const auto cond = conditioners(a.cond, mode);
    const bool geweke = a.kind == "geweke-fwd" || a.kind == "geweke-inst";
    const auto gkind = a.kind == "geweke-fwd" ? GewekeKind::Forward : GewekeKind::Instantaneous;
    const auto gmode = mode == ConditioningMode::Full ? ConditioningMode::Full : ConditioningMode::Causal;

    MeasureReport report;
    if (!a.spec_path.empty()) {
        const auto spec = load_spec(a.spec_path);
        if (geweke) {
            report = geweke_index(spec, gkind, a.source, a.target, a.cond, gmode, a.rate_options);
        } else if (a.rate) {
            report = measure_rate(spec, rate_kind(a.kind), a.source, a.target, cond, a.rate_options);
        } else {
            if (a.horizon < 1) throw Error(ErrorCode::InvalidInput, "--horizon is required unless --rate is given");
            report = finite_measure(build_window_model(spec, a.horizon), a, cond);
        }
    } else {
        const auto panel = load_csv(a.csv_path);
        if (geweke) {
            report = geweke_index(panel, gkind, a.source, a.target, a.cond, gmode, EmpiricalOptions{a.lag});
        } else {
            if (a.rate) throw Error(ErrorCode::InvalidInput, "--rate needs --spec; use geweke kinds on data");
            if (a.horizon < 1) throw Error(ErrorCode::InvalidInput, "--horizon is required");
            const std::vector<TimeSeriesPanel> panels{panel};
            report = finite_measure(estimate_window_covariance(panels, a.horizon), a, cond);
            report.method = Method::Empirical;
        }
    }

    json j = report_to_json(report, a.bits);
    j["config"] = {{"spec", a.spec_path}, {"csv", a.csv_path},    {"kind", a.kind},
                   {"cond", a.cond},      {"cond_mode", a.cond_mode}, {"horizon", a.horizon},
                   {"rate", a.rate},      {"k", a.k},              {"l", a.l},
                   {"lag", a.lag},        {"bits", a.bits},        {"rate_options", rate_options_json(a.rate_options)}};
    emit(j, a.out, out);
    return 0;
}

// ---------------------------------------------------------------------------
// rates

struct RatesArgs {
    std::string spec_path;
    std::string cond_mode = "delayed";
    std::string format = "json";
    RateOptions rate_options;
    bool bits = false;
    std::string out;
};

int run_rates(const RatesArgs& a, std::ostream& out) {
    const auto spec = load_spec(a.spec_path);
    const auto mode = parse_mode(a.cond_mode);
    const auto& names = spec.channel_names();
    const double unit = a.bits ? 1.0 / std::numbers::ln2 : 1.0;

    json pairs = json::array();
    for (const auto& x : names) {
        for (const auto& y : names) {
            if (x == y) continue;
            const auto cond = conditioners(others(names, x, y), mode);
            const auto di = measure_rate(spec, MeasureKind::DI, x, y, cond, a.rate_options);
            const auto te = measure_rate(spec, MeasureKind::TE, x, y, cond, a.rate_options);
            const auto iie = measure_rate(spec, MeasureKind::IIE, x, y, cond, a.rate_options);
            pairs.push_back({{"source", x},
                             {"target", y},
                             {"conditioning", conditioning_json(cond)},
                             {"di_rate", di.reported_nats() * unit},
                             {"te_rate", te.reported_nats() * unit},
                             {"iie_rate", iie.reported_nats() * unit},
                             {"horizon_reached", std::max({di.horizon_reached, te.horizon_reached, iie.horizon_reached})}});
        }
    }

    json j = {{"schema", std::string(kSchema)},
              {"unit", a.bits ? "bits" : "nats"},
              {"pairs", pairs},
              {"config", {{"spec", a.spec_path}, {"cond_mode", a.cond_mode}, {"rate_options", rate_options_json(a.rate_options)}}}};
    if (spec.dimension() == 2) {
        const auto cf = bivariate_rates(spec);
        j["closed_forms"] = {{"source", names[0]},
                             {"target", names[1]},
                             {"di_rate_xy", cf.di_rate_xy * unit},
                             {"di_rate_yx", cf.di_rate_yx * unit},
                             {"te_rate_xy", cf.te_rate_xy * unit},
                             {"te_rate_yx", cf.te_rate_yx * unit},
                             {"iie_rate", cf.iie_rate * unit}};
    }

    if (a.format == "table") {
        std::ostringstream t;
        t << std::left << std::setw(10) << "source" << std::setw(10) << "target" << std::right << std::setw(14)
          << "di_rate" << std::setw(14) << "te_rate" << std::setw(14) << "iie_rate" << '\n';
        t << std::setprecision(8) << std::fixed;
        for (const auto& p : pairs) {
            t << std::left << std::setw(10) << p["source"].get<std::string>() << std::setw(10)
              << p["target"].get<std::string>() << std::right << std::setw(14) << p["di_rate"].get<double>()
              << std::setw(14) << p["te_rate"].get<double>() << std::setw(14) << p["iie_rate"].get<double>() << '\n';
        }
        if (a.out.empty()) out << t.str();
        else write_text(a.out, t.str());
        return 0;
    }
    emit(j, a.out, out);
    return 0;
}

// ---------------------------------------------------------------------------
// infer

struct InferArgs {
    std::string spec_path;
    std::string csv_path;
    std::string policy = "conditioned";
    AnalyticInferenceOptions analytic;
    EmpiricalInferenceOptions empirical;
    bool bits = false;
    std::string out;
};

ConditioningPolicy parse_policy(const std::string& s) {
    if (s == "pairwise") return ConditioningPolicy::Pairwise;
    if (s == "conditioned" || s == "causally_conditioned") return ConditioningPolicy::CausallyConditioned;
    throw Error(ErrorCode::InvalidInput, "unknown policy '" + s + "'");
}

int run_infer(const InferArgs& a, std::ostream& out) {
    if (a.spec_path.empty() == a.csv_path.empty()) throw Error(ErrorCode::InvalidInput, "give exactly one of --spec, --csv");
    const auto policy = parse_policy(a.policy);
    json config = {{"spec", a.spec_path}, {"csv", a.csv_path}, {"policy", to_string(policy)}};
    std::optional<CausalGraph> graph;
    if (!a.spec_path.empty()) {
        graph = infer_graph(load_spec(a.spec_path), policy, a.analytic);
        config["edge_threshold"] = a.analytic.edge_threshold;
        config["rate_options"] = rate_options_json(a.analytic.rate);
    } else {
        graph = infer_graph(load_csv(a.csv_path), policy, a.empirical);
        config["alpha"] = a.empirical.alpha;
        config["surrogate_count"] = a.empirical.surrogate_count;
        config["lag"] = a.empirical.lag;
        config["seed"] = a.empirical.seed;
    }
    json j = graph_to_json(*graph, a.bits);
    j["config"] = config;
    if (a.out.empty()) {
        out << j.dump(2) << '\n';
    } else {
        fs::create_directories(a.out);
        write_text(fs::path(a.out) / "graph.json", j.dump(2) + "\n");
        write_text(fs::path(a.out) / "graph.dot", graph_to_dot(*graph, a.bits));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string spec_path;
    SimulationConfig config;
    std::string out;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto spec = load_spec(a.spec_path);
    const auto ensemble = simulate_ensemble(spec, a.config);
    json manifest = {{"schema", std::string(kSchema)},
                     {"spec", spec_to_json(spec)},
                     {"config",
                      {{"path_length", a.config.path_length},
                       {"ensemble_size", a.config.ensemble_size},
                       {"seed", a.config.seed},
                       {"stationary_init", a.config.stationary_init},
                       {"burn_in", a.config.burn_in}}},
                     {"files", json::array()}};
    if (a.config.ensemble_size == 1) {
        if (a.out.empty()) {
            write_csv(out, ensemble.panel(0));
            return 0;
        }
        const fs::path path(a.out);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        save_csv(path, ensemble.panel(0));
        return 0;
    }
    if (a.out.empty()) throw Error(ErrorCode::InvalidInput, "--out directory is required for ensembles");
    fs::create_directories(a.out);
    for (int r = 0; r < ensemble.size(); ++r) {
        char name[32];
        std::snprintf(name, sizeof(name), "path_%05d.csv", r);
        save_csv(fs::path(a.out) / name, ensemble.panel(r));
        manifest["files"].push_back(name);
    }
    write_text(fs::path(a.out) / "manifest.json", manifest.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
    std::string preset;
    std::uint64_t seed = 7;
    int empirical_length = 2000;
    std::string out;
};

json edge_list(const CausalGraph& g) {
    json dyn = json::array();
    for (const auto& e : g.dynamic_edges()) dyn.push_back(e.from + "->" + e.to);
    json inst = json::array();
    for (const auto& e : g.instantaneous_edges()) inst.push_back(e.first + "--" + e.second);
    return {{"dynamic", dyn}, {"instantaneous", inst}};
}

json edge_difference(const CausalGraph& a, const CausalGraph& b) {
    json only = json::array();
    for (const auto& e : a.dynamic_edges()) {
        if (!b.has_dynamic_edge(e.from, e.to)) only.push_back(e.from + "->" + e.to);
    }
    for (const auto& e : a.instantaneous_edges()) {
        if (!b.has_instantaneous_edge(e.first, e.second)) only.push_back(e.first + "--" + e.second);
    }
    return only;
}

json reproduce_fig2(const ReproduceArgs& a) {
    const auto spec = presets::chain_case_a(0.0);
    CausalGraph truth(spec.channel_names(), ConditioningPolicy::CausallyConditioned);
    truth.add_dynamic_edge("x", "z", 0.0);
    truth.add_dynamic_edge("z", "y", 0.0);

    const auto conditioned = infer_graph(spec, ConditioningPolicy::CausallyConditioned);
    const auto pairwise = infer_graph(spec, ConditioningPolicy::Pairwise);

    SimulationConfig sim;
    sim.path_length = a.empirical_length;
    sim.seed = a.seed;
    const auto panel = simulate(spec, sim);
    EmpiricalInferenceOptions eopt;
    eopt.seed = a.seed;
    const auto emp_conditioned = infer_graph(panel, ConditioningPolicy::CausallyConditioned, eopt);
    const auto emp_pairwise = infer_graph(panel, ConditioningPolicy::Pairwise, eopt);

    if (!a.out.empty()) {
        fs::create_directories(a.out);
        const fs::path dir(a.out);
        write_text(dir / "truth.dot", graph_to_dot(truth));
        write_text(dir / "conditioned.dot", graph_to_dot(conditioned));
        write_text(dir / "pairwise.dot", graph_to_dot(pairwise));
        write_text(dir / "empirical_conditioned.dot", graph_to_dot(emp_conditioned));
        write_text(dir / "empirical_pairwise.dot", graph_to_dot(emp_pairwise));
        json graphs = {{"schema", std::string(kSchema)},
                       {"conditioned", graph_to_json(conditioned)},
                       {"pairwise", graph_to_json(pairwise)},
                       {"empirical_conditioned", graph_to_json(emp_conditioned)},
                       {"empirical_pairwise", graph_to_json(emp_pairwise)}};
        write_text(dir / "graphs.json", graphs.dump(2) + "\n");
    }
    return {{"schema", std::string(kSchema)},
            {"preset", "fig2"},
            {"spec", spec_to_json(spec)},
            {"truth", edge_list(truth)},
            {"analytic",
             {{"conditioned", edge_list(conditioned)},
              {"pairwise", edge_list(pairwise)},
              {"conditioned_matches_truth", conditioned.same_edges(truth)},
              {"pairwise_matches_truth", pairwise.same_edges(truth)},
              {"only_in_pairwise", edge_difference(pairwise, conditioned)},
              {"only_in_conditioned", edge_difference(conditioned, pairwise)}}},
            {"empirical",
             {{"conditioned", edge_list(emp_conditioned)},
              {"pairwise", edge_list(emp_pairwise)},
              {"conditioned_matches_truth", emp_conditioned.same_edges(truth)},
              {"only_in_pairwise", edge_difference(emp_pairwise, emp_conditioned)}}},
            {"config", {{"seed", a.seed}, {"empirical_length", a.empirical_length}, {"alpha", eopt.alpha},
                        {"surrogate_count", eopt.surrogate_count}, {"lag", eopt.lag},
                        {"edge_threshold", AnalyticInferenceOptions{}.edge_threshold}}}};
}

json reproduce_bivariate() {
    const auto spec = presets::bivariate_example();
    json horizons = json::array();
    for (int n = 1; n <= 8; ++n) {
        const auto model = build_window_model(spec, n);
        const auto cf = bivariate_closed_forms(spec, n);
        horizons.push_back({{"n", n},
                            {"numeric",
                             {{"mi", mutual_information_block(model, "x", "y", n).value_nats},
                              {"di_xy", directed_information(model, "x", "y", n).value_nats},
                              {"di_yx", directed_information(model, "y", "x", n).value_nats},
                              {"iie", instantaneous_information_exchange(model, "x", "y", n).value_nats}}},
                            {"closed_form", {{"mi", cf.mi}, {"di_xy", cf.di_xy}, {"di_yx", cf.di_yx}, {"iie", cf.iie}}}});
    }
    const auto cr = bivariate_rates(spec);
    return {{"schema", std::string(kSchema)},
            {"preset", "bivariate"},
            {"spec", spec_to_json(spec)},
            {"horizons", horizons},
            {"rates",
             {{"numeric",
               {{"di_xy", measure_rate(spec, MeasureKind::DI, "x", "y").value_nats},
                {"di_yx", measure_rate(spec, MeasureKind::DI, "y", "x").value_nats},
                {"te_xy", measure_rate(spec, MeasureKind::TE, "x", "y").value_nats},
                {"te_yx", measure_rate(spec, MeasureKind::TE, "y", "x").value_nats},
                {"iie", measure_rate(spec, MeasureKind::IIE, "x", "y").value_nats}}},
              {"closed_form",
               {{"di_xy", cr.di_rate_xy},
                {"di_yx", cr.di_rate_yx},
                {"te_xy", cr.te_rate_xy},
                {"te_yx", cr.te_rate_yx},
                {"iie", cr.iie_rate}}}}}};
}

json reproduce_case(TrivariateCase which) {
    const auto spec = which == TrivariateCase::A ? presets::chain_case_a(0.6) : presets::feedback_case_b(0.4, 0.6);
    const auto closed = trivariate_case_rates(spec, which);
    const double numeric =
        measure_rate(spec, MeasureKind::DI, "y", "x", {{"z", ConditioningMode::Delayed}}).value_nats;
    return {{"schema", std::string(kSchema)},
            {"preset", which == TrivariateCase::A ? "case-a" : "case-b"},
            {"spec", spec_to_json(spec)},
            {"measure", "I_inf(y -> x || Dz)"},
            {"numeric", numeric},
            {"closed_form", closed.cond_di_rate_yx_given_dz},
            {"closed_form_alternate_sign", closed.alternate_sign_value},
            {"discrepancy", numeric - closed.cond_di_rate_yx_given_dz},
            {"discrepancy_alternate_sign", numeric - closed.alternate_sign_value}};
}

int run_reproduce(const ReproduceArgs& a, std::ostream& out) {
    json summary;
    if (a.preset == "fig2") summary = reproduce_fig2(a);
    else if (a.preset == "bivariate") summary = reproduce_bivariate();
    else if (a.preset == "case-a") summary = reproduce_case(TrivariateCase::A);
    else if (a.preset == "case-b") summary = reproduce_case(TrivariateCase::B);
    else throw Error(ErrorCode::InvalidInput, "unknown preset '" + a.preset + "'");

    if (a.out.empty()) {
        out << summary.dump(2) << '\n';
    } else {
        fs::create_directories(a.out);
        write_text(fs::path(a.out) / "summary.json", summary.dump(2) + "\n");
    }
    return 0;
}

void add_rate_flags(CLI::App* cmd, RateOptions& r) {
    cmd->add_option("--rate-tol", r.tolerance, "Cauchy tolerance for rate limits")->capture_default_str();
    cmd->add_option("--rate-start", r.initial_horizon, "first horizon of the doubling sequence")->capture_default_str();
    cmd->add_option("--rate-max", r.max_horizon, "largest horizon tried")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Directed information, transfer entropy and Geweke indices for Gaussian time series", "causalflow"};
    app.require_subcommand(1);

    MeasureArgs measure;
    auto* m = app.add_subcommand("measure", "compute one measure between two channels");
    m->add_option("--spec", measure.spec_path, "AR(1) spec JSON");
    m->add_option("--csv", measure.csv_path, "panel CSV");
    m->add_option("--kind", measure.kind, "mi | di | delayed-di | te | iie | geweke-fwd | geweke-inst")
        ->capture_default_str();
    m->add_option("--source", measure.source, "source channel x")->required();
    m->add_option("--target", measure.target, "target channel y")->required();
    m->add_option("--cond", measure.cond, "conditioning channels")->delimiter(',');
    m->add_option("--cond-mode", measure.cond_mode, "none | full | causal | delayed")->capture_default_str();
    m->add_option("--horizon", measure.horizon, "finite horizon n");
    m->add_flag("--rate", measure.rate, "evaluate the rate limit (spec only)");
    m->add_option("--k", measure.k, "target history length for te (default n)");
    m->add_option("--l", measure.l, "source history length for te (default n)");
    m->add_option("--lag", measure.lag, "regression lag for data")->capture_default_str();
    add_rate_flags(m, measure.rate_options);
    m->add_flag("--bits", measure.bits, "report bits instead of nats");
    m->add_option("--out", measure.out, "output file (default stdout)");

    RatesArgs rates;
    auto* r = app.add_subcommand("rates", "table of DI, TE and IIE rates for every ordered pair");
    r->add_option("--spec", rates.spec_path, "AR(1) spec JSON")->required();
    r->add_option("--cond", rates.cond_mode, "none | full | causal | delayed: how other channels enter")
        ->capture_default_str();
    r->add_option("--format", rates.format, "json | table")->capture_default_str();
    add_rate_flags(r, rates.rate_options);
    r->add_flag("--bits", rates.bits, "report bits instead of nats");
    r->add_option("--out", rates.out, "output file (default stdout)");

    InferArgs infer;
    auto* i = app.add_subcommand("infer", "infer a causal graph");
    i->add_option("--spec", infer.spec_path, "AR(1) spec JSON (analytic path)");
    i->add_option("--csv", infer.csv_path, "panel CSV (empirical path)");
    i->add_option("--policy", infer.policy, "pairwise | conditioned")->capture_default_str();
    i->add_option("--threshold", infer.analytic.edge_threshold, "analytic edge threshold in nats")->capture_default_str();
    add_rate_flags(i, infer.analytic.rate);
    i->add_option("--alpha", infer.empirical.alpha, "surrogate test level")->capture_default_str();
    i->add_option("--surrogates", infer.empirical.surrogate_count, "surrogates per edge")->capture_default_str();
    i->add_option("--lag", infer.empirical.lag, "regression lag")->capture_default_str();
    i->add_option("--seed", infer.empirical.seed, "surrogate seed")->capture_default_str();
    i->add_flag("--bits", infer.bits, "report bits instead of nats");
    i->add_option("--out", infer.out, "output directory for graph.json and graph.dot");

    SimulateArgs simulate_args;
    auto* s = app.add_subcommand("simulate", "simulate sample paths");
    s->add_option("--spec", simulate_args.spec_path, "AR(1) spec JSON")->required();
    s->add_option("--length", simulate_args.config.path_length, "samples per path")->capture_default_str();
    s->add_option("--ensemble", simulate_args.config.ensemble_size, "number of paths")->capture_default_str();
    s->add_option("--seed", simulate_args.config.seed, "PRNG seed")->capture_default_str();
    s->add_option("--burn-in", simulate_args.config.burn_in, "samples discarded with --zero-init");
    bool zero_init = false;
    s->add_flag("--zero-init", zero_init, "start from zero instead of the stationary law");
    s->add_option("--out", simulate_args.out, "CSV file, or directory for ensembles");

    ReproduceArgs reproduce;
    auto* p = app.add_subcommand("reproduce", "run a named experiment preset");
    p->add_option("preset", reproduce.preset, "fig2 | bivariate | case-a | case-b")->required();
    p->add_option("--seed", reproduce.seed, "seed for the empirical part")->capture_default_str();
    p->add_option("--length", reproduce.empirical_length, "simulated samples for the empirical part")
        ->capture_default_str();
    p->add_option("--out", reproduce.out, "output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (*m) return run_measure(measure, out);
        if (*r) return run_rates(rates, out);
        if (*i) return run_infer(infer, out);
        if (*s) {
            simulate_args.config.stationary_init = !zero_init;
            return run_simulate(simulate_args, out);
        }
        if (*p) return run_reproduce(reproduce, out);
    } catch (const Error& e) {
        err << json{{"schema", std::string(kSchema)}, {"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
        return is_numerical(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << json{{"schema", std::string(kSchema)}, {"error", "InvalidInput"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, out, err);
}

}  // namespace causalflow
