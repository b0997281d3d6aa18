// anodiff: batch front end for the Cantor-set / anomalous-diffusion toolkit.
//
// Exit codes: 0 success, 2 argument or domain error, 1 runtime error.
// File outputs are written atomically (temp file + rename); every run that
// writes files also writes a <out>.manifest.json describing it.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "anodiff/cantor.hpp"
#include "anodiff/diffusion.hpp"
#include "anodiff/io.hpp"
#include "anodiff/scaling.hpp"
#include "anodiff/ultrametric.hpp"
#include "anodiff/walker.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using anodiff::io::g17;
using json = nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out;
    std::string config;
};

// Flat key=value config file: '#' starts a comment, duplicate keys are an
// error, command-line flags win over file values.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::domain_error("config file not found: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::domain_error("config line " + std::to_string(lineno) +
                                    " is not a key=value pair");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) {
            throw std::domain_error("config line " + std::to_string(lineno) + " has an empty key");
        }
        if (!kv.emplace(key, value).second) {
            throw std::domain_error("duplicate config key: " + key);
        }
    }
    return kv;
}

void emit_line(const std::string& s) { std::cout << s << "\n"; }

std::string json_num(double v) { return g17(v); }

void write_manifest(const std::string& subcommand, const json& params, const GlobalOpts& g,
                    const std::vector<std::string>& outputs, const json& fitted_values) {
    json m;
    m["subcommand"] = subcommand;
    m["params"] = params;
    m["seed"] = g.seed;
    m["workers"] = g.workers;
    m["tool_version"] = kToolVersion;
    m["outputs"] = outputs;
    m["fitted_values"] = fitted_values;
    const std::filesystem::path path = g.out + ".manifest.json";
    anodiff::io::atomic_write(path, [&](std::ostream& os) { os << m.dump(2) << "\n"; });
}

void require_out(const GlobalOpts& g, const char* what) {
    if (g.out.empty()) throw std::domain_error(std::string(what) + " requires --out");
}

// ---- subcommand actions ----------------------------------------------

struct CantorGenOpts {
    double eps0 = 1.0;
    double beta = 0.0;
    int level = 0;
};

void run_cantor_gen(const CantorGenOpts& o, const GlobalOpts& g) {
    require_out(g, "cantor gen");
    const auto params = anodiff::cantor::make_params(o.eps0, o.beta);
    const auto pf = anodiff::cantor::build_prefractal(params, o.level);
    anodiff::io::atomic_write(g.out,
                              [&](std::ostream& os) { anodiff::io::write_prefractal_csv(os, pf); });
    write_manifest("cantor gen", json{{"eps0", o.eps0}, {"beta", o.beta}, {"level", o.level}}, g,
                   {g.out}, json::object());
    emit_line("{\"intervals\": " + std::to_string(pf.intervals.size()) +
              ", \"gaps\": " + std::to_string(pf.gaps.size()) + "}");
}

struct CantorDimOpts {
    double eps0 = 1.0;
    double beta = 0.0;
    int box_level = 0;
    double q = 0.0;
};

void run_cantor_dim(const CantorDimOpts& o, const GlobalOpts&) {
    const auto params = anodiff::cantor::make_params(o.eps0, o.beta);
    std::string line =
        "{\"similarity_dimension\": " + json_num(anodiff::cantor::similarity_dimension(params));
    if (o.box_level > 0) {
        if (o.box_level < 7) throw std::domain_error("--box-level must be at least 7");
        const auto pf = anodiff::cantor::build_prefractal(params, o.box_level);
        std::vector<double> scales;
        for (int k = 2; k <= o.box_level - 4; ++k) {
            scales.push_back(o.eps0 * std::pow(o.beta, k));
        }
        line +=
            ", \"box_estimate\": " + json_num(anodiff::cantor::box_counting_dimension(pf, scales));
    }
    if (o.q != 0.0) {
        line += ", \"measure_preserving_dimension\": " +
                json_num(anodiff::cantor::measure_preserving_dimension(o.q));
    }
    emit_line(line + "}");
}

struct CantorSumcovOpts {
    double eps0 = 1.0;
    double beta = 0.0;
    int level_a = 0;
    int level_b = 0;
};

void run_cantor_sumcov(const CantorSumcovOpts& o, const GlobalOpts&) {
    const auto params = anodiff::cantor::make_params(o.eps0, o.beta);
    const auto a = anodiff::cantor::build_prefractal(params, o.level_a);
    const auto b = anodiff::cantor::build_prefractal(params, o.level_b);
    emit_line("{\"coverage\": " + json_num(anodiff::cantor::minkowski_sum_coverage(a, b)) + "}");
}

struct UmValueOpts {
    double epsilon = 0.0;
    std::optional<double> t;
    std::optional<double> delta;
};

void run_um_value(const UmValueOpts& o, const GlobalOpts&) {
    const auto ctx = anodiff::um::make_scale(o.epsilon);
    if (o.t.has_value() == o.delta.has_value()) {
        throw std::domain_error("give exactly one of --t (numeric) or --delta (exponent form)");
    }
    const auto x = o.t ? anodiff::um::Infinitesimal::numeric(*o.t)
                       : anodiff::um::Infinitesimal::exponent(*o.delta);
    emit_line("{\"valuation\": " + json_num(anodiff::um::valuation(ctx, x)) + "}");
}

struct UmCantorFnOpts {
    double eps0 = 1.0;
    double beta = 0.0;
    std::optional<double> x;
    int samples = 0;
    int depth = 48;
};

void run_um_cantorfn(const UmCantorFnOpts& o, const GlobalOpts& g) {
    const auto params = anodiff::cantor::make_params(o.eps0, o.beta);
    if (o.x) {
        emit_line("{\"x\": " + json_num(*o.x) + ", \"value\": " +
                  json_num(anodiff::um::cantor_function(params, *o.x, o.depth)) + "}");
        return;
    }
    if (o.samples < 2) throw std::domain_error("give --x or --samples >= 2 with --out");
    require_out(g, "um cantorfn --samples");
    anodiff::io::atomic_write(g.out, [&](std::ostream& os) {
        os << "x,phi\n";
        for (int i = 0; i <= o.samples; ++i) {
            const double x = o.eps0 * static_cast<double>(i) / o.samples;
            os << g17(x) << ',' << g17(anodiff::um::cantor_function(params, x, o.depth)) << '\n';
        }
    });
    write_manifest(
        "um cantorfn",
        json{{"eps0", o.eps0}, {"beta", o.beta}, {"samples", o.samples}, {"depth", o.depth}}, g,
        {g.out}, json::object());
    emit_line("{\"samples\": " + std::to_string(o.samples + 1) + "}");
}

void run_scale_sublinear(double epsilon, const GlobalOpts&) {
    emit_line("{\"s_tilde\": " + json_num(anodiff::scaling::sublinear_exponent(epsilon)) +
              ", \"sublinear_scale\": " + json_num(anodiff::scaling::sublinear_scale(epsilon)) +
              "}");
}

void run_scale_classify(double s_space, double s_time, const GlobalOpts&) {
    const auto regime = anodiff::scaling::classify_regime(s_space, s_time);
    emit_line(std::string("{\"regime\": \"") + anodiff::scaling::to_string(regime) +
              "\", \"msd_exponent\": " + json_num(anodiff::scaling::msd_exponent(s_space, s_time)) +
              "}");
}

struct SimulateCtrwOpts {
    double mu = 0.0;
    std::uint64_t walkers = 10000;
    double t_max = 1e4;
    double step_length = 1.0;
};

void run_simulate_ctrw(const SimulateCtrwOpts& o, const GlobalOpts& g) {
    require_out(g, "simulate ctrw");
    const anodiff::walker::CtrwConfig config{o.mu, o.walkers, o.t_max, o.step_length, g.seed};
    const auto result = anodiff::walker::run_ctrw(config, g.workers);
    anodiff::io::atomic_write(
        g.out, [&](std::ostream& os) { anodiff::io::write_msd_csv(os, result.msd); });
    const json fitted{{"exponent", result.fitted_exponent}, {"goodness", result.fit_goodness}};
    write_manifest(
        "simulate ctrw",
        json{{"mu", o.mu}, {"walkers", o.walkers}, {"tmax", o.t_max}, {"step-length", o.step_length}},
        g, {g.out}, fitted);
    emit_line("{\"exponent\": " + json_num(result.fitted_exponent) +
              ", \"goodness\": " + json_num(result.fit_goodness) + "}");
}

struct SimulateBarrierOpts {
    double eps0 = 1.0;
    double beta = 0.0;
    int level = 0;
    double theta = 0.0;
    std::uint64_t walkers = 10000;
    std::uint64_t steps = 10000;
    std::string metric = "embedding";
};

void run_simulate_barrier(const SimulateBarrierOpts& o, const GlobalOpts& g) {
    require_out(g, "simulate barrier");
    const auto params = anodiff::cantor::make_params(o.eps0, o.beta);
    anodiff::walker::DisplacementMetric metric;
    if (o.metric == "embedding") {
        metric = anodiff::walker::DisplacementMetric::embedding;
    } else if (o.metric == "lattice") {
        metric = anodiff::walker::DisplacementMetric::lattice;
    } else {
        throw std::domain_error("--metric must be 'embedding' or 'lattice'");
    }
    const anodiff::walker::BarrierWalkConfig config{params,  o.level, o.theta, o.walkers,
                                                    o.steps, g.seed,  metric};
    const auto result = anodiff::walker::run_barrier_walk(config, g.workers);
    anodiff::io::atomic_write(
        g.out, [&](std::ostream& os) { anodiff::io::write_msd_csv(os, result.msd); });
    const json fitted{{"exponent", result.fitted_exponent}, {"goodness", result.fit_goodness}};
    write_manifest("simulate barrier",
                   json{{"eps0", o.eps0},
                        {"beta", o.beta},
                        {"level", o.level},
                        {"theta", o.theta},
                        {"walkers", o.walkers},
                        {"steps", o.steps},
                        {"metric", o.metric}},
                   g, {g.out}, fitted);
    emit_line("{\"exponent\": " + json_num(result.fitted_exponent) +
              ", \"goodness\": " + json_num(result.fit_goodness) + "}");
}

struct FitMsdOpts {
    std::string in;
    std::string model = "power";
    std::optional<double> t_min;
    std::optional<double> t_max;
    bool weighted = false;
};

void run_fit_msd(const FitMsdOpts& o, const GlobalOpts&) {
    if (o.model != "power") throw std::domain_error("unsupported fit model: " + o.model);
    std::ifstream is(o.in);
    if (!is) throw std::domain_error("cannot open msd csv: " + o.in);
    const auto series = anodiff::io::read_msd_csv(is);
    std::optional<anodiff::scaling::FitWindow> window;
    if (o.t_min || o.t_max) {
        if (!(o.t_min && o.t_max)) throw std::domain_error("--tmin and --tmax go together");
        window = anodiff::scaling::FitWindow{*o.t_min, *o.t_max};
    }
    const auto fit = anodiff::scaling::fit_power_law(series, window, o.weighted);
    emit_line("{\"exponent\": " + json_num(fit.exponent) +
              ", \"prefactor\": " + json_num(fit.prefactor) +
              ", \"goodness\": " + json_num(fit.goodness) +
              ", \"n_points\": " + std::to_string(fit.n_points) + "}");
}

struct PropOpts {
    double amplitude = 1.0;
    double lambda = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
    double nu = 0.0;
};

struct PropEvalOpts {
    PropOpts p;
    std::optional<double> x;
    std::optional<double> t;
    double u_min = -3.0;
    double u_max = 3.0;
    double du = 0.01;
    std::vector<double> taus;
};

void run_prop_eval(const PropEvalOpts& o, const GlobalOpts& g) {
    const auto params = anodiff::diffusion::make_propagator_params(o.p.amplitude, o.p.lambda,
                                                                   o.p.alpha, o.p.beta, o.p.nu);
    if (o.x || o.t) {
        if (!(o.x && o.t)) throw std::domain_error("point evaluation needs both --x and --t");
        emit_line("{\"W\": " +
                  json_num(anodiff::diffusion::stretched_propagator(*o.x, *o.t, params)) + "}");
        return;
    }
    require_out(g, "prop eval slice dump");
    const std::vector<double> taus = o.taus.empty() ? std::vector<double>{1.0} : o.taus;
    std::vector<double> cu, ct, cw;
    for (double tau : taus) {
        if (!(tau > 0.0)) throw std::domain_error("tau must be positive");
        const double t_tilde = std::pow(tau, 1.0 / params.beta);
        for (double u = o.u_min; u <= o.u_max + 1e-12; u += o.du) {
            const double x_tilde = std::pow(std::abs(u), 1.0 / params.alpha);
            cu.push_back(u);
            ct.push_back(tau);
            cw.push_back(anodiff::diffusion::stretched_propagator(x_tilde, t_tilde, params));
        }
    }
    anodiff::io::atomic_write(g.out, [&](std::ostream& os) {
        anodiff::io::write_propagator_slice_csv(os, cu, ct, cw);
    });
    write_manifest("prop eval",
                   json{{"amplitude", o.p.amplitude},
                        {"lambda", o.p.lambda},
                        {"alpha", o.p.alpha},
                        {"beta", o.p.beta},
                        {"nu", o.p.nu},
                        {"umin", o.u_min},
                        {"umax", o.u_max},
                        {"du", o.du},
                        {"tau", taus}},
                   g, {g.out}, json::object());
    emit_line("{\"rows\": " + std::to_string(cu.size()) + "}");
}

struct PropResidualOpts {
    PropOpts p;
    double u_min = -3.0;
    double u_max = 3.0;
    double du = 1e-3;
    double tau_min = 0.5;
    double tau_max = 2.0;
    double dtau = 1e-3;
};

void run_prop_residual(const PropResidualOpts& o, const GlobalOpts&) {
    const auto params = anodiff::diffusion::make_propagator_params(o.p.amplitude, o.p.lambda,
                                                                   o.p.alpha, o.p.beta, o.p.nu);
    const auto grid = anodiff::diffusion::make_uniform_grid(o.u_min, o.u_max, o.du, o.tau_min,
                                                            o.tau_max, o.dtau);
    emit_line("{\"max_residual\": " +
              json_num(anodiff::diffusion::deformed_heat_residual(params, grid)) + "}");
}

struct PropMsdOpts {
    PropOpts p;
    std::vector<double> taus;
};

void run_prop_msd(const PropMsdOpts& o, const GlobalOpts&) {
    const auto params = anodiff::diffusion::make_propagator_params(o.p.amplitude, o.p.lambda,
                                                                   o.p.alpha, o.p.beta, o.p.nu);
    const std::vector<double> taus = o.taus.empty() ? std::vector<double>{0.5, 1.0, 2.0} : o.taus;
    const auto moments = anodiff::diffusion::propagator_msd(params, taus);
    std::string ts, ms;
    for (const auto& [tau, m2] : moments) {
        if (!ts.empty()) {
            ts += ", ";
            ms += ", ";
        }
        ts += json_num(tau);
        ms += json_num(m2);
    }
    emit_line("{\"taus\": [" + ts + "], \"msd\": [" + ms +
              "], \"c\": " + json_num(moments.front().second / moments.front().first) + "}");
}

void add_prop_flags(CLI::App* cmd, PropOpts& p, bool lambda_required) {
    cmd->add_option("--amplitude", p.amplitude, "normalization A");
    auto* l = cmd->add_option("--lambda", p.lambda, "rate constant");
    if (lambda_required) l->required();
    cmd->add_option("--alpha", p.alpha, "inverse spatial Hausdorff dimension");
    cmd->add_option("--beta", p.beta, "inverse temporal Hausdorff dimension");
    cmd->add_option("--nu", p.nu, "stretching valuation (constant per slice)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cantor-set and anomalous-diffusion toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
    app.add_option("--workers", g.workers, "worker thread count")->capture_default_str();
    app.add_option("--out", g.out, "output file path");
    app.add_option("--config", g.config, "flat key=value config file");

    CantorGenOpts gen;
    CantorDimOpts dim;
    CantorSumcovOpts sumcov;
    UmValueOpts umval;
    UmCantorFnOpts umfn;
    double sub_eps = 0.0;
    double cls_space = 0.0, cls_time = 0.0;
    SimulateCtrwOpts ctrw;
    SimulateBarrierOpts barrier;
    FitMsdOpts fit;
    PropEvalOpts peval;
    PropResidualOpts pres;
    PropMsdOpts pmsd;

    auto* cantor_cmd = app.add_subcommand("cantor", "prefractal constructions")->require_subcommand(1);
    auto* c_gen = cantor_cmd->add_subcommand("gen", "emit a prefractal as CSV");
    c_gen->add_option("--eps0", gen.eps0, "base interval length")->capture_default_str();
    c_gen->add_option("--beta", gen.beta, "contraction ratio in (0, 1/2)")->required();
    c_gen->add_option("--level", gen.level, "construction level")->required();
    c_gen->callback([&] { run_cantor_gen(gen, g); });

    auto* c_dim = cantor_cmd->add_subcommand("dim", "similarity / box-counting dimension");
    c_dim->add_option("--eps0", dim.eps0)->capture_default_str();
    c_dim->add_option("--beta", dim.beta)->required();
    c_dim->add_option("--box-level", dim.box_level, "also estimate by box counting at this level");
    c_dim->add_option("--q", dim.q, "also report the measure-preserving dimension log3/log q");
    c_dim->callback([&] { run_cantor_dim(dim, g); });

    auto* c_cov = cantor_cmd->add_subcommand("sumcov", "Minkowski sum coverage of [0, 2 eps0]");
    c_cov->add_option("--eps0", sumcov.eps0)->capture_default_str();
    c_cov->add_option("--beta", sumcov.beta)->required();
    c_cov->add_option("--level-a", sumcov.level_a)->required();
    c_cov->add_option("--level-b", sumcov.level_b)->required();
    c_cov->callback([&] { run_cantor_sumcov(sumcov, g); });

    auto* um_cmd = app.add_subcommand("um", "ultrametric valuations")->require_subcommand(1);
    auto* u_val = um_cmd->add_subcommand("value", "scale-invariant absolute value");
    u_val->add_option("--epsilon", umval.epsilon, "resolution scale in (0,1)")->required();
    u_val->add_option("--t", umval.t, "numeric infinitesimal");
    u_val->add_option("--delta", umval.delta, "exponent-form infinitesimal");
    u_val->callback([&] { run_um_value(umval, g); });

    auto* u_fn = um_cmd->add_subcommand("cantorfn", "devil's staircase values");
    u_fn->add_option("--eps0", umfn.eps0)->capture_default_str();
    u_fn->add_option("--beta", umfn.beta)->required();
    u_fn->add_option("--x", umfn.x, "single evaluation point");
    u_fn->add_option("--samples", umfn.samples, "dump a uniform grid of this many steps");
    u_fn->add_option("--depth", umfn.depth)->capture_default_str();
    u_fn->callback([&] { run_um_cantorfn(umfn, g); });

    auto* scale_cmd = app.add_subcommand("scale", "sublinear scaling laws")->require_subcommand(1);
    auto* s_sub = scale_cmd->add_subcommand("sublinear", "effective exponent and scale");
    s_sub->add_option("--epsilon", sub_eps)->required();
    s_sub->callback([&] { run_scale_sublinear(sub_eps, g); });

    auto* s_cls = scale_cmd->add_subcommand("classify", "diffusion regime from dimensions");
    s_cls->add_option("--s-space", cls_space, "spatial Hausdorff dimension")->required();
    s_cls->add_option("--s-time", cls_time, "temporal Hausdorff dimension")->required();
    s_cls->callback([&] { run_scale_classify(cls_space, cls_time, g); });

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo walkers")->require_subcommand(1);
    auto* s_ctrw = sim_cmd->add_subcommand("ctrw", "heavy-tailed waiting-time walk");
    s_ctrw->add_option("--mu", ctrw.mu, "waiting-time tail index in (0,1]")->required();
    s_ctrw->add_option("--walkers", ctrw.walkers)->capture_default_str();
    s_ctrw->add_option("--tmax", ctrw.t_max)->capture_default_str();
    s_ctrw->add_option("--step-length", ctrw.step_length)->capture_default_str();
    s_ctrw->callback([&] { run_simulate_ctrw(ctrw, g); });

    auto* s_bar = sim_cmd->add_subcommand("barrier", "hierarchical-barrier lattice walk");
    s_bar->add_option("--eps0", barrier.eps0)->capture_default_str();
    s_bar->add_option("--beta", barrier.beta)->required();
    s_bar->add_option("--level", barrier.level)->required();
    s_bar->add_option("--theta", barrier.theta, "barrier-penalty exponent")->required();
    s_bar->add_option("--walkers", barrier.walkers)->capture_default_str();
    s_bar->add_option("--steps", barrier.steps)->capture_default_str();
    s_bar->add_option("--metric", barrier.metric, "displacement metric: embedding | lattice")
        ->capture_default_str();
    s_bar->callback([&] { run_simulate_barrier(barrier, g); });

    auto* fit_cmd = app.add_subcommand("fit", "fit empirical series")->require_subcommand(1);
    auto* f_msd = fit_cmd->add_subcommand("msd", "log-log power-law fit of an msd CSV");
    f_msd->add_option("--in", fit.in, "input CSV (t,msd,stderr,n)")->required();
    f_msd->add_option("--model", fit.model)->capture_default_str();
    f_msd->add_option("--tmin", fit.t_min, "fit window start");
    f_msd->add_option("--tmax", fit.t_max, "fit window end");
    f_msd->add_flag("--weighted", fit.weighted, "inverse-variance weights from stderr");
    f_msd->callback([&] { run_fit_msd(fit, g); });

    auto* prop_cmd = app.add_subcommand("prop", "stretched-exponential propagator")->require_subcommand(1);
    auto* p_eval = prop_cmd->add_subcommand("eval", "point value or slice CSV");
    add_prop_flags(p_eval, peval.p, true);
    p_eval->add_option("--x", peval.x, "spatial point (with --t)");
    p_eval->add_option("--t", peval.t, "time point (with --x)");
    p_eval->add_option("--umin", peval.u_min)->capture_default_str();
    p_eval->add_option("--umax", peval.u_max)->capture_default_str();
    p_eval->add_option("--du", peval.du)->capture_default_str();
    p_eval->add_option("--tau", peval.taus, "slice times (repeatable)");
    p_eval->callback([&] { run_prop_eval(peval, g); });

    auto* p_res = prop_cmd->add_subcommand("residual", "deformed heat-equation residual");
    add_prop_flags(p_res, pres.p, true);
    p_res->add_option("--umin", pres.u_min)->capture_default_str();
    p_res->add_option("--umax", pres.u_max)->capture_default_str();
    p_res->add_option("--du", pres.du)->capture_default_str();
    p_res->add_option("--taumin", pres.tau_min)->capture_default_str();
    p_res->add_option("--taumax", pres.tau_max)->capture_default_str();
    p_res->add_option("--dtau", pres.dtau)->capture_default_str();
    p_res->callback([&] { run_prop_residual(pres, g); });

    auto* p_msd = prop_cmd->add_subcommand("msd", "second moments of normalized slices");
    add_prop_flags(p_msd, pmsd.p, true);
    p_msd->add_option("--tau", pmsd.taus, "slice times (repeatable)");
    p_msd->callback([&] { run_prop_msd(pmsd, g); });

    // Config file pre-pass: inject file values as flags unless the flag is
    // already present on the command line.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::string config_path;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) {
                config_path = args[i + 1];
            } else if (args[i].rfind("--config=", 0) == 0) {
                config_path = args[i].substr(9);
            }
        }
        if (!config_path.empty()) {
            const auto kv = load_config(config_path);
            for (const auto& [key, value] : kv) {
                const std::string flag = "--" + key;
                bool present = false;
                for (const std::string& a : args) {
                    if (a == flag || a.rfind(flag + "=", 0) == 0) {
                        present = true;
                        break;
                    }
                }
                if (!present) {
                    args.push_back(flag);
                    args.push_back(value);
                }
            }
        }

        std::vector<const char*> cargv;
        cargv.push_back(argv[0]);
        for (const std::string& a : args) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
