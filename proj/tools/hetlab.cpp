// hetlab: simulate conditionally heteroscedastic models, run the
// recursive volatility filter against the truth, estimate stability
// coefficients and drive the sweep experiments.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "hetlab/chaos_map.hpp"
#include "hetlab/config.hpp"
#include "hetlab/coupled_sim.hpp"
#include "hetlab/errors.hpp"
#include "hetlab/experiments.hpp"
#include "hetlab/models.hpp"
#include "hetlab/stability.hpp"
#include "hetlab/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIndeterminate = 4;

struct ModelFlags {
    std::string family;
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
    double alpha0 = 0.0;
    std::vector<double> alphas, betas;
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--model", mf.family, "Model family: garch, egarch or vgarch")
        ->required();
    cmd->add_option("--alpha", mf.alpha, "alpha (egarch/vgarch)");
    cmd->add_option("--beta", mf.beta, "beta (egarch/vgarch)");
    cmd->add_option("--gamma", mf.gamma, "gamma (egarch/vgarch)");
    cmd->add_option("--delta", mf.delta, "delta (egarch/vgarch)");
    cmd->add_option("--alpha0", mf.alpha0, "garch alpha_0");
    cmd->add_option("--alphas", mf.alphas, "garch alpha_1..alpha_p");
    cmd->add_option("--betas", mf.betas, "garch beta_1..beta_q");
}

hetlab::ModelSpec make_model(const ModelFlags& mf) {
    hetlab::ModelSpec model;
    if (mf.family == "garch") {
        model = hetlab::GarchParams{mf.alpha0, mf.alphas, mf.betas};
    } else if (mf.family == "egarch") {
        model = hetlab::EgarchParams{mf.alpha, mf.beta, mf.gamma, mf.delta};
    } else if (mf.family == "vgarch") {
        model = hetlab::VgarchParams{mf.alpha, mf.beta, mf.gamma, mf.delta};
    } else {
        throw hetlab::ConfigError("unknown model family: " + mf.family);
    }
    hetlab::validate(model);
    return model;
}

hetlab::InitMode parse_init(const std::string& s) {
    if (s == "sample-mean" || s == "sample_mean") return hetlab::InitSampleMean{};
    const std::string prefix = "constant:";
    if (s.rfind(prefix, 0) == 0) {
        const double v = std::stod(s.substr(prefix.size()));
        return hetlab::InitConstant{v};
    }
    throw hetlab::ConfigError("init must be constant:<s2> or sample-mean, got " + s);
}

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("HETLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void write_csv_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw hetlab::ConfigError("cannot write output file: " + path);
    os << body;
}

void emit_manifest(const CLI::App& app, const CLI::App* cmd, const std::string& out,
                   double wall_seconds) {
    hetlab::Manifest m;
    m.subcommand = cmd->get_name();
    m.config_body = app.config_to_str(false, false);
    m.outputs = {out};
    m.wall_seconds = wall_seconds;
    hetlab::write_manifest(out + ".manifest", m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heteroscedastic volatility-filter laboratory"};
    app.set_version_flag("--version", hetlab::kVersion);
    app.set_config("--config", "", "Config file ([subcommand] sections, key = value)");
    app.require_subcommand(1);
    app.allow_config_extras(false);

    unsigned threads_flag = 0;
    app.add_option("--threads", threads_flag,
                   "Worker threads (default: HETLAB_THREADS or hardware)");

    // ---- simulate ----------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Simulate a coupled (true, filter) path");
    sim->configurable();
    sim->fallthrough();
    ModelFlags sim_model;
    add_model_flags(sim, sim_model);
    std::string sim_dist = "normal", sim_init = "constant:1.0", sim_out;
    std::size_t sim_steps = 1000, sim_burn = 10000, sim_record = 1;
    std::uint64_t sim_seed = 0;
    bool sim_coords = false;
    sim->add_option("--dist", sim_dist, "normal, exp_mixture or rademacher");
    sim->add_option("--steps", sim_steps, "Steps to emit")->required();
    sim->add_option("--burn-in", sim_burn, "Burn-in steps");
    sim->add_option("--init", sim_init, "constant:<s2> or sample-mean");
    sim->add_option("--record-every", sim_record, "Thinning stride");
    sim->add_option("--seed", sim_seed, "Master seed");
    sim->add_option("--out", sim_out, "Output CSV path")->required();
    sim->add_flag("--coords", sim_coords,
                  "Evolve the transformed (z, d) coordinates (egarch/vgarch)");

    // ---- lambda ------------------------------------------------------
    auto* lam = app.add_subcommand("lambda", "Estimate the stability coefficient");
    lam->configurable();
    lam->fallthrough();
    ModelFlags lam_model;
    add_model_flags(lam, lam_model);
    std::string lam_dist = "normal", lam_method = "auto", lam_out;
    std::size_t lam_budget = 1000000, lam_burn = 10000;
    std::uint64_t lam_seed = 0;
    bool lam_strict = false;
    lam->add_option("--dist", lam_dist, "normal, exp_mixture or rademacher");
    lam->add_option("--method", lam_method,
                    "auto, closed-form, ergodic or quadrature");
    lam->add_option("--budget", lam_budget, "MC draws / path length");
    lam->add_option("--burn-in", lam_burn, "Burn-in for the ergodic route");
    lam->add_option("--seed", lam_seed, "Master seed");
    lam->add_option("--out", lam_out, "Optional CSV output path");
    lam->add_flag("--strict", lam_strict,
                  "Exit 4 when the verdict is indeterminate");

    // ---- heatmap -----------------------------------------------------
    auto* heat = app.add_subcommand("heatmap", "Lambda over a 2-D parameter grid");
    heat->configurable();
    heat->fallthrough();
    ModelFlags heat_model;
    std::string heat_family;
    heat->add_option("--family", heat_family, "garch, egarch or vgarch")->required();
    heat->add_option("--alpha", heat_model.alpha, "fixed alpha");
    heat->add_option("--beta", heat_model.beta, "fixed beta");
    heat->add_option("--gamma", heat_model.gamma, "fixed gamma");
    heat->add_option("--delta", heat_model.delta, "fixed delta");
    heat->add_option("--alpha0", heat_model.alpha0, "fixed garch alpha_0");
    std::string heat_axis1, heat_axis2, heat_dist = "normal", heat_out;
    std::size_t heat_budget = 100000;
    std::uint64_t heat_seed = 0;
    heat->add_option("--axis1", heat_axis1, "Sweep axis as name:min:max:steps")
        ->required();
    heat->add_option("--axis2", heat_axis2, "Second sweep axis")->required();
    heat->add_option("--dist", heat_dist, "normal, exp_mixture or rademacher");
    heat->add_option("--budget", heat_budget, "Per-cell MC budget");
    heat->add_option("--seed", heat_seed, "Base seed");
    heat->add_option("--out", heat_out, "Output CSV path")->required();

    // ---- bifurcation -------------------------------------------------
    auto* bif = app.add_subcommand("bifurcation", "Deterministic-map orbit diagram");
    bif->configurable();
    bif->fallthrough();
    std::string bif_variant = "derived", bif_out;
    double bif_alpha = 0.0, bif_beta = 0.5, bif_gmin = 0.1, bif_gmax = 8.0,
           bif_x0 = 0.1;
    std::size_t bif_steps = 400, bif_transient = 10000, bif_keep = 512;
    bif->add_option("--variant", bif_variant, "literal or derived");
    bif->add_option("--alpha", bif_alpha, "alpha (literal variant)");
    bif->add_option("--beta", bif_beta, "beta");
    bif->add_option("--gamma-min", bif_gmin, "Grid start");
    bif->add_option("--gamma-max", bif_gmax, "Grid end");
    bif->add_option("--steps", bif_steps, "Grid cells");
    bif->add_option("--x0", bif_x0, "Orbit start");
    bif->add_option("--transient", bif_transient, "Discarded iterations per cell");
    bif->add_option("--keep", bif_keep, "Recorded iterations per cell");
    bif->add_option("--out", bif_out, "Output CSV path")->required();

    // ---- lln ---------------------------------------------------------
    auto* lln = app.add_subcommand("lln", "Pair-distribution / separation report");
    lln->configurable();
    lln->fallthrough();
    ModelFlags lln_model;
    add_model_flags(lln, lln_model);
    std::string lln_dist = "normal", lln_out;
    std::vector<double> lln_starts{0.5, 2.0};
    std::vector<double> lln_mus{0.01, 0.05};
    std::size_t lln_steps = 1000000, lln_burn = 10000;
    std::uint64_t lln_seed = 0;
    lln->add_option("--dist", lln_dist, "normal, exp_mixture or rademacher");
    lln->add_option("--starts", lln_starts, "Filter starts s^2");
    lln->add_option("--mus", lln_mus, "Separation thresholds");
    lln->add_option("--steps", lln_steps, "Path length per start");
    lln->add_option("--burn-in", lln_burn, "Burn-in steps");
    lln->add_option("--seed", lln_seed, "Master seed");
    lln->add_option("--out", lln_out, "Output CSV path")->required();

    // ---- divergence --------------------------------------------------
    auto* dive = app.add_subcommand("divergence", "Coupled paths from log-offsets");
    dive->configurable();
    dive->fallthrough();
    ModelFlags dive_model;
    add_model_flags(dive, dive_model);
    std::string dive_dist = "normal", dive_out;
    std::vector<double> dive_offsets{0.0, 1.0};
    std::size_t dive_steps = 100000, dive_burn = 10000, dive_record = 1;
    std::uint64_t dive_seed = 0;
    dive->add_option("--dist", dive_dist, "normal, exp_mixture or rademacher");
    dive->add_option("--offsets", dive_offsets, "Initial log-offsets of the filter");
    dive->add_option("--steps", dive_steps, "Steps per path");
    dive->add_option("--burn-in", dive_burn, "Burn-in steps");
    dive->add_option("--record-every", dive_record, "Thinning stride");
    dive->add_option("--seed", dive_seed, "Master seed");
    dive->add_option("--out", dive_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's own exit codes are collapsed onto the documented
        // config-error code; --help and --version stay successful.
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(threads_flag);
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        if (sim->parsed()) {
            hetlab::SimConfig cfg;
            cfg.model = make_model(sim_model);
            cfg.dist = hetlab::parse_dist(sim_dist);
            cfg.n_steps = sim_steps;
            cfg.burn_in = sim_burn;
            cfg.init = parse_init(sim_init);
            cfg.seed = sim_seed;
            cfg.record_every = sim_record;
            const auto states = sim_coords ? hetlab::simulate_coupled_coords(cfg)
                                           : hetlab::simulate_coupled(cfg);
            std::ostringstream body;
            hetlab::write_path_csv(body, states);
            write_csv_file(sim_out, body.str());
            emit_manifest(app, sim, sim_out, wall());
            const bool diverged = !states.empty() && states.back().diverged;
            if (diverged) {
                std::cerr << "warning: path diverged; tail values are frozen\n";
            }
            return kExitOk;
        }

        if (lam->parsed()) {
            const hetlab::ModelSpec model = make_model(lam_model);
            const hetlab::InnovationDist dist = hetlab::parse_dist(lam_dist);
            hetlab::LambdaEstimate est;
            if (lam_method == "quadrature") {
                const auto q = hetlab::lambda_quadrature(model, dist);
                if (!q)
                    throw hetlab::ConfigError(
                        "no quadrature route for this model/distribution");
                est = *q;
            } else if (lam_method == "ergodic") {
                est = hetlab::lambda_ergodic(model, dist, lam_budget, lam_burn,
                                             lam_seed);
            } else if (lam_method == "closed-form" || lam_method == "closed_form") {
                est = hetlab::lambda_egarch_closed(
                    std::get<hetlab::EgarchParams>(model), dist, lam_budget, lam_seed,
                    threads);
            } else if (lam_method == "auto") {
                est = hetlab::classify(model, dist, lam_budget, lam_seed).lambda;
            } else {
                throw hetlab::ConfigError("unknown lambda method: " + lam_method);
            }
            std::cout << "lambda = " << est.value << " stderr = " << est.stderr_
                      << " n = " << est.n_samples
                      << " method = " << hetlab::to_string(est.method)
                      << " verdict = " << hetlab::to_string(est.verdict) << "\n";
            if (!lam_out.empty()) {
                std::ostringstream body;
                body << "model,dist,method,n,lambda,stderr,verdict\n";
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%s,%s,%s,%zu,%.17g,%.17g,%s\n",
                              hetlab::family_name(model), dist.name(),
                              hetlab::to_string(est.method), est.n_samples, est.value,
                              est.stderr_, hetlab::to_string(est.verdict));
                body << buf;
                write_csv_file(lam_out, body.str());
                emit_manifest(app, lam, lam_out, wall());
            }
            if (lam_strict && est.verdict == hetlab::InvVerdict::Indeterminate)
                return kExitIndeterminate;
            return kExitOk;
        }

        if (heat->parsed()) {
            hetlab::SweepGrid grid;
            ModelFlags proto = heat_model;
            proto.family = heat_family;
            if (heat_family == "garch") {
                proto.alphas = {0.0};
                proto.betas = {0.0};
                proto.alpha0 = proto.alpha0 > 0.0 ? proto.alpha0 : 1.0;
            }
            // Axis parameters get stamped over the prototype per cell, so
            // build it without validation here.
            if (heat_family == "garch")
                grid.prototype = hetlab::GarchParams{proto.alpha0, proto.alphas, proto.betas};
            else if (heat_family == "egarch")
                grid.prototype = hetlab::EgarchParams{proto.alpha, proto.beta,
                                                      proto.gamma, proto.delta};
            else if (heat_family == "vgarch")
                grid.prototype = hetlab::VgarchParams{proto.alpha, proto.beta,
                                                      proto.gamma, proto.delta};
            else
                throw hetlab::ConfigError("unknown model family: " + heat_family);

            auto parse_axis = [](const std::string& s) {
                hetlab::SweepAxis axis;
                char name[32];
                unsigned long steps = 0;
                if (std::sscanf(s.c_str(), "%31[^:]:%lf:%lf:%lu", name, &axis.min,
                                &axis.max, &steps) != 4)
                    throw hetlab::ConfigError("axis must be name:min:max:steps, got " + s);
                axis.param = name;
                axis.steps = steps;
                return axis;
            };
            grid.axis1 = parse_axis(heat_axis1);
            grid.axis2 = parse_axis(heat_axis2);
            grid.dist = hetlab::parse_dist(heat_dist);
            grid.budget_per_cell = heat_budget;
            grid.base_seed = heat_seed;

            const auto cells = hetlab::run_heatmap(grid, threads);
            std::ostringstream body;
            hetlab::write_heatmap_csv(body, cells);
            write_csv_file(heat_out, body.str());
            emit_manifest(app, heat, heat_out, wall());
            return kExitOk;
        }

        if (bif->parsed()) {
            hetlab::MapVariant variant;
            if (bif_variant == "derived") variant = hetlab::MapVariant::Derived;
            else if (bif_variant == "literal") variant = hetlab::MapVariant::Literal;
            else throw hetlab::ConfigError("variant must be literal or derived");
            const auto scan = hetlab::bifurcation_scan(
                variant, bif_alpha, bif_beta, bif_gmin, bif_gmax, bif_steps, bif_x0,
                bif_transient, bif_keep, threads);
            std::ostringstream body;
            hetlab::write_bifurcation_csv(body, scan);
            write_csv_file(bif_out, body.str());
            emit_manifest(app, bif, bif_out, wall());
            return kExitOk;
        }

        if (lln->parsed()) {
            hetlab::SimConfig cfg;
            cfg.model = make_model(lln_model);
            cfg.dist = hetlab::parse_dist(lln_dist);
            cfg.n_steps = lln_steps;
            cfg.burn_in = lln_burn;
            cfg.seed = lln_seed;
            const auto result = hetlab::run_pair_lln(cfg, lln_starts, lln_mus, threads);
            std::ostringstream body;
            hetlab::write_lln_csv(body, result);
            write_csv_file(lln_out, body.str());
            emit_manifest(app, lln, lln_out, wall());
            for (const auto& rep : result.reports)
                if (rep.diverged) return kExitDiverged;
            return kExitOk;
        }

        if (dive->parsed()) {
            hetlab::SimConfig cfg;
            cfg.model = make_model(dive_model);
            cfg.dist = hetlab::parse_dist(dive_dist);
            cfg.n_steps = dive_steps;
            cfg.burn_in = dive_burn;
            cfg.seed = dive_seed;
            cfg.record_every = dive_record;
            const auto paths = hetlab::run_divergence(cfg, dive_offsets);
            std::ostringstream body;
            hetlab::write_divergence_csv(body, paths);
            write_csv_file(dive_out, body.str());
            emit_manifest(app, dive, dive_out, wall());
            return kExitOk;
        }
    } catch (const hetlab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hetlab::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
