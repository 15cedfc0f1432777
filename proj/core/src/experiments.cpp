#include "hetlab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hetlab/errors.hpp"
#include "hetlab/ks.hpp"
#include "hetlab/parallel.hpp"

namespace hetlab {

namespace {

double axis_value(const SweepAxis& a, std::size_t idx) {
    if (a.steps == 1) return a.min;
    return a.min + (a.max - a.min) * static_cast<double>(idx) /
                       static_cast<double>(a.steps - 1);
}

// Difference marginal used for the LLN statistics.
double pair_difference(const ModelSpec& model, const CoupledState& st) {
    if (std::holds_alternative<EgarchParams>(model))
        return st.d_or_zhat;  // d = log sigma2hat - log sigma2
    return st.sigma2hat - st.sigma2;
}

}  // namespace

void set_param(ModelSpec& model, const std::string& name, double value) {
    if (auto* g = std::get_if<GarchParams>(&model)) {
        if (name == "alpha0") { g->alpha0 = value; return; }
        if (name == "alpha1") {
            if (g->alphas.empty()) g->alphas.resize(1);
            g->alphas[0] = value;
            return;
        }
        if (name == "beta1") {
            if (g->betas.empty()) g->betas.resize(1);
            g->betas[0] = value;
            return;
        }
        throw ConfigError("garch sweep parameter must be alpha0, alpha1 or beta1, got " + name);
    }
    auto assign = [&](double& a, double& b, double& c, double& d) {
        if (name == "alpha") a = value;
        else if (name == "beta") b = value;
        else if (name == "gamma") c = value;
        else if (name == "delta") d = value;
        else throw ConfigError("unknown sweep parameter: " + name);
    };
    if (auto* e = std::get_if<EgarchParams>(&model))
        assign(e->alpha, e->beta, e->gamma, e->delta);
    else {
        auto& v = std::get<VgarchParams>(model);
        assign(v.alpha, v.beta, v.gamma, v.delta);
    }
}

void validate(const SweepGrid& grid) {
    if (grid.axis1.steps < 2 || grid.axis2.steps < 2)
        throw ConfigError("sweep axes need at least 2 steps each");
    if (grid.axis1.param == grid.axis2.param)
        throw ConfigError("sweep axes must name different parameters");
    // Names must be assignable at all.
    ModelSpec probe = grid.prototype;
    set_param(probe, grid.axis1.param, axis_value(grid.axis1, 0));
    set_param(probe, grid.axis2.param, axis_value(grid.axis2, 0));
}

std::vector<SweepCell> run_heatmap(const SweepGrid& grid, unsigned threads) {
    validate(grid);
    const std::size_t n1 = grid.axis1.steps, n2 = grid.axis2.steps;
    std::vector<SweepCell> cells(n1 * n2);

    parallel_for_indexed(n1 * n2, threads, [&](std::size_t idx) {
        SweepCell& cell = cells[idx];
        cell.i = idx / n2;
        cell.j = idx % n2;
        cell.axis1_value = axis_value(grid.axis1, cell.i);
        cell.axis2_value = axis_value(grid.axis2, cell.j);
        const std::uint64_t cell_seed = substream_seed(grid.base_seed, idx);

        ModelSpec model = grid.prototype;
        try {
            set_param(model, grid.axis1.param, cell.axis1_value);
            set_param(model, grid.axis2.param, cell.axis2_value);
            validate(model);
        } catch (const ConfigError&) {
            cell.status = CellStatus::Invalid;
            return;
        }
        try {
            if (const auto* e = std::get_if<EgarchParams>(&model)) {
                cell.lambda = lambda_egarch_closed(*e, grid.dist,
                                                   grid.budget_per_cell, cell_seed);
            } else if (std::holds_alternative<VgarchParams>(model)) {
                cell.lambda = lambda_ergodic(model, grid.dist, grid.budget_per_cell,
                                             10000, cell_seed);
            } else {
                cell.lambda = *lambda_quadrature(model, grid.dist);
            }
        } catch (const NumericError&) {
            cell.status = CellStatus::Diverged;
        }
    });
    return cells;
}

void write_heatmap_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
    os << "axis1,axis2,lambda,stderr,verdict\n";
    char buf[160];
    for (const auto& c : cells) {
        const char* verdict = c.status == CellStatus::Invalid    ? "invalid"
                              : c.status == CellStatus::Diverged ? "diverged"
                                                                 : to_string(c.lambda.verdict);
        if (c.status == CellStatus::Ok)
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%s\n",
                          c.axis1_value, c.axis2_value, c.lambda.value,
                          c.lambda.stderr_, verdict);
        else
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,nan,nan,%s\n", c.axis1_value,
                          c.axis2_value, verdict);
        os << buf;
    }
}

std::vector<DivergencePath> run_divergence(const SimConfig& config,
                                           const std::vector<double>& offsets) {
    if (std::holds_alternative<GarchParams>(config.model))
        throw ConfigError("divergence paths support egarch and vgarch only");
    std::vector<DivergencePath> out;
    out.reserve(offsets.size());
    for (double off : offsets) {
        SimConfig c = config;
        c.init = InitLogOffset{off};
        out.push_back({off, simulate_coupled_coords(c)});
    }
    return out;
}

void write_divergence_csv(std::ostream& os, const std::vector<DivergencePath>& paths) {
    os << "offset,t,sigma2,sigma2hat,diff,diverged\n";
    char buf[192];
    for (const auto& p : paths) {
        for (const auto& s : p.states) {
            const double diff = s.sigma2hat - s.sigma2;
            std::snprintf(buf, sizeof(buf), "%.17g,%zu,%.17g,%.17g,%.17g,%d\n",
                          p.offset, s.t, s.sigma2, s.sigma2hat, diff, s.diverged ? 1 : 0);
            os << buf;
        }
    }
}

LlnResult run_pair_lln(const SimConfig& config, const std::vector<double>& s2_list,
                       const std::vector<double>& mu_list, unsigned threads) {
    const bool garch = std::holds_alternative<GarchParams>(config.model);
    LlnResult result;
    result.reports.resize(s2_list.size());

    parallel_for_indexed(s2_list.size(), threads, [&](std::size_t k) {
        PairDistributionReport& rep = result.reports[k];
        rep.start_s2 = s2_list[k];
        rep.mu = mu_list;

        SimConfig c = config;
        c.init = InitConstant{s2_list[k]};
        c.seed = substream_seed(config.seed, k);
        const auto states = garch ? simulate_coupled(c) : simulate_coupled_coords(c);

        std::vector<double> diffs;   // |sigma2hat - sigma2| proxy for frac_separated
        std::vector<double> margin;  // d-marginal for KS
        diffs.reserve(states.size());
        margin.reserve(states.size());
        for (const auto& st : states) {
            rep.diverged = rep.diverged || st.diverged;
            margin.push_back(pair_difference(c.model, st));
            if (std::holds_alternative<EgarchParams>(c.model)) {
                // exp(z) expm1(d) stays meaningful where sigma2hat overflows
                diffs.push_back(std::abs(std::exp(st.z) * std::expm1(st.d_or_zhat)));
            } else {
                diffs.push_back(std::abs(st.sigma2hat - st.sigma2));
            }
        }

        const std::size_t half = margin.size() / 2;
        rep.ks_halves =
            ks_two_sample(std::span<const double>(margin).first(half),
                          std::span<const double>(margin).subspan(half));
        rep.d_second_half.assign(margin.begin() + static_cast<std::ptrdiff_t>(half),
                                 margin.end());
        for (double mu : mu_list) {
            std::size_t count = 0;
            for (std::size_t t = half; t < diffs.size(); ++t)
                if (diffs[t] > mu) ++count;
            rep.frac_separated.push_back(static_cast<double>(count) /
                                         static_cast<double>(diffs.size() - half));
        }
    });

    const std::size_t n = result.reports.size();
    result.ks_between_starts.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = ks_two_sample(result.reports[i].d_second_half,
                                           result.reports[j].d_second_half);
            result.ks_between_starts[i][j] = d;
            result.ks_between_starts[j][i] = d;
        }
    return result;
}

void write_lln_csv(std::ostream& os, const LlnResult& result) {
    os << "start,half,ks_d,mu,frac_separated\n";
    char buf[160];
    for (const auto& rep : result.reports) {
        for (std::size_t m = 0; m < rep.mu.size(); ++m) {
            std::snprintf(buf, sizeof(buf), "%.17g,2,%.17g,%.17g,%.17g\n", rep.start_s2,
                          rep.ks_halves, rep.mu[m], rep.frac_separated[m]);
            os << buf;
        }
    }
}

}  // namespace hetlab
