#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hetlab/coupled_sim.hpp"
#include "hetlab/stability.hpp"

namespace hetlab {

// Assigns a named scalar parameter of the model; throws ConfigError for
// names unknown to the family (garch accepts alpha0/alpha1/beta1 here).
void set_param(ModelSpec& model, const std::string& name, double value);

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 2;
};

// 2-D parameter grid; the prototype carries the fixed entries.
struct SweepGrid {
    ModelSpec prototype;
    SweepAxis axis1;
    SweepAxis axis2;
    InnovationDist dist;
    std::size_t budget_per_cell = 100000;
    std::uint64_t base_seed = 0;
};

void validate(const SweepGrid& grid);

enum class CellStatus { Ok, Invalid, Diverged };

struct SweepCell {
    std::size_t i = 0, j = 0;
    double axis1_value = 0.0, axis2_value = 0.0;
    LambdaEstimate lambda;
    CellStatus status = CellStatus::Ok;
};

// One lambda estimate per cell (closed-form MC for EGARCH, ergodic MC
// for VGARCH, exact for GARCH(1,1)), row-major in (i, j). The cell seed
// is substream_seed(base_seed, i * axis2.steps + j), so the output is
// identical for any worker count.
std::vector<SweepCell> run_heatmap(const SweepGrid& grid, unsigned threads = 1);

// Schema: axis1,axis2,lambda,stderr,verdict
void write_heatmap_csv(std::ostream& os, const std::vector<SweepCell>& cells);

struct DivergencePath {
    double offset = 0.0;
    std::vector<CoupledState> states;
};

// One coupled path per initial log-offset (sigma2hat_0 = sigma2_0 e^offset),
// evolved in the transformed coordinates. config.init is ignored.
std::vector<DivergencePath> run_divergence(const SimConfig& config,
                                           const std::vector<double>& offsets);

// Schema: offset,t,sigma2,sigma2hat,diff,diverged
void write_divergence_csv(std::ostream& os, const std::vector<DivergencePath>& paths);

struct PairDistributionReport {
    double start_s2 = 0.0;
    bool diverged = false;
    double ks_halves = 0.0;  // KS between the two halves of the d-marginal
    std::vector<double> mu;
    std::vector<double> frac_separated;  // P(|sigma2hat - sigma2| > mu), second half
    std::vector<double> d_second_half;   // marginal samples (d for EGARCH,
                                         // sigma2hat - sigma2 otherwise)
};

struct LlnResult {
    std::vector<PairDistributionReport> reports;  // one per start
    // ks_between_starts[i][j]: KS distance between the second-half
    // marginals of starts i and j.
    std::vector<std::vector<double>> ks_between_starts;
};

// One long coupled path per start in s2_list (constant initialization),
// each on its own sub-stream of config.seed.
LlnResult run_pair_lln(const SimConfig& config, const std::vector<double>& s2_list,
                       const std::vector<double>& mu_list, unsigned threads = 1);

// Schema: start,half,ks_d,mu,frac_separated
void write_lln_csv(std::ostream& os, const LlnResult& result);

}  // namespace hetlab
