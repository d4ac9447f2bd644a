#ifndef UTS_TRANSPORT_HPP
#define UTS_TRANSPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uts/build_plan.hpp"
#include "uts/gap_selection.hpp"
#include "uts/ostrowski.hpp"

namespace uts {

// Finite grid standing in for "every compact L inside the domain".
struct LGrid {
    std::vector<Complex> points;

    // radii_count x angle_count polar grid within |zeta| <= max_radius
    static LGrid polar(double max_radius, std::int64_t radii_count = 5,
                       std::int64_t angle_count = 5);
    static LGrid single(Complex zeta);
};

struct ExperimentConfig {
    double omega_radius = 1.0;
    std::vector<double> radii = {1.0, 2.0, 4.0};  // circles measuring D1
    LGrid lgrid = LGrid::polar(0.3);
    std::optional<CompactSetSample> approximation_set;  // K, needed for D2/D3
    std::optional<TargetFunction> target;               // g, needed for D3
    double tolerance = 5e-3;                            // verdict bound on D3_final

    void validate() const;
};

struct TraceRow {
    std::int64_t k = 0;
    std::int64_t lambda_p = 0;
    std::int64_t lambda_q = 0;
    LogMag d1;  // max over config radii of ||S_q - S_p|| on |z| = R
    std::optional<LogMag> d2;  // sup_zeta sup_K |S_p(f,zeta) - S_p(f,zeta0)|
    std::optional<LogMag> d3;  // sup_zeta sup_K |S_p(f,zeta) - g|
    std::optional<LogMag> center_error;  // max_K |S_p(f,zeta0) - g|
};

struct TrendStats {
    std::size_t burn_in = 0;   // first index from which the column is nonincreasing
    bool nonincreasing = false;  // burn-in leaves at least one comparison
    LogMag final_value;
};

// nonincreasing after burn-in with per-step slack 1e-12 in log scale
TrendStats trend_nonincreasing(const std::vector<LogMag>& column,
                               double log_slack = 1e-12);

struct ConvergenceTrace {
    std::vector<TraceRow> rows;
    TrendStats d1_trend;
    std::optional<TrendStats> d2_trend;
    std::optional<TrendStats> d3_trend;
};

// The three convergence quantities of the transport mechanism, per pair k:
// D1 on circles (compact convergence surrogate), D2 the center-transport
// error over the L grid, D3 the transported approximation error against g.
// zeta0 is f's own expansion center.  Partial sums are formal (zero-padded
// past the degree), so low-degree f gives exact degenerate traces.
ConvergenceTrace run_transport_experiment(const TaylorPoly& f,
                                          const GapSelection& sel,
                                          const ExperimentConfig& config);

// Independent code path for the same D2/D3 values: recenter f once per zeta
// and truncate per k, rather than calling partial_sum_at per (k, zeta).
ConvergenceTrace transport_by_shared_recenter(const TaylorPoly& f,
                                              const GapSelection& sel,
                                              const ExperimentConfig& config);

struct CenterIndependenceResult {
    BuildResult build;
    GapSelection selection;
    ConvergenceTrace trace;
    bool pass = false;
    std::vector<std::int64_t> failed_stages;
    std::string disclaimer;  // finite-stage demonstration, not a proof
};

// End-to-end pipeline: build f from the plan (all stages must share one
// (K, g)), select gaps from the stage indices, run the transport
// experiment.  PASS iff every stage met its residual, D3_final <= tolerance
// and the D2 column is nonincreasing after burn-in.
CenterIndependenceResult run_center_independence(const BuildPlan& plan,
                                                 const ExperimentConfig& config);

// Feasibility probe for lambda_n = n!: the ratio-minimal chain q_i = i-th
// usable stream element, p_i = q_i - 1, whose ratios lambda_q/lambda_p are
// exactly q_i.  Reports the smallest onset k0 making ratio_i <= k0 + i - 1
// hold across the horizon, and the first violated condition index under
// k0 = 1.  An empirical report only; it proves nothing asymptotic.
struct FactorialProbeRow {
    std::int64_t position = 0;  // i
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t ratio = 0;          // lambda_q / lambda_p = q, exact
    bool lambda_representable = false;  // q! fits in 64 bits
    double log_lambda_q = 0.0;
};

struct FactorialProbeReport {
    std::vector<FactorialProbeRow> rows;
    std::optional<std::int64_t> first_infeasible_k;  // under k0 = 1
    std::int64_t k0_within_horizon = 0;
    bool k0_at_horizon_edge = false;  // onset still growing when the horizon ended
    std::string header;               // fixed disclaimer text
};

FactorialProbeReport probe_factorial(const IndexStream& stream,
                                     std::int64_t horizon);

}  // namespace uts

#endif
