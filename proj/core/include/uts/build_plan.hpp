#ifndef UTS_BUILD_PLAN_HPP
#define UTS_BUILD_PLAN_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "uts/compact_set.hpp"
#include "uts/gap_selection.hpp"
#include "uts/index_sequence.hpp"
#include "uts/least_squares.hpp"
#include "uts/target_function.hpp"

namespace uts {

// One build stage: fit target g on the sample K by a coefficient block
// ending at lambda_{n_index}, to a requested residual.
struct BuildStage {
    std::int64_t n_index = 0;
    CompactSetSample sample;
    TargetFunction target;
    double requested_eps = 1e-6;
};

// Recipe for a finite-stage universal Taylor polynomial on the disk domain
// |z| < omega_radius.  Block j is supported on exponents
// (lambda_{n_{j-1}}, lambda_{n_j}] (block 1 includes the constant term) and
// is zero-constrained on the control circle of radius
// rho_j = omega_radius (1 - 2^-j) with weight mu = control_weight_factor
// times the stage's total target weight.  Optional smallness sets E_j
// (disjoint from every K) add zero constraints with weight
// mu (eps_j / delta_j)^2.
struct BuildPlan {
    double omega_radius = 1.0;
    IndexSequence lambda = IndexSequence::factorial(1);
    std::vector<BuildStage> stages;
    double control_weight_factor = 10.0;
    std::int64_t control_circle_nodes = 0;  // 0: default 2*block_width + 49
    std::vector<std::optional<CompactSetSample>> smallness_sets;  // per stage or empty
    std::vector<double> smallness_targets;                        // delta_j

    double rho(std::size_t stage_index_1based) const;
    void validate() const;
};

struct StageDiagnostics {
    std::int64_t stage = 0;
    double residual = 0.0;       // max |f_j - g_j| on K_j nodes
    double omega_norm = 0.0;     // max |f_j| on the rho_j circle nodes
    double ek_norm = 0.0;        // max |f_j| on E_j nodes (0 without E_j)
    double requested_eps = 0.0;
    bool ok = false;
};

struct BuildResult {
    TaylorPoly f;  // centered at 0
    std::vector<StageDiagnostics> stages;

    bool all_stages_ok() const;
};

// Assembles f = sum_j h_j block by block.  Later blocks cannot alter earlier
// partial sums: S_{lambda_{n_j}}(f, 0) equals f_j = sum_{i<=j} h_i exactly,
// coefficient by coefficient.  A stage whose residual misses requested_eps
// is marked failed and the build continues.
BuildResult build_universal_polynomial(const BuildPlan& plan);

// sigma_m per window: the decay magnitudes of synthesized gap series
struct SigmaRule {
    enum class Kind { Constant, InverseM, Geometric, Explicit };
    Kind kind = Kind::Constant;
    double value = 0.0;          // Constant: sigma_m = value; InverseM: value/m
    double base = 1.0;           // Geometric: value * base^m
    std::vector<double> list;    // Explicit

    static SigmaRule constant(double v);
    static SigmaRule inverse_m(double scale = 1.0);
    static SigmaRule geometric(double scale, double base);
    static SigmaRule explicit_list(std::vector<double> v);

    double sigma(std::size_t m_1based) const;
};

enum class OffWindowRule { Zeros, UnitModulus };

// Test-fixture series with Ostrowski gaps by construction: a_nu = sigma_m^nu
// for nu in window m = (p_m, q_m], off-window coefficients all zero or unit
// modulus with deterministic phases.  Windows are in coefficient-index
// space and must fit under degree_cap.
TaylorPoly synthesize_gap_series(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& windows,
    const SigmaRule& sigma, OffWindowRule off_window, std::int64_t degree_cap);

// coefficient-space windows (lambda_p, lambda_q] of a selection
std::vector<std::pair<std::int64_t, std::int64_t>> lambda_windows(
    const GapSelection& sel);

}  // namespace uts

#endif
