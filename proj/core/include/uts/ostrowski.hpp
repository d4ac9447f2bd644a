#ifndef UTS_OSTROWSKI_HPP
#define UTS_OSTROWSKI_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "uts/gap_selection.hpp"
#include "uts/log_mag.hpp"
#include "uts/taylor_poly.hpp"

namespace uts {

// Finite-horizon Ostrowski-gap check on a coefficient stream.  Windows
// (p_m, q_m] are given directly in coefficient-index space.  The check has
// two halves: the structural ordering p_1 < q_1 <= p_2 < q_2 <= ... with a
// divergence witness on q_m/p_m, and the decay half
//   d_m = max { |a_nu|^(1/nu) : nu in (p_m, q_m], nu >= burn_in }
// nonincreasing past the first window with content and d_last <= eps.
struct OstrowskiReport {
    bool ordering_ok = false;
    std::vector<double> index_ratios;  // q_m / p_m
    bool witness_ok = false;
    bool witness_checked = false;
    std::vector<std::optional<LogMag>> window_decay;  // d_m; empty below burn-in
    std::size_t first_measured_window = 0;
    bool decay_nonincreasing = false;
    bool final_below_eps = false;

    bool pass() const {
        return ordering_ok && (!witness_checked || witness_ok) &&
               decay_nonincreasing && final_below_eps;
    }
};

// root_mags[nu] = ln(|a_nu|^(1/nu)) for nu >= 1 (index 0 unused); pairs in
// coefficient-index space; eps > 0; nu0 = coefficient burn-in index.
OstrowskiReport detect_ostrowski_gaps(
    const std::vector<LogMag>& root_mags,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, double eps,
    std::int64_t nu0, const RatioWitness& witness = {});

// The Cauchy decay chain, asserted in log domain for each pair k and
// every lambda_{p_k} <= nu <= lambda_{q_k}:
//   ln|a_nu|^(1/nu) <= (lambda_q/nu) ln2 - k ln3
//                   <= (lambda_q/lambda_p) ln2 - k ln3
//                   <= k ln2 - k ln3.
// Each supplied polynomial must satisfy the circle normalization
// ||S||^(1/lambda_q)_{|z|=3^k} <= 2, verified through the rigorous
// coefficient-sum bound; violations raise NormalizationError.
struct ChainRow {
    std::int64_t k = 0;
    std::int64_t lambda_p = 0;
    std::int64_t lambda_q = 0;
    double norm_bound_log = 0.0;   // coeff-sum bound at 3^k, log scale
    double slack_first = 0.0;      // min over nu of RHS - LHS, first link
    double slack_second = 0.0;
    double slack_third = 0.0;
    bool ok = false;
};

struct ChainReport {
    std::vector<ChainRow> rows;
    double worst_first = 0.0;
    double worst_second = 0.0;
    double worst_third = 0.0;
    bool all_ok = false;
};

// partial_sums[i] is S_{lambda_{q_k}} around a common center for the i-th
// pair of sel (k = sel.k0 + i).
ChainReport verify_decay_chain(const std::vector<TaylorPoly>& partial_sums,
                               const GapSelection& sel, double tolerance = 1e-9);

}  // namespace uts

#endif
