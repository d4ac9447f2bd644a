#ifndef UTS_GAP_SELECTION_HPP
#define UTS_GAP_SELECTION_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uts/index_sequence.hpp"

namespace uts {

// One selected pair at condition index k: positions (p, q) into the lambda
// sequence, plus the materialized lambda values (exact Int128 when
// representable, log form always).
struct GapPair {
    std::int64_t k = 0;
    std::int64_t p = 0;
    std::int64_t q = 0;
    Int128 lambda_p = 0;
    Int128 lambda_q = 0;
    bool lambda_exact = false;
    double log_lambda_p = 0.0;
    double log_lambda_q = 0.0;

    // lambda_q / lambda_p; always <= k for valid selections, so double is fine
    double ratio() const;
};

// A selection (p_k, q_k), k = k0 .. k0 + pairs.size() - 1, drawn from a
// stream (n_k).  Selections promise, for k >= k0:
//   (1) (q_k) is a subsequence of the stream,
//   (2) (p_k) strictly increasing,
//   (3) lambda_{p_k} < lambda_{q_k} <= lambda_{p_{k+1}},
//   (4) lambda_{q_k} / lambda_{p_k} <= k.
// "k0" makes "for k large enough" concrete; divergence of the ratios can
// only be witnessed, never certified, on a finite horizon.
struct GapSelection {
    std::int64_t k0 = 1;
    std::vector<GapPair> pairs;
    std::vector<std::int64_t> tie_flags;  // k where an inverse hit an integer boundary
    std::string source;

    const GapPair& at_k(std::int64_t k) const;
};

// witness: an explicit lower bound w(k) for the ratios, derived from the
// selection rule itself
using RatioWitness = std::function<double(std::int64_t)>;

struct ConditionReport {
    bool subsequence_ok = false;        // (1)
    bool p_increasing_ok = false;       // (2)
    bool lambda_chain_ok = false;       // (3)
    bool ratio_le_k_ok = false;         // (4), the "<= k" half
    bool witness_ok = false;            // ratio_k >= w(k); vacuous without witness
    bool witness_checked = false;
    std::vector<double> ratios;
    std::optional<std::int64_t> first_violation_k;

    bool all_ok() const {
        return subsequence_ok && p_increasing_ok && lambda_chain_ok &&
               ratio_le_k_ok && (!witness_checked || witness_ok);
    }
};

ConditionReport check_gap_conditions(const IndexSequence& seq,
                                     const IndexStream& stream,
                                     const GapSelection& sel,
                                     const RatioWitness& witness = {});

// Selector for lambda_n = floor(P(n)): greedy q picks with
// P(q_k) > sqrt(k) P(q_{k-1}) and p_k = floor(P^{-1}(P(q_k)/sqrt(k))) + 1,
// the inverse taken by bisection on the monotone tail of P.  Emits pairs
// from the computed k0 through k0 + count - 1.
GapSelection select_gaps_polynomial(const std::vector<double>& poly_ascending,
                                    const IndexStream& stream, std::int64_t count,
                                    std::int64_t max_condition_index = 4096);

// Selector for ratio-banded sequences: q_{k+1} is the first stream element
// past q_k + log(k+1)/log M and p_k = q_k - floor(log k / log M); k0 is the
// first k with floor(log k / log M) >= 1.
GapSelection select_gaps_geometric(const IndexSequence& seq,
                                   const IndexStream& stream, std::int64_t count);

// The selectors' intrinsic ratio lower bounds, usable as witnesses in
// check_gap_conditions.
RatioWitness polynomial_ratio_witness(std::vector<double> poly_ascending,
                                      const GapSelection& sel);
RatioWitness geometric_ratio_witness(const GapSelection& sel, double theta);

}  // namespace uts

#endif
