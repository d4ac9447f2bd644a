#include "uts/gap_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "uts/dd.hpp"
#include "uts/errors.hpp"

namespace uts {

namespace {

// Relative window for integer-boundary ties in the inverse.  Far above
// the double-double evaluation noise (~1e-31), far below 1/P at any
// horizon this artifact reaches, so it breaks exact ties and nothing else.
constexpr double kTieTol = 1e-28;

struct PolyEval {
    const std::vector<double>& c;
    DD operator()(std::int64_t n) const {
        return dd_poly_eval(c.data(), c.size(), double(n));
    }
};

// smallest n in [lo, hi] with P(n) > t; requires P increasing on [lo, hi]
// and P(hi) > t
std::int64_t first_above(const PolyEval& P, DD t, std::int64_t lo, std::int64_t hi) {
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (dd_less(t, P(mid)))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// largest j >= 0 with M^j <= k, via repeated multiplication (deterministic,
// no log-quotient boundary surprises for integer M)
std::int64_t floor_log_ratio(std::int64_t k, double M) {
    if (k < 1) return 0;
    std::int64_t j = 0;
    double p = M;
    while (p <= double(k)) {
        ++j;
        p *= M;
    }
    return j;
}

void fill_lambda(GapPair& pair, const IndexSequence& seq) {
    auto lp = seq.value128(pair.p);
    auto lq = seq.value128(pair.q);
    pair.lambda_exact = lp.has_value() && lq.has_value();
    pair.lambda_p = lp.value_or(0);
    pair.lambda_q = lq.value_or(0);
    pair.log_lambda_p = seq.log_value(pair.p).log;
    pair.log_lambda_q = seq.log_value(pair.q).log;
}

// lambda_q <= k * lambda_p without overflowing the product
bool ratio_le(Int128 lambda_q, Int128 lambda_p, std::int64_t k) {
    Int128 quot = lambda_q / lambda_p;
    if (quot < k) return true;
    if (quot > k) return false;
    return lambda_q % lambda_p == 0;
}

}  // namespace

double GapPair::ratio() const {
    if (lambda_exact) return to_double(lambda_q) / to_double(lambda_p);
    return std::exp(log_lambda_q - log_lambda_p);
}

const GapPair& GapSelection::at_k(std::int64_t k) const {
    if (k < k0 || k >= k0 + std::int64_t(pairs.size()))
        throw ConfigError("GapSelection: no pair at k = " + std::to_string(k));
    return pairs[std::size_t(k - k0)];
}

ConditionReport check_gap_conditions(const IndexSequence& seq,
                                     const IndexStream& stream,
                                     const GapSelection& sel,
                                     const RatioWitness& witness) {
    if (sel.pairs.empty()) throw ConfigError("check_gap_conditions: empty selection");

    ConditionReport rep;
    rep.subsequence_ok = true;
    rep.p_increasing_ok = true;
    rep.lambda_chain_ok = true;
    rep.ratio_le_k_ok = true;
    rep.witness_checked = bool(witness);
    rep.witness_ok = true;

    auto note_violation = [&](std::int64_t k) {
        if (!rep.first_violation_k) rep.first_violation_k = k;
    };

    // lambda access up front so out-of-horizon indices fail loudly
    for (const auto& pr : sel.pairs) {
        seq.log_value(pr.p);
        seq.log_value(pr.q);
    }

    const bool monotone_kind = seq.kind() == IndexSequence::Kind::Geometric ||
                               seq.kind() == IndexSequence::Kind::Factorial;

    for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
        const auto& pr = sel.pairs[i];
        const std::int64_t k = sel.k0 + std::int64_t(i);

        if (!stream.contains(pr.q) ||
            (i > 0 && pr.q <= sel.pairs[i - 1].q)) {
            rep.subsequence_ok = false;
            note_violation(k);
        }
        if (i > 0 && pr.p <= sel.pairs[i - 1].p) {
            rep.p_increasing_ok = false;
            note_violation(k);
        }

        auto lp = seq.value128(pr.p);
        auto lq = seq.value128(pr.q);

        // (3): lambda_{p_k} < lambda_{q_k} and lambda_{q_{k-1}} <= lambda_{p_k}
        bool chain_ok;
        if (lp && lq) {
            chain_ok = *lp < *lq;
        } else if (monotone_kind) {
            chain_ok = pr.p < pr.q;  // lambda strictly increasing
        } else {
            chain_ok = seq.log_value(pr.p).log < seq.log_value(pr.q).log;
        }
        if (i > 0) {
            const auto& prev = sel.pairs[i - 1];
            auto lq_prev = seq.value128(prev.q);
            if (lq_prev && lp) {
                chain_ok = chain_ok && *lq_prev <= *lp;
            } else if (monotone_kind) {
                chain_ok = chain_ok && prev.q <= pr.p;
            } else {
                chain_ok =
                    chain_ok && seq.log_value(prev.q).log <= seq.log_value(pr.p).log;
            }
        }
        if (!chain_ok) {
            rep.lambda_chain_ok = false;
            note_violation(k);
        }

        // (4), "<= k" half; the divergence half is witness-checked below
        bool le_k;
        double ratio;
        if (lp && lq) {
            le_k = ratio_le(*lq, *lp, k);
            ratio = to_double(*lq) / to_double(*lp);
        } else {
            const double diff = seq.log_value(pr.q).log - seq.log_value(pr.p).log;
            le_k = diff <= std::log(double(k));
            ratio = std::exp(diff);
        }
        rep.ratios.push_back(ratio);
        if (!le_k) {
            rep.ratio_le_k_ok = false;
            note_violation(k);
        }

        if (witness && ratio < witness(k)) {
            rep.witness_ok = false;
            note_violation(k);
        }
    }
    return rep;
}

GapSelection select_gaps_polynomial(const std::vector<double>& poly_ascending,
                                    const IndexStream& stream, std::int64_t count,
                                    std::int64_t max_condition_index) {
    if (count < 1) throw ConfigError("select_gaps_polynomial: count must be >= 1");

    // onset via the sequence validator; horizon kept wide, the stream bounds us
    const IndexSequence seq = IndexSequence::polynomial_floor(
        poly_ascending, std::numeric_limits<std::int64_t>::max() / 4);
    const std::int64_t onset = seq.onset();
    const PolyEval P{seq.poly_coeffs()};

    struct Candidate {
        std::int64_t q = 0;
        std::int64_t p = 0;
        bool valid = false;
        bool tie = false;
    };
    std::vector<Candidate> cand;  // cand[k-1] for condition index k

    std::int64_t q_prev = 0;
    DD P_prev(0.0);
    for (std::int64_t k = 1; k <= max_condition_index; ++k) {
        Candidate c;

        // greedy q_k: first unused stream element with P(q) > sqrt(k) P(q_{k-1})
        std::optional<std::int64_t> q;
        if (k == 1) {
            q = stream.first_greater(onset - 1);
        } else {
            const DD t = dd_mul(dd_sqrt(double(k)), P_prev);
            std::int64_t hi = q_prev + 1;
            while (!dd_less(t, P(hi))) {
                if (hi > (std::numeric_limits<std::int64_t>::max() >> 2))
                    throw OverflowError("select_gaps_polynomial: q search overflow");
                hi *= 2;
            }
            const std::int64_t n_min =
                first_above(P, t, q_prev + 1, hi);
            q = stream.first_greater(std::max(q_prev, n_min - 1));
        }
        if (!q) {
            throw InfeasibleError(
                "select_gaps_polynomial: stream exhausted before pair k = " +
                    std::to_string(k),
                k);
        }
        c.q = *q;
        const DD Pq = P(c.q);

        // p_k = floor(P^{-1}(P(q_k)/sqrt(k))) + 1, i.e. the least p with
        // P(p) > y; ties within kTieTol of the boundary break upward
        const DD y = dd_div(Pq, dd_sqrt(double(k)));
        if (dd_less_equal(P(onset), y)) {
            const DD y_hi = dd_mul(y, DD(1.0 + kTieTol));
            std::int64_t hi = c.q + 2;
            while (!dd_less(y_hi, P(hi))) hi *= 2;
            const std::int64_t p = first_above(P, y_hi, onset, hi);
            c.p = p;
            if (p > onset) {
                const DD below = P(p - 1);
                const DD lo = dd_mul(y, DD(1.0 - kTieTol));
                if (dd_less_equal(lo, below) && dd_less_equal(below, y_hi)) c.tie = true;
            }
            auto lp = seq.value128(c.p);
            auto lq = seq.value128(c.q);
            if (!lp || !lq)
                throw OverflowError(
                    "select_gaps_polynomial: lambda exceeds the exact range at k = " +
                    std::to_string(k));
            c.valid = *lp < *lq && ratio_le(*lq, *lp, k);
        } else {
            // P(q_k)/sqrt(k) below the monotone threshold: k excluded
            c.valid = false;
        }

        cand.push_back(c);
        q_prev = c.q;
        P_prev = Pq;

        // do we have a valid run of `count` pairs ending here?
        if (std::int64_t(cand.size()) >= count) {
            const std::size_t lo = cand.size() - std::size_t(count);
            bool run_ok = true;
            for (std::size_t i = lo; i < cand.size() && run_ok; ++i) {
                if (!cand[i].valid) run_ok = false;
                if (i > lo) {
                    run_ok = run_ok && cand[i - 1].p < cand[i].p;
                    // lambda_{q_{k-1}} <= lambda_{p_k}
                    auto lq_prev = seq.value128(cand[i - 1].q);
                    auto lp = seq.value128(cand[i].p);
                    run_ok = run_ok && lq_prev && lp && *lq_prev <= *lp;
                }
            }
            // also demand the run starts at the earliest k0 that stays valid
            // from there on; the first all-valid window gives exactly that
            if (run_ok) {
                GapSelection sel;
                sel.k0 = std::int64_t(lo) + 1;
                sel.source = "polynomial_floor(" + seq.describe() + ") over " +
                             stream.describe();
                for (std::size_t i = lo; i < cand.size(); ++i) {
                    GapPair pair;
                    pair.k = std::int64_t(i) + 1;
                    pair.p = cand[i].p;
                    pair.q = cand[i].q;
                    fill_lambda(pair, seq);
                    sel.pairs.push_back(pair);
                    if (cand[i].tie) sel.tie_flags.push_back(pair.k);
                }
                return sel;
            }
        }
    }

    std::int64_t first_bad = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (!cand[i].valid) first_bad = std::int64_t(i) + 1;
    }
    throw InfeasibleError(
        "select_gaps_polynomial: no valid run of " + std::to_string(count) +
            " pairs up to condition index " + std::to_string(max_condition_index) +
            "; last invalid k = " + std::to_string(first_bad),
        first_bad);
}

GapSelection select_gaps_geometric(const IndexSequence& seq,
                                   const IndexStream& stream, std::int64_t count) {
    if (count < 1) throw ConfigError("select_gaps_geometric: count must be >= 1");
    if (seq.kind() != IndexSequence::Kind::Geometric)
        throw ConfigError("select_gaps_geometric: sequence must be geometric kind");
    const double M = seq.bound_M();
    const double log_M = std::log(M);
    if (!(log_M > 0.0)) throw ConfigError("select_gaps_geometric: need M > 1");

    // k0: first k whose gap width floor(log k / log M) is at least 1.  Below
    // that the formula collapses to p_k = q_k, which condition (3) forbids.
    std::int64_t k0 = 1;
    while (floor_log_ratio(k0, M) < 1) ++k0;

    GapSelection sel;
    sel.k0 = k0;
    sel.source = seq.describe() + " over " + stream.describe();

    std::int64_t q_prev = 0;
    for (std::int64_t k = 1; k < k0 + count; ++k) {
        std::optional<std::int64_t> q;
        if (k == 1) {
            q = stream.first_greater(0);
        } else {
            // first element strictly beyond q_prev + spacing; any integer
            // above q_prev + floor(spacing) already is
            const double spacing = std::log(double(k)) / log_M;
            q = stream.first_greater(q_prev + std::int64_t(std::floor(spacing)));
        }
        if (!q || *q > seq.horizon())
            throw InfeasibleError(
                "select_gaps_geometric: horizon exhausted before pair k = " +
                    std::to_string(k),
                k);
        q_prev = *q;

        if (k >= k0) {
            GapPair pair;
            pair.k = k;
            pair.q = *q;
            pair.p = *q - floor_log_ratio(k, M);
            if (pair.p < 1)
                throw InfeasibleError(
                    "select_gaps_geometric: p_k below 1 at k = " + std::to_string(k),
                    k);
            fill_lambda(pair, seq);
            sel.pairs.push_back(pair);
        }
    }
    return sel;
}

RatioWitness polynomial_ratio_witness(std::vector<double> poly_ascending,
                                      const GapSelection& sel) {
    std::map<std::int64_t, std::int64_t> p_of_k;
    for (const auto& pr : sel.pairs) p_of_k[pr.k] = pr.p;
    return [coeffs = std::move(poly_ascending), p_of_k](std::int64_t k) {
        auto it = p_of_k.find(k);
        if (it == p_of_k.end()) return 0.0;
        const PolyEval P{coeffs};
        const DD p_here = P(it->second);
        const DD p_below = P(it->second - 1);
        // sqrt(k) P(p-1)/P(p) - 1/P(p)
        const DD num = dd_sub(dd_mul(dd_sqrt(double(k)), p_below), DD(1.0));
        return dd_div(num, p_here).value();
    };
}

RatioWitness geometric_ratio_witness(const GapSelection& sel, double theta) {
    std::map<std::int64_t, std::int64_t> width_of_k;
    for (const auto& pr : sel.pairs) width_of_k[pr.k] = pr.q - pr.p;
    return [theta, width_of_k](std::int64_t k) {
        auto it = width_of_k.find(k);
        if (it == width_of_k.end()) return 0.0;
        return std::pow(theta, double(it->second));
    };
}

}  // namespace uts
