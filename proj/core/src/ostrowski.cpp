#include "uts/ostrowski.hpp"

#include <cmath>

#include "uts/errors.hpp"

namespace uts {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn3 = 1.0986122886681098;

}  // namespace

OstrowskiReport detect_ostrowski_gaps(
    const std::vector<LogMag>& root_mags,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, double eps,
    std::int64_t nu0, const RatioWitness& witness) {
    if (pairs.empty()) throw ConfigError("detect_ostrowski_gaps: no windows");
    if (!(eps > 0.0)) throw ConfigError("detect_ostrowski_gaps: eps must be > 0");
    if (nu0 < 1) nu0 = 1;

    OstrowskiReport rep;
    rep.witness_checked = bool(witness);
    rep.witness_ok = true;

    // (i): ordering and index-ratio divergence witness
    rep.ordering_ok = true;
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        const auto [p, q] = pairs[m];
        if (p < 1 || q <= p) {
            if (q <= p)
                throw ConfigError("detect_ostrowski_gaps: empty window (p >= q) at m = " +
                                  std::to_string(m + 1));
            rep.ordering_ok = false;
        }
        if (m > 0 && pairs[m - 1].second > p) rep.ordering_ok = false;
        rep.index_ratios.push_back(double(q) / double(p));
        if (witness && rep.index_ratios.back() < witness(std::int64_t(m) + 1))
            rep.witness_ok = false;
    }

    // (ii): window decay maxima past the burn-in index
    const std::int64_t max_nu = std::int64_t(root_mags.size()) - 1;
    rep.window_decay.resize(pairs.size());
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        const auto [p, q] = pairs[m];
        if (q > max_nu)
            throw ConfigError("detect_ostrowski_gaps: window exceeds coefficient range");
        LogMag d = LogMag::zero();
        bool any = false;
        for (std::int64_t nu = std::max(p + 1, nu0); nu <= q; ++nu) {
            d = std::max(d, root_mags[std::size_t(nu)]);
            any = true;
        }
        if (any) rep.window_decay[m] = d;
    }

    std::size_t first = 0;
    while (first < pairs.size() && !rep.window_decay[first]) ++first;
    rep.first_measured_window = first;
    if (first == pairs.size())
        throw ConfigError("detect_ostrowski_gaps: every window is below the burn-in");

    rep.decay_nonincreasing = true;
    std::optional<LogMag> prev;
    for (std::size_t m = first; m < pairs.size(); ++m) {
        if (!rep.window_decay[m]) continue;
        if (prev && rep.window_decay[m]->log > prev->log + 1e-12)
            rep.decay_nonincreasing = false;
        prev = rep.window_decay[m];
    }
    rep.final_below_eps = prev->log <= std::log(eps);
    return rep;
}

ChainReport verify_decay_chain(const std::vector<TaylorPoly>& partial_sums,
                               const GapSelection& sel, double tolerance) {
    if (partial_sums.size() != sel.pairs.size())
        throw ConfigError("verify_decay_chain: one partial sum per pair required");
    if (sel.pairs.empty()) throw ConfigError("verify_decay_chain: empty selection");

    ChainReport rep;
    rep.worst_first = rep.worst_second = rep.worst_third =
        std::numeric_limits<double>::infinity();
    rep.all_ok = true;

    for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
        const auto& pr = sel.pairs[i];
        if (!pr.lambda_exact || !fits_int64(pr.lambda_p) || !fits_int64(pr.lambda_q))
            throw ConfigError("verify_decay_chain: lambda values must be exact");
        ChainRow row;
        row.k = pr.k;
        row.lambda_p = std::int64_t(pr.lambda_p);
        row.lambda_q = std::int64_t(pr.lambda_q);

        const TaylorPoly& s = partial_sums[i];
        if (s.degree_bound() < row.lambda_q)
            throw ConfigError("verify_decay_chain: S_{lambda_q} must carry its formal "
                              "degree; zero-pad with partial_sum first");

        const double radius = std::pow(3.0, double(row.k));
        const CircleNorm norm = circle_norm(s, radius);
        row.norm_bound_log = norm.coeff_sum_bound.log;

        // normalization precondition ||S||^(1/lambda_q) <= 2 via the
        // coefficient-sum bound
        if (row.norm_bound_log > double(row.lambda_q) * kLn2 + tolerance)
            throw NormalizationError(
                "verify_decay_chain: coefficient-sum bound exceeds 2^lambda_q at k = " +
                    std::to_string(row.k),
                row.k);

        const double second_rhs =
            (double(row.lambda_q) / double(row.lambda_p)) * kLn2 - double(row.k) * kLn3;
        const double third_rhs = double(row.k) * (kLn2 - kLn3);

        row.slack_first = std::numeric_limits<double>::infinity();
        row.slack_second = std::numeric_limits<double>::infinity();
        for (std::int64_t nu = row.lambda_p; nu <= row.lambda_q; ++nu) {
            const LogMag lhs = root_coeff_magnitude(s, nu);
            const double rhs =
                (double(row.lambda_q) / double(nu)) * kLn2 - double(row.k) * kLn3;
            if (!lhs.is_zero())
                row.slack_first = std::min(row.slack_first, rhs - lhs.log);
            row.slack_second = std::min(row.slack_second, second_rhs - rhs);
        }
        row.slack_third = third_rhs - second_rhs;

        row.ok = row.slack_first >= -tolerance && row.slack_second >= -tolerance &&
                 row.slack_third >= -tolerance;
        rep.worst_first = std::min(rep.worst_first, row.slack_first);
        rep.worst_second = std::min(rep.worst_second, row.slack_second);
        rep.worst_third = std::min(rep.worst_third, row.slack_third);
        rep.all_ok = rep.all_ok && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace uts
