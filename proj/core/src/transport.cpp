#include "uts/transport.hpp"

#include <cmath>
#include <numbers>

#include "uts/errors.hpp"

namespace uts {

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> exact_windows(
    const GapSelection& sel) {
    return lambda_windows(sel);
}

LogMag d1_value(const TaylorPoly& f, std::int64_t lambda_p, std::int64_t lambda_q,
                const std::vector<double>& radii) {
    // S_q - S_p around the same center: exactly the coefficients in
    // (lambda_p, lambda_q], zero elsewhere
    std::vector<QDComplex> diff(std::size_t(lambda_q) + 1,
                                QDComplex(Complex{0.0, 0.0}));
    const std::int64_t top = std::min<std::int64_t>(lambda_q, f.degree_bound());
    for (std::int64_t nu = lambda_p + 1; nu <= top; ++nu)
        diff[std::size_t(nu)] = f.coeffs[std::size_t(nu)];
    const TaylorPoly delta = TaylorPoly::compensated(f.center, std::move(diff));
    LogMag worst = LogMag::zero();
    for (double r : radii) worst = std::max(worst, circle_norm(delta, r).sampled);
    return worst;
}

}  // namespace

LGrid LGrid::polar(double max_radius, std::int64_t radii_count,
                   std::int64_t angle_count) {
    if (!(max_radius > 0.0) || radii_count < 1 || angle_count < 1)
        throw ConfigError("LGrid::polar: bad parameters");
    LGrid g;
    for (std::int64_t r = 1; r <= radii_count; ++r) {
        const double rho = max_radius * double(r) / double(radii_count);
        for (std::int64_t a = 0; a < angle_count; ++a) {
            const double theta = 2.0 * std::numbers::pi * double(a) / double(angle_count);
            g.points.push_back(std::polar(rho, theta));
        }
    }
    return g;
}

LGrid LGrid::single(Complex zeta) {
    LGrid g;
    g.points.push_back(zeta);
    return g;
}

void ExperimentConfig::validate() const {
    if (!(omega_radius > 0.0))
        throw ConfigError("ExperimentConfig: omega_radius must be > 0");
    if (radii.empty()) throw ConfigError("ExperimentConfig: no evaluation radii");
    for (double r : radii)
        if (!(r > 0.0)) throw ConfigError("ExperimentConfig: radii must be > 0");
    if (lgrid.points.empty()) throw ConfigError("ExperimentConfig: empty L grid");
    for (const auto& zeta : lgrid.points) {
        if (std::abs(zeta) >= omega_radius)
            throw ConfigError("ExperimentConfig: L grid leaves the domain disk");
    }
    if (!(tolerance > 0.0)) throw ConfigError("ExperimentConfig: tolerance must be > 0");
    if (target) {
        if (approximation_set) target->validate_against(*approximation_set);
        // rational targets must also stay clear of the evaluation circles
        for (const auto& pole : target->poles()) {
            for (double r : radii) {
                if (std::abs(std::abs(pole) - r) < 0.1)
                    throw ConfigError(
                        "ExperimentConfig: target pole within 0.1 of an "
                        "evaluation circle");
            }
        }
    }
}

TrendStats trend_nonincreasing(const std::vector<LogMag>& column, double log_slack) {
    TrendStats t;
    t.final_value = column.empty() ? LogMag::zero() : column.back();
    if (column.size() <= 1) {
        t.burn_in = 0;
        t.nonincreasing = true;
        return t;
    }
    std::size_t burn = 0;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        if (column[i + 1].log > column[i].log + log_slack) burn = i + 1;
    }
    t.burn_in = burn;
    t.nonincreasing = burn + 1 < column.size();
    return t;
}

namespace {

enum class D2Path { PerPair, SharedRecenter };

ConvergenceTrace run_transport_impl(const TaylorPoly& f, const GapSelection& sel,
                                    const ExperimentConfig& config, D2Path path) {
    config.validate();
    if (sel.pairs.empty()) throw ConfigError("run_transport_experiment: no pairs");
    const auto windows = exact_windows(sel);

    const bool want_d2 = config.approximation_set.has_value();
    const bool want_d3 = want_d2 && config.target.has_value();

    ConvergenceTrace trace;
    trace.rows.resize(sel.pairs.size());

    // reference truncations around zeta0 and their values on K
    std::vector<std::vector<Complex>> center_values(sel.pairs.size());
    if (want_d2) {
        const auto& K = config.approximation_set->nodes;
        for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
            const TaylorPoly s_p = partial_sum(f, windows[i].first);
            auto& vals = center_values[i];
            vals.reserve(K.size());
            for (const auto& z : K) vals.push_back(eval(s_p, z));
        }
    }

    // shared-recenter path: one shift per zeta, truncations after
    std::vector<std::vector<std::vector<Complex>>> shifted_values;
    if (want_d2 && path == D2Path::SharedRecenter) {
        const auto& K = config.approximation_set->nodes;
        shifted_values.assign(config.lgrid.points.size(), {});
        for (std::size_t zi = 0; zi < config.lgrid.points.size(); ++zi) {
            const TaylorPoly f_at_zeta = recenter(f, config.lgrid.points[zi]);
            auto& per_pair = shifted_values[zi];
            per_pair.resize(sel.pairs.size());
            for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
                const TaylorPoly s = partial_sum(f_at_zeta, windows[i].first);
                for (const auto& z : K) per_pair[i].push_back(eval(s, z));
            }
        }
    }

    for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
        auto& row = trace.rows[i];
        row.k = sel.pairs[i].k;
        row.lambda_p = windows[i].first;
        row.lambda_q = windows[i].second;
        row.d1 = d1_value(f, row.lambda_p, row.lambda_q, config.radii);

        if (!want_d2) continue;
        const auto& K = config.approximation_set->nodes;

        LogMag d2 = LogMag::zero();
        LogMag d3 = LogMag::zero();
        for (std::size_t zi = 0; zi < config.lgrid.points.size(); ++zi) {
            std::vector<Complex> vals;
            if (path == D2Path::SharedRecenter) {
                vals = shifted_values[zi][i];
            } else {
                const TaylorPoly s =
                    partial_sum_at(f, row.lambda_p, config.lgrid.points[zi]);
                vals.reserve(K.size());
                for (const auto& z : K) vals.push_back(eval(s, z));
            }
            for (std::size_t n = 0; n < K.size(); ++n) {
                d2 = std::max(d2, LogMag::of(vals[n] - center_values[i][n]));
                if (want_d3)
                    d3 = std::max(d3, LogMag::of(vals[n] -
                                                 (*config.target)(K[n])));
            }
        }
        row.d2 = d2;
        if (want_d3) {
            row.d3 = d3;
            LogMag ce = LogMag::zero();
            for (std::size_t n = 0; n < K.size(); ++n)
                ce = std::max(ce, LogMag::of(center_values[i][n] -
                                             (*config.target)(K[n])));
            row.center_error = ce;
        }
    }

    std::vector<LogMag> col;
    for (const auto& r : trace.rows) col.push_back(r.d1);
    trace.d1_trend = trend_nonincreasing(col);
    if (want_d2) {
        col.clear();
        for (const auto& r : trace.rows) col.push_back(*r.d2);
        trace.d2_trend = trend_nonincreasing(col);
    }
    if (want_d3) {
        col.clear();
        for (const auto& r : trace.rows) col.push_back(*r.d3);
        trace.d3_trend = trend_nonincreasing(col);
    }
    return trace;
}

}  // namespace

ConvergenceTrace run_transport_experiment(const TaylorPoly& f, const GapSelection& sel,
                                          const ExperimentConfig& config) {
    return run_transport_impl(f, sel, config, D2Path::PerPair);
}

ConvergenceTrace transport_by_shared_recenter(const TaylorPoly& f,
                                              const GapSelection& sel,
                                              const ExperimentConfig& config) {
    return run_transport_impl(f, sel, config, D2Path::SharedRecenter);
}

CenterIndependenceResult run_center_independence(const BuildPlan& plan,
                                                 const ExperimentConfig& config) {
    config.validate();
    if (plan.stages.empty()) throw ConfigError("run_center_independence: no stages");
    if (plan.lambda.kind() != IndexSequence::Kind::PolynomialFloor)
        throw ConfigError("run_center_independence: plan lambda must be a "
                          "polynomial-floor sequence (the selector needs P)");
    if (!config.approximation_set || !config.target)
        throw ConfigError("run_center_independence: config must carry K and g");

    CenterIndependenceResult result;
    result.disclaimer =
        "finite-stage empirical demonstration at the configured tolerance; "
        "no statement about the full function classes is implied";

    // all stages must aim at one (K, g)
    const auto& first_stage = plan.stages.front();
    for (const auto& st : plan.stages) {
        if (st.sample.nodes != first_stage.sample.nodes ||
            st.target.describe() != first_stage.target.describe())
            throw ConfigError(
                "run_center_independence: stages must target a single (K, g)");
    }

    result.build = build_universal_polynomial(plan);
    for (const auto& st : result.build.stages)
        if (!st.ok) result.failed_stages.push_back(st.stage);

    std::vector<std::int64_t> stage_indices;
    for (const auto& st : plan.stages) stage_indices.push_back(st.n_index);
    const IndexStream stream = IndexStream::explicit_list(stage_indices);

    // as many pairs as the stage indices feasibly support
    bool selected = false;
    for (std::int64_t count = std::int64_t(plan.stages.size()); count >= 1; --count) {
        try {
            result.selection = select_gaps_polynomial(plan.lambda.poly_coeffs(),
                                                      stream, count, 512);
            selected = true;
            break;
        } catch (const InfeasibleError&) {
        }
    }
    if (!selected)
        throw InfeasibleError(
            "run_center_independence: stage indices admit no gap pair", 1);

    result.trace = run_transport_experiment(result.build.f, result.selection, config);

    const bool d3_ok =
        result.trace.d3_trend &&
        result.trace.d3_trend->final_value.log <= std::log(config.tolerance);
    const bool d2_ok = result.trace.d2_trend && result.trace.d2_trend->nonincreasing;
    result.pass = d3_ok && d2_ok && result.failed_stages.empty();
    return result;
}

FactorialProbeReport probe_factorial(const IndexStream& stream, std::int64_t horizon) {
    if (horizon < 2)
        throw ConfigError("probe_factorial: horizon too small to place any pair");

    FactorialProbeReport rep;
    rep.header =
        "factorial feasibility probe: ratio-minimal chains within a finite "
        "horizon; demonstrates how the ratio <= k constraint interacts with "
        "factorial growth and proves nothing beyond the horizon";

    // ratio-minimal chain: q_i = i-th usable stream element (q >= 2 so that
    // p = q - 1 >= 1); ratio = q!/(q-1)! = q exactly
    std::int64_t q_prev = 1;
    std::int64_t position = 0;
    std::int64_t k0 = 1;
    std::int64_t argmax_position = 0;
    while (true) {
        auto q = stream.first_greater(q_prev);
        if (!q || *q > horizon) break;
        ++position;
        FactorialProbeRow row;
        row.position = position;
        row.q = *q;
        row.p = *q - 1;
        row.ratio = *q;
        row.lambda_representable = *q <= 20;  // 21! overflows 64 bits
        row.log_lambda_q = std::lgamma(double(*q) + 1.0);
        rep.rows.push_back(row);

        // ratio_i <= k0 + i - 1 needs k0 >= ratio_i - i + 1
        const std::int64_t need = row.ratio - position + 1;
        if (need > k0) {
            k0 = need;
            argmax_position = position;
        }
        if (!rep.first_infeasible_k && row.ratio > position)
            rep.first_infeasible_k = position;
        q_prev = *q;
    }
    if (rep.rows.empty())
        throw ConfigError("probe_factorial: horizon too small to place any pair");
    rep.k0_within_horizon = k0;
    rep.k0_at_horizon_edge = argmax_position == position && position > 0 && k0 > 1;
    return rep;
}

}  // namespace uts
