// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion carries its runtime budget and pins its tolerances in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "support/oracles.hpp"
#include "support/reference_plan.hpp"
#include "uts/ostrowski.hpp"
#include "uts/serialize.hpp"
#include "uts/transport.hpp"

using namespace uts;

namespace {

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<bool()> run;
};

constexpr double kLn3 = 1.0986122886681098;
constexpr double kLn2 = 0.6931471805599453;

bool approx_le(double a, double b, double slack) { return a <= b + slack; }

// 1. recentering: 200 random polynomials, round trip and evaluation
// invariance within 1e-9 relative
bool recentering_suite() {
    oracles::DiskSampler sampler(160901);
    for (int trial = 0; trial < 200; ++trial) {
        const TaylorPoly p = sampler.poly(64, {0, 0});
        const Complex zeta = sampler.sample(1.0);
        const TaylorPoly shifted = recenter(p, zeta);
        const TaylorPoly back = recenter(shifted, p.center);
        if (back.coeffs.size() != p.coeffs.size()) return false;
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
            const Complex delta = back.coeffs[i].value() - p.coeffs[i].value();
            if (std::abs(delta) > 1e-9 * (1.0 + std::abs(p.coeffs[i].value())))
                return false;
        }
        for (int i = 0; i < 20; ++i) {
            const Complex z = sampler.sample(2.0);
            const Complex a = eval(p, z);
            const Complex b = eval(shifted, z);
            if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(a))) return false;
        }
    }
    return true;
}

// 2. selectors: quadratic families over n_k = k and 2k, geometric 2^n, with
// the ratio sandwiches exact for k0 <= k <= 40
bool gap_selector_suite() {
    for (const std::vector<double>& coeffs :
         {std::vector<double>{0.0, 0.0, 1.0}, std::vector<double>{0.0, 3.0, 1.0}}) {
        for (std::int64_t step : {1, 2}) {
            const IndexStream stream = IndexStream::affine(step, 0);
            const GapSelection sel = select_gaps_polynomial(coeffs, stream, 40);
            if (sel.k0 + 39 != sel.pairs.back().k) return false;
            if (sel.pairs.back().k < 40) return false;
            const auto rep = check_gap_conditions(
                IndexSequence::polynomial_floor(coeffs, 1LL << 60), stream, sel,
                polynomial_ratio_witness(coeffs, sel));
            if (!rep.all_ok()) return false;
            for (const auto& pr : sel.pairs) {
                if (pr.k > 40) break;
                if (!pr.lambda_exact) return false;
                const DD ratio = dd_div(dd_from_int128(pr.lambda_q),
                                        dd_from_int128(pr.lambda_p));
                const DD p_val =
                    dd_poly_eval(coeffs.data(), coeffs.size(), double(pr.p));
                const DD p_below =
                    dd_poly_eval(coeffs.data(), coeffs.size(), double(pr.p - 1));
                const DD sqrt_k = dd_sqrt(double(pr.k));
                const DD witness =
                    dd_div(dd_sub(dd_mul(sqrt_k, p_below), DD(1.0)), p_val);
                const DD upper =
                    dd_div(dd_mul(sqrt_k, p_val), dd_sub(p_val, DD(1.0)));
                if (!dd_less_equal(witness, ratio)) return false;
                if (!dd_less(ratio, upper)) return false;
            }
        }
    }

    const auto seq = IndexSequence::geometric(2, 2.0, 1.9, 2.1, 100000);
    const GapSelection sel = select_gaps_geometric(seq, IndexStream::identity(), 41 - 3);
    if (sel.k0 != 3 || sel.pairs.back().k < 40) return false;
    const auto rep = check_gap_conditions(seq, IndexStream::identity(), sel,
                                          geometric_ratio_witness(sel, 1.9));
    if (!rep.all_ok()) return false;
    for (const auto& pr : sel.pairs) {
        const std::int64_t width = pr.q - pr.p;
        const double mid = pr.log_lambda_q - pr.log_lambda_p;  // (q-p) ln 2 here
        if (!(double(width) * std::log(1.9) < mid)) return false;
        if (!(mid < double(width) * std::log(2.1))) return false;
    }
    return true;
}

// 3. decay chain: tight monomials make the first link an equality; the
// synthesized fixture meets every link through k = 8 at radius 3^k
bool decay_chain_suite() {
    for (std::int64_t k = 2; k <= 8; ++k) {
        GapSelection sel;
        sel.k0 = k;
        GapPair pair;
        pair.k = k;
        pair.p = 2;
        pair.q = 3;
        // sized so the saturating coefficient 2^lq / 3^(k lq) stays within
        // double range through k = 8
        pair.lambda_p = 6 * k;
        pair.lambda_q = 6 * k + 10;
        pair.lambda_exact = true;
        pair.log_lambda_p = std::log(double(pair.lambda_p));
        pair.log_lambda_q = std::log(double(pair.lambda_q));
        sel.pairs.push_back(pair);
        const double lq = double(pair.lambda_q);
        const double log_c = lq * kLn2 - double(k) * lq * kLn3;
        const TaylorPoly tight =
            TaylorPoly::monomial(std::int64_t(lq), std::polar(std::exp(log_c), 1.1));
        const ChainReport rep = verify_decay_chain({tight}, sel);
        if (!rep.all_ok) return false;
        if (std::abs(rep.rows[0].slack_first) > 1e-9) return false;
    }

    const GapSelection sel =
        select_gaps_polynomial({0.0, 0.0, 1.0}, IndexStream::identity(), 5);
    if (sel.pairs.back().k != 8) return false;
    std::vector<double> sigmas;
    for (const auto& pr : sel.pairs)
        sigmas.push_back(std::pow(3.0, -double(pr.k) - 1.0));
    const TaylorPoly f = synthesize_gap_series(
        lambda_windows(sel), SigmaRule::explicit_list(sigmas), OffWindowRule::Zeros,
        std::int64_t(sel.pairs.back().lambda_q));
    std::vector<TaylorPoly> sums;
    for (const auto& pr : sel.pairs)
        sums.push_back(partial_sum(f, std::int64_t(pr.lambda_q)));
    const ChainReport rep = verify_decay_chain(sums, sel);
    return rep.all_ok && rep.worst_first >= -1e-9 && rep.worst_second >= -1e-9 &&
           rep.worst_third >= -1e-9;
}

// 4. transport: zero windows give exactly zero D1; sigma = 1/k windows stay
// below the closed-form geometric bound at R in {1, 2}
bool transport_suite() {
    const GapSelection sel =
        select_gaps_polynomial({0.0, 0.0, 1.0}, IndexStream::identity(), 5);
    ExperimentConfig cfg;
    cfg.omega_radius = 1.0;
    cfg.radii = {1.0, 2.0};
    cfg.lgrid = LGrid::polar(0.3, 5, 5);

    const TaylorPoly zero_window = synthesize_gap_series(
        lambda_windows(sel), SigmaRule::constant(0.0), OffWindowRule::UnitModulus,
        std::int64_t(sel.pairs.back().lambda_q));
    const auto zero_trace = run_transport_experiment(zero_window, sel, cfg);
    for (const auto& row : zero_trace.rows)
        if (!row.d1.is_zero()) return false;

    std::vector<double> sigmas;
    for (const auto& pr : sel.pairs) sigmas.push_back(1.0 / double(pr.k));
    const TaylorPoly f = synthesize_gap_series(
        lambda_windows(sel), SigmaRule::explicit_list(sigmas), OffWindowRule::Zeros,
        std::int64_t(sel.pairs.back().lambda_q));
    const auto trace = run_transport_experiment(f, sel, cfg);
    for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
        const auto& pr = sel.pairs[i];
        LogMag bound = LogMag::zero();
        for (double radius : cfg.radii) {
            std::vector<LogMag> terms;
            for (std::int64_t nu = std::int64_t(pr.lambda_p) + 1;
                 nu <= std::int64_t(pr.lambda_q); ++nu)
                terms.push_back(
                    LogMag::from_log(double(nu) * std::log(radius / double(pr.k))));
            bound = std::max(bound, log_sum(terms));
        }
        if (!approx_le(trace.rows[i].d1.log, bound.log, 1e-12)) return false;
    }
    return true;
}

// 5. end-to-end center independence on the shipped reference plan
bool center_independence_suite() {
    for (const auto& target :
         {reference_plan::target_one(), reference_plan::target_z()}) {
        const BuildPlan plan = reference_plan::make_plan(target);
        ExperimentConfig cfg = reference_plan::make_config();
        cfg.target = target;
        const auto result = run_center_independence(plan, cfg);
        for (const auto& st : result.build.stages)
            if (!(st.residual <= 1e-3)) return false;
        if (!result.trace.d3_trend ||
            !(result.trace.d3_trend->final_value.linear() <= 5e-3))
            return false;
        if (!result.trace.d2_trend || !result.trace.d2_trend->nonincreasing)
            return false;
        if (!result.pass) return false;
    }
    return true;
}

// 6. least-squares oracle equivalence on 50 random small instances
bool least_squares_suite() {
    oracles::DiskSampler sampler(460);
    std::uniform_int_distribution<int> m_dist(0, 3);
    std::uniform_int_distribution<int> w_dist(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = m_dist(sampler.rng());
        const int d = m + w_dist(sampler.rng());
        LeastSquaresProblem prob;
        prob.min_exponent = m;
        prob.max_exponent = d;
        const std::size_t n_nodes =
            std::min<std::size_t>(8, std::size_t(d - m) + 3);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            prob.nodes.push_back(
                std::polar(0.7 + 0.25 * double(i), 0.9 * double(i) + 0.13));
            prob.targets.push_back(sampler.sample(2.0));
            prob.weights.push_back(0.5 + double(w_dist(sampler.rng())));
        }
        const auto res = ls_approximate(prob);
        const auto oracle = oracles::normal_equations(prob.nodes, prob.targets,
                                                      prob.weights, m, d);
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            if (std::abs(res.coeffs[i] - oracle[i]) > 1e-8) return false;
        }
    }
    return true;
}

// 7. factorial probe: n_k = 2k infeasible at k = 1, matching exhaustive
// enumeration; byte-identical reports across runs
bool factorial_probe_suite() {
    const auto rep = probe_factorial(IndexStream::affine(2, 0), 12);
    if (!rep.first_infeasible_k || *rep.first_infeasible_k != 1) return false;

    std::vector<std::int64_t> stream_values;
    for (std::int64_t k = 1; 2 * k <= 12; ++k) stream_values.push_back(2 * k);
    const auto best =
        oracles::exhaustive_factorial_min_ratios(stream_values, 12, rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        if (double(rep.rows[i].ratio) != best[i]) return false;

    const auto rep2 = probe_factorial(IndexStream::affine(2, 0), 12);
    if (probe_report_to_text(rep) != probe_report_to_text(rep2)) return false;
    if (probe_report_to_json(rep) != probe_report_to_json(rep2)) return false;

    // identity stream for horizons up to 12 against the same oracle
    const auto rep_id = probe_factorial(IndexStream::identity(), 12);
    std::vector<std::int64_t> identity_values;
    for (std::int64_t k = 1; k <= 12; ++k) identity_values.push_back(k);
    const auto best_id = oracles::exhaustive_factorial_min_ratios(
        identity_values, 12, rep_id.rows.size());
    for (std::size_t i = 0; i < rep_id.rows.size(); ++i)
        if (double(rep_id.rows[i].ratio) != best_id[i]) return false;
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"recentering suite (round trip + evaluation invariance)", 5.0,
         recentering_suite},
        {"gap selector suite (conditions + sandwiches, k <= 40)", 5.0,
         gap_selector_suite},
        {"decay-chain suite (tight monomials + synthesized fixture)", 10.0,
         decay_chain_suite},
        {"transport suite (zero windows + geometric bounds)", 10.0,
         transport_suite},
        {"center independence (reference plan, g = 1 and g = z)", 60.0,
         center_independence_suite},
        {"least-squares oracle equivalence (50 instances)", 5.0,
         least_squares_suite},
        {"factorial probe (infeasibility + determinism)", 5.0,
         factorial_probe_suite},
    };

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            std::printf("[%zu/7] %s ... FAIL (exception: %s)\n", i + 1,
                        criteria[i].name, e.what());
            all_ok = false;
            continue;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        const bool in_budget = seconds < criteria[i].budget_seconds;
        std::printf("[%zu/7] %s ... %s (%.2f s, budget %.0f s)\n", i + 1,
                    criteria[i].name, ok && in_budget ? "PASS" : "FAIL", seconds,
                    criteria[i].budget_seconds);
        all_ok = all_ok && ok && in_budget;
    }
    return all_ok ? 0 : 1;
}
