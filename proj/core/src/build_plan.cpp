#include "uts/build_plan.hpp"

#include <cmath>
#include <numbers>

#include "uts/errors.hpp"

namespace uts {

double BuildPlan::rho(std::size_t stage_index_1based) const {
    return omega_radius * (1.0 - std::pow(2.0, -double(stage_index_1based)));
}

void BuildPlan::validate() const {
    if (!(omega_radius > 0.0)) throw ConfigError("BuildPlan: omega_radius must be > 0");
    if (stages.empty()) throw ConfigError("BuildPlan: no stages");
    if (!smallness_sets.empty() && smallness_sets.size() != stages.size())
        throw ConfigError("BuildPlan: smallness set list must match the stage count");
    if (!smallness_sets.empty() && smallness_targets.size() != stages.size())
        throw ConfigError("BuildPlan: one delta per stage required");

    std::int64_t prev_n = 0;
    std::int64_t prev_lambda = -1;
    for (std::size_t j = 0; j < stages.size(); ++j) {
        const auto& st = stages[j];
        if (st.n_index <= prev_n)
            throw ConfigError("BuildPlan: stage indices must be strictly increasing");
        const std::int64_t lam = lambda.value(st.n_index);
        if (lam <= prev_lambda)
            throw ConfigError(
                "BuildPlan: lambda must be strictly increasing across stages "
                "(empty block at stage " + std::to_string(j + 1) + ")");
        if (!(st.requested_eps > 0.0))
            throw ConfigError("BuildPlan: requested_eps must be > 0");
        if (st.sample.empty()) throw ConfigError("BuildPlan: stage sample is empty");
        for (const auto& node : st.sample.nodes) {
            if (std::abs(node) <= omega_radius)
                throw ConfigError("BuildPlan: K node inside the closed domain disk");
        }
        st.target.validate_against(st.sample);
        prev_n = st.n_index;
        prev_lambda = lam;
    }

    for (std::size_t j = 0; j < smallness_sets.size(); ++j) {
        if (!smallness_sets[j]) continue;
        if (!(smallness_targets[j] > 0.0))
            throw ConfigError("BuildPlan: delta_k must be > 0");
        const auto& ek = *smallness_sets[j];
        for (const auto& node : ek.nodes) {
            if (std::abs(node) <= omega_radius)
                throw ConfigError("BuildPlan: E node inside the closed domain disk");
        }
        for (const auto& st : stages) {
            if (ek.min_distance_to(st.sample) <= 1e-12)
                throw ConfigError("BuildPlan: E_k must be disjoint from every K");
        }
    }
}

bool BuildResult::all_stages_ok() const {
    for (const auto& st : stages)
        if (!st.ok) return false;
    return true;
}

BuildResult build_universal_polynomial(const BuildPlan& plan) {
    plan.validate();

    const std::int64_t top = plan.lambda.value(plan.stages.back().n_index);
    std::vector<QDComplex> f_coeffs(std::size_t(top) + 1,
                                    QDComplex(Complex{0.0, 0.0}));

    BuildResult result;
    std::int64_t prev_lambda = -1;  // block 1 starts at the constant term

    for (std::size_t j = 0; j < plan.stages.size(); ++j) {
        const auto& st = plan.stages[j];
        const std::int64_t lam = plan.lambda.value(st.n_index);

        // f_{j-1} so far, as a polynomial (prefix of the coefficient array;
        // the zero polynomial before the first block lands)
        const std::size_t prev_size =
            std::size_t(std::max<std::int64_t>(prev_lambda + 1, 1));
        const TaylorPoly f_prev = TaylorPoly::compensated(
            {0.0, 0.0},
            std::vector<QDComplex>(f_coeffs.begin(), f_coeffs.begin() + prev_size));

        LeastSquaresProblem ls;
        ls.min_exponent = prev_lambda + 1;
        ls.max_exponent = lam;
        double target_weight = 0.0;
        for (std::size_t i = 0; i < st.sample.nodes.size(); ++i) {
            const Complex z = st.sample.nodes[i];
            ls.nodes.push_back(z);
            ls.targets.push_back(st.target(z) - eval(f_prev, z));
            ls.weights.push_back(st.sample.weights[i]);
            target_weight += st.sample.weights[i];
        }
        const double mu = plan.control_weight_factor * target_weight;

        const std::int64_t width = lam - prev_lambda;
        const std::int64_t n_circle = plan.control_circle_nodes > 0
                                          ? plan.control_circle_nodes
                                          : 2 * width + 49;
        for (const auto& z : circle_nodes({0.0, 0.0}, plan.rho(j + 1), n_circle)) {
            ls.zero_nodes.push_back(z);
            ls.zero_weights.push_back(mu);
        }

        const bool has_ek = !plan.smallness_sets.empty() && plan.smallness_sets[j];
        if (has_ek) {
            const double delta = plan.smallness_targets[j];
            const double ratio = st.requested_eps / delta;
            const double ek_weight = std::min(mu * ratio * ratio, 1e16);
            for (const auto& z : plan.smallness_sets[j]->nodes) {
                ls.zero_nodes.push_back(z);
                ls.zero_weights.push_back(ek_weight);
            }
        }

        const LeastSquaresResult block = ls_approximate(ls);
        for (std::size_t i = 0; i < block.coeffs_qd.size(); ++i)
            f_coeffs[std::size_t(ls.min_exponent) + i] = block.coeffs_qd[i];

        // diagnostics on the cumulative partial sum f_j
        const TaylorPoly f_j = TaylorPoly::compensated(
            {0.0, 0.0},
            std::vector<QDComplex>(f_coeffs.begin(),
                                   f_coeffs.begin() + std::size_t(lam) + 1));
        StageDiagnostics diag;
        diag.stage = std::int64_t(j) + 1;
        diag.requested_eps = st.requested_eps;
        for (const auto& z : st.sample.nodes)
            diag.residual = std::max(diag.residual, std::abs(eval(f_j, z) - st.target(z)));
        for (const auto& z : circle_nodes({0.0, 0.0}, plan.rho(j + 1), n_circle))
            diag.omega_norm = std::max(diag.omega_norm, std::abs(eval(f_j, z)));
        if (has_ek) {
            for (const auto& z : plan.smallness_sets[j]->nodes)
                diag.ek_norm = std::max(diag.ek_norm, std::abs(eval(f_j, z)));
        }
        diag.ok = diag.residual <= st.requested_eps;
        result.stages.push_back(diag);

        prev_lambda = lam;
    }

    result.f = TaylorPoly::compensated({0.0, 0.0}, std::move(f_coeffs));
    return result;
}

SigmaRule SigmaRule::constant(double v) {
    SigmaRule r;
    r.kind = Kind::Constant;
    r.value = v;
    return r;
}

SigmaRule SigmaRule::inverse_m(double scale) {
    SigmaRule r;
    r.kind = Kind::InverseM;
    r.value = scale;
    return r;
}

SigmaRule SigmaRule::geometric(double scale, double base) {
    SigmaRule r;
    r.kind = Kind::Geometric;
    r.value = scale;
    r.base = base;
    return r;
}

SigmaRule SigmaRule::explicit_list(std::vector<double> v) {
    SigmaRule r;
    r.kind = Kind::Explicit;
    r.list = std::move(v);
    return r;
}

double SigmaRule::sigma(std::size_t m) const {
    switch (kind) {
        case Kind::Constant:
            return value;
        case Kind::InverseM:
            return value / double(m);
        case Kind::Geometric:
            return value * std::pow(base, double(m));
        case Kind::Explicit:
            if (m == 0 || m > list.size())
                throw ConfigError("SigmaRule: window index out of range");
            return list[m - 1];
    }
    return 0.0;
}

TaylorPoly synthesize_gap_series(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& windows,
    const SigmaRule& sigma, OffWindowRule off_window, std::int64_t degree_cap) {
    if (windows.empty()) throw ConfigError("synthesize_gap_series: no windows");
    if (degree_cap < 1) throw ConfigError("synthesize_gap_series: degree cap < 1");

    double prev_sigma = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < windows.size(); ++m) {
        const auto [p, q] = windows[m];
        if (p < 1 || q <= p)
            throw ConfigError("synthesize_gap_series: bad window (p, q]");
        if (q > degree_cap)
            throw ConfigError("synthesize_gap_series: window exceeds the degree cap");
        if (m > 0 && windows[m - 1].second > p)
            throw ConfigError("synthesize_gap_series: windows must be ordered");
        const double s = sigma.sigma(m + 1);
        if (!(s >= 0.0) || s > prev_sigma + 1e-15)
            throw ConfigError("synthesize_gap_series: sigma_m must be nonnegative "
                              "and nonincreasing");
        prev_sigma = s;
    }

    std::vector<Complex> coeffs(std::size_t(degree_cap) + 1, Complex{0.0, 0.0});
    if (off_window == OffWindowRule::UnitModulus) {
        // deterministic quasi-random phases
        const double golden = 0.6180339887498949;
        for (std::size_t nu = 0; nu < coeffs.size(); ++nu) {
            const double frac = std::fmod(double(nu) * golden, 1.0);
            coeffs[nu] = std::polar(1.0, 2.0 * std::numbers::pi * frac);
        }
    }
    for (std::size_t m = 0; m < windows.size(); ++m) {
        const auto [p, q] = windows[m];
        const double s = sigma.sigma(m + 1);
        for (std::int64_t nu = p + 1; nu <= q; ++nu) {
            coeffs[std::size_t(nu)] =
                (s == 0.0) ? Complex{0.0, 0.0}
                           : Complex{std::exp(double(nu) * std::log(s)), 0.0};
        }
    }
    return TaylorPoly({0.0, 0.0}, std::move(coeffs));
}

std::vector<std::pair<std::int64_t, std::int64_t>> lambda_windows(
    const GapSelection& sel) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& pr : sel.pairs) {
        if (!pr.lambda_exact || !fits_int64(pr.lambda_p) || !fits_int64(pr.lambda_q))
            throw ConfigError("lambda_windows: lambda values must be exact");
        out.emplace_back(std::int64_t(pr.lambda_p), std::int64_t(pr.lambda_q));
    }
    return out;
}

}  // namespace uts
