#include "uts/least_squares.hpp"

#include <cmath>
#include <limits>

#include "uts/errors.hpp"
#include "uts/qd.hpp"

namespace uts {

namespace {

DDComplex ddc_mul_c(const DDComplex& a, const DDComplex& b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

QDComplex qdc_mul_plain(const QDComplex& a, Complex h) {
    const QD re = qd_sub(qd_mul(a.re, h.real()), qd_mul(a.im, h.imag()));
    const QD im = qd_add(qd_mul(a.re, h.imag()), qd_mul(a.im, h.real()));
    return {re, im};
}

QDComplex qdc_scale(const QDComplex& a, double inv) {
    return {qd_mul(a.re, inv), qd_mul(a.im, inv)};
}

Complex weighted_dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm2(const std::vector<Complex>& a) {
    double acc = 0.0;
    for (const auto& v : a) acc += std::norm(v);
    return std::sqrt(acc);
}

}  // namespace

TaylorPoly LeastSquaresResult::polynomial() const {
    std::vector<QDComplex> full(std::size_t(min_exponent) + coeffs_qd.size(),
                                QDComplex(Complex{0.0, 0.0}));
    for (std::size_t i = 0; i < coeffs_qd.size(); ++i)
        full[std::size_t(min_exponent) + i] = coeffs_qd[i];
    return TaylorPoly::compensated({0.0, 0.0}, std::move(full));
}

LeastSquaresResult ls_approximate(const LeastSquaresProblem& problem) {
    const std::int64_t m = problem.min_exponent;
    const std::int64_t d = problem.max_exponent;
    if (m < 0 || d < m) throw ConfigError("ls_approximate: need 0 <= m <= d");
    if (problem.nodes.size() != problem.targets.size() ||
        problem.nodes.size() != problem.weights.size())
        throw ConfigError("ls_approximate: node/target/weight sizes differ");
    if (problem.zero_nodes.size() != problem.zero_weights.size())
        throw ConfigError("ls_approximate: zero node/weight sizes differ");

    const std::size_t n_t = problem.nodes.size();
    const std::size_t n_z = problem.zero_nodes.size();
    const std::size_t n = n_t + n_z;
    const std::size_t basis = std::size_t(d - m) + 1;
    if (n < basis)
        throw ConfigError("ls_approximate: need at least " + std::to_string(basis) +
                          " nodes for " + std::to_string(basis) + " exponents");

    std::vector<Complex> z(n);
    std::vector<double> sqrt_w(n);
    std::vector<Complex> t_scaled(n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n_t; ++i) {
        if (!(problem.weights[i] > 0.0))
            throw ConfigError("ls_approximate: weights must be positive");
        z[i] = problem.nodes[i];
        sqrt_w[i] = std::sqrt(problem.weights[i]);
        t_scaled[i] = problem.targets[i] * sqrt_w[i];
    }
    for (std::size_t j = 0; j < n_z; ++j) {
        if (!(problem.zero_weights[j] > 0.0))
            throw ConfigError("ls_approximate: weights must be positive");
        z[n_t + j] = problem.zero_nodes[j];
        sqrt_w[n_t + j] = std::sqrt(problem.zero_weights[j]);
    }

    // start vector z^m, pre-scaled in log domain so huge |z|^m cannot
    // overflow before normalization
    double s0 = 0.0;
    if (m > 0) {
        s0 = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(z[i]) > 0.0)
                s0 = std::max(s0, double(m) * std::log(std::abs(z[i])));
        }
        if (std::isinf(s0))
            throw NumericalError("ls_approximate: rank deficiency (all nodes at 0); "
                                 "raise the degree budget or drop constraints");
    }

    std::vector<std::vector<Complex>> q;        // orthonormal basis values
    // Monomial coefficients per basis vector, carried in compensated form:
    // they cancel massively in the final assembly, and plain doubles leave
    // junk far above the coefficients that survive.
    std::vector<std::vector<QDComplex>> mono;
    q.reserve(basis);
    mono.reserve(basis);

    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(z[i]);
        if (r == 0.0 && m > 0) {
            v[i] = {0.0, 0.0};
        } else {
            const double mag = (m == 0) ? 1.0 : std::exp(double(m) * std::log(r) - s0);
            v[i] = std::polar(mag, double(m) * std::arg(z[i])) * sqrt_w[i];
        }
    }
    if (m > 0 && std::exp(-s0) == 0.0)
        throw OverflowError(
            "ls_approximate: block magnitude range exceeds double precision");
    double beta = norm2(v);
    if (beta <= 0.0)
        throw NumericalError("ls_approximate: rank deficiency at the start vector; "
                             "raise the degree budget or drop constraints");
    for (auto& x : v) x /= beta;
    q.push_back(v);
    mono.push_back({QDComplex(Complex{std::exp(-s0) / beta, 0.0})});

    // drift probes: the heaviest-reach node and a mid-magnitude node
    std::size_t probe_a = 0, probe_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(z[i]) > std::abs(z[probe_a])) probe_a = i;
    }
    double mid_target = 0.5 * std::abs(z[probe_a]);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(std::abs(z[i]) - mid_target) <
            std::abs(std::abs(z[probe_b]) - mid_target))
            probe_b = i;
    }

    std::vector<DDComplex> zm_cache;  // z_i^m, built on the first refresh

    for (std::size_t j = 0; j + 1 < basis; ++j) {
        // multiply by z
        std::vector<Complex> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = z[i] * q[j][i];
        const double pre_norm = norm2(w);

        // twice-reorthogonalized Gram-Schmidt; the norm after the second
        // pass tells whether any new direction survives at this precision
        std::vector<Complex> h(j + 1, Complex{0.0, 0.0});
        double after_first = pre_norm;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t l = 0; l <= j; ++l) {
                const Complex c = weighted_dot(q[l], w);
                h[l] += c;
                for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[l][i];
            }
            if (pass == 0) after_first = norm2(w);
        }
        beta = norm2(w);
        if (j == 0 && beta <= 1e-14 * pre_norm)
            throw NumericalError(
                "ls_approximate: rank deficiency in the orthogonalization "
                "(degenerate node set); raise the degree budget or drop "
                "constraints");
        if (beta <= 1e-13 * pre_norm || beta <= 0.5 * after_first) {
            // Numerical rank of the weighted node geometry reached: higher
            // exponents are unresolvable at double precision.  The solve
            // proceeds on the resolved subspace; coefficients past it are
            // exactly zero.
            break;
        }
        for (auto& x : w) x /= beta;

        // same recurrence on the monomial representation: C_{j+1} =
        // (shift(C_j) - sum h_l C_l) / beta
        std::vector<QDComplex> c(j + 2, QDComplex(Complex{0.0, 0.0}));
        for (std::size_t i = 0; i < mono[j].size(); ++i) c[i + 1] = mono[j][i];
        const Complex neg{-1.0, 0.0};
        for (std::size_t l = 0; l <= j; ++l) {
            for (std::size_t i = 0; i < mono[l].size(); ++i)
                c[i] = qdc_add(c[i], qdc_mul_plain(qdc_mul_plain(mono[l][i], h[l]), neg));
        }
        const double inv_beta = 1.0 / beta;
        for (auto& x : c) x = qdc_scale(x, inv_beta);

        // The double value array and the (compensated, effectively exact)
        // monomial representation drift apart at a rate set by the node
        // geometry: orthogonal-polynomial recurrences on spread-out node
        // sets amplify representation error exponentially.  Probe the drift
        // at the heaviest nodes and, when it accumulates, refresh the
        // values from the representation and re-orthogonalize, mirroring
        // every correction on the representation.  That resets the
        // divergence at the cost of one evaluation sweep.
        {
            auto rep_poly = [&m](const std::vector<QDComplex>& rep) {
                std::vector<QDComplex> full(std::size_t(m) + rep.size(),
                                            QDComplex(Complex{0.0, 0.0}));
                for (std::size_t i = 0; i < rep.size(); ++i)
                    full[std::size_t(m) + i] = rep[i];
                return TaylorPoly::compensated({0.0, 0.0}, std::move(full));
            };
            TaylorPoly probe_poly = rep_poly(c);
            double drift = 0.0;
            for (std::size_t idx : {probe_a, probe_b}) {
                drift = std::max(drift,
                                 std::abs(eval(probe_poly, z[idx]) * sqrt_w[idx] -
                                          w[idx]));
            }
            if (drift > 1e-12) {
                if (zm_cache.empty()) {
                    zm_cache.assign(n, DDComplex(Complex{1.0, 0.0}));
                    for (std::size_t i = 0; i < n; ++i) {
                        DDComplex p(Complex{1.0, 0.0});
                        const DDComplex zi(z[i]);
                        for (std::int64_t e = 0; e < m; ++e) p = ddc_mul_c(p, zi);
                        zm_cache[i] = p;
                    }
                }
                // double-double sweep over the block polynomial times the
                // cached z^m; fall back to the compensated evaluation when
                // the spot check disagrees (heavy cancellation geometries)
                auto dd_value = [&](std::size_t i) {
                    DDComplex acc = c.back().dd();
                    const DDComplex zi(z[i]);
                    for (std::size_t k = c.size() - 1; k-- > 0;)
                        acc = ddc_add(ddc_mul_c(acc, zi), c[k].dd());
                    return ddc_mul_c(acc, zm_cache[i]).value();
                };
                bool dd_ok = true;
                for (std::size_t idx : {probe_a, probe_b}) {
                    if (std::abs(dd_value(idx) - eval(probe_poly, z[idx])) > 1e-14)
                        dd_ok = false;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    w[i] = (dd_ok ? dd_value(i) : eval(probe_poly, z[i])) *
                           sqrt_w[i];
                }
                // the refreshed values are the recurrence polynomial's true
                // values; restore orthonormality and apply the same
                // corrections to the representation
                for (int pass = 0; pass < 2; ++pass) {
                    for (std::size_t l = 0; l <= j; ++l) {
                        const Complex corr = weighted_dot(q[l], w);
                        for (std::size_t i = 0; i < n; ++i) w[i] -= corr * q[l][i];
                        const Complex neg_corr = -corr;
                        for (std::size_t i = 0; i < mono[l].size(); ++i)
                            c[i] = qdc_add(c[i],
                                           qdc_mul_plain(mono[l][i], neg_corr));
                    }
                }
                const double beta2 = norm2(w);
                // a nearly-dependent refreshed vector marks the end of the
                // exponents this node geometry can resolve
                if (beta2 <= 1e-8) break;
                const double inv_beta2 = 1.0 / beta2;
                for (auto& x : w) x *= inv_beta2;
                for (auto& x : c) x = qdc_scale(x, inv_beta2);

                // the re-orthogonalization itself ran in doubles; if the
                // pair is still inconsistent, stop extending the basis
                probe_poly = rep_poly(c);
                double post = 0.0;
                for (std::size_t idx : {probe_a, probe_b}) {
                    post = std::max(post,
                                    std::abs(eval(probe_poly, z[idx]) *
                                                 sqrt_w[idx] -
                                             w[idx]));
                }
                if (post > 5e-13) break;
            }
        }

        q.push_back(std::move(w));
        mono.push_back(std::move(c));
    }

    // projection of the target onto the (possibly rank-truncated) basis
    const std::size_t rank = q.size();
    std::vector<Complex> proj(rank);
    for (std::size_t j = 0; j < rank; ++j) proj[j] = weighted_dot(q[j], t_scaled);

    LeastSquaresResult result;
    result.min_exponent = m;
    result.coeffs_qd.assign(basis, QDComplex(Complex{0.0, 0.0}));
    for (std::size_t j = 0; j < rank; ++j) {
        for (std::size_t i = 0; i < mono[j].size(); ++i)
            result.coeffs_qd[i] =
                qdc_add(result.coeffs_qd[i], qdc_mul_plain(mono[j][i], proj[j]));
    }
    result.coeffs.assign(basis, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < basis; ++i)
        result.coeffs[i] = result.coeffs_qd[i].value();

    // residual from basis values on the target nodes
    double res = 0.0;
    for (std::size_t i = 0; i < n_t; ++i) {
        Complex approx{0.0, 0.0};
        for (std::size_t j = 0; j < rank; ++j) approx += proj[j] * q[j][i];
        res = std::max(res, std::abs(approx / sqrt_w[i] - problem.targets[i]));
    }
    result.residual = res;

    // and re-evaluated from the monomial expansion
    const TaylorPoly h_poly = result.polynomial();
    double res_direct = 0.0;
    for (std::size_t i = 0; i < n_t; ++i)
        res_direct =
            std::max(res_direct, std::abs(eval(h_poly, problem.nodes[i]) -
                                          problem.targets[i]));
    result.residual_direct = res_direct;
    return result;
}

}  // namespace uts
