#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "uts/dd.hpp"
#include "uts/errors.hpp"
#include "uts/gap_selection.hpp"

using namespace uts;

namespace {

// exhaustive re-check of a polynomial selection: p_k must be the smallest
// integer p with P(p) > P(q_k)/sqrt(k), scanned directly
void brute_force_p_check(const std::vector<double>& coeffs, const GapSelection& sel) {
    const auto seq = IndexSequence::polynomial_floor(coeffs, 1000000);
    for (const auto& pr : sel.pairs) {
        const DD pq = dd_poly_eval(coeffs.data(), coeffs.size(), double(pr.q));
        const DD y = dd_div(pq, dd_sqrt(double(pr.k)));
        std::int64_t expect = -1;
        for (std::int64_t p = seq.onset(); p <= pr.q + 1; ++p) {
            const DD val = dd_poly_eval(coeffs.data(), coeffs.size(), double(p));
            // mirror the upward tie break: values within 1e-28 relative of
            // the boundary count as "not above"
            if (dd_less(dd_mul(y, DD(1.0 + 1e-28)), val)) {
                expect = p;
                break;
            }
        }
        CHECK(pr.p == expect);
    }
}

void check_polynomial_sandwich(const std::vector<double>& coeffs,
                               const GapSelection& sel) {
    // w(k) <= [P(q)]/[P(p)] < sqrt(k) P(p)/(P(p)-1), in double-double
    for (const auto& pr : sel.pairs) {
        REQUIRE(pr.lambda_exact);
        const DD ratio = dd_div(dd_from_int128(pr.lambda_q),
                                dd_from_int128(pr.lambda_p));
        const DD p_val = dd_poly_eval(coeffs.data(), coeffs.size(), double(pr.p));
        const DD p_below =
            dd_poly_eval(coeffs.data(), coeffs.size(), double(pr.p - 1));
        const DD sqrt_k = dd_sqrt(double(pr.k));
        const DD witness =
            dd_div(dd_sub(dd_mul(sqrt_k, p_below), DD(1.0)), p_val);
        const DD upper =
            dd_div(dd_mul(sqrt_k, p_val), dd_sub(p_val, DD(1.0)));
        CHECK(dd_less_equal(witness, ratio));
        CHECK(dd_less(ratio, upper));
    }
}

}  // namespace

TEST_CASE("select_gaps_polynomial: P = n^2 over the identity stream") {
    const std::vector<double> coeffs = {0.0, 0.0, 1.0};
    const GapSelection sel =
        select_gaps_polynomial(coeffs, IndexStream::identity(), 5);
    CHECK(sel.k0 == 4);
    // greedy q picks: 1, 2, 3, 5, 8, 13, 22, 37 -> pairs from k = 4
    CHECK(sel.pairs[0].p == 4);
    CHECK(sel.pairs[0].q == 5);
    CHECK(sel.pairs[1].p == 6);
    CHECK(sel.pairs[1].q == 8);
    CHECK(std::int64_t(sel.pairs[0].lambda_p) == 16);
    CHECK(std::int64_t(sel.pairs[0].lambda_q) == 25);

    const auto rep = check_gap_conditions(
        IndexSequence::polynomial_floor(coeffs, 1000000), IndexStream::identity(),
        sel, polynomial_ratio_witness(coeffs, sel));
    CHECK(rep.all_ok());
    brute_force_p_check(coeffs, sel);
    check_polynomial_sandwich(coeffs, sel);
}

TEST_CASE("select_gaps_polynomial: identity P gives p = floor(q/sqrt(k)) + 1") {
    const std::vector<double> coeffs = {0.0, 1.0};  // P(n) = n
    const GapSelection sel =
        select_gaps_polynomial(coeffs, IndexStream::identity(), 6);
    for (const auto& pr : sel.pairs) {
        const std::int64_t expect =
            std::int64_t(std::floor(double(pr.q) / std::sqrt(double(pr.k)))) + 1;
        CHECK(pr.p == expect);
        // ratio stays within (sqrt(k) q/(q + sqrt(k)), sqrt(k)]
        const double ratio = pr.ratio();
        const double sqrt_k = std::sqrt(double(pr.k));
        CHECK(ratio <= sqrt_k + 1e-12);
        CHECK(ratio > sqrt_k * double(pr.q) / (double(pr.q) + sqrt_k) - 1e-12);
    }
}

TEST_CASE("select_gaps_polynomial: 40 pairs for the quadratic families") {
    for (const std::vector<double>& coeffs :
         {std::vector<double>{0.0, 0.0, 1.0}, std::vector<double>{0.0, 3.0, 1.0}}) {
        for (std::int64_t step : {1, 2}) {
            const IndexStream stream = IndexStream::affine(step, 0);
            const GapSelection sel = select_gaps_polynomial(coeffs, stream, 40);
            const auto rep = check_gap_conditions(
                IndexSequence::polynomial_floor(coeffs, 1LL << 60), stream, sel,
                polynomial_ratio_witness(coeffs, sel));
            CHECK(rep.all_ok());
            check_polynomial_sandwich(coeffs, sel);
        }
    }
}

TEST_CASE("select_gaps_polynomial: excluded small k reported through k0") {
    // P(n) = n: P(q_1)/sqrt(1) = q_1 has no p with P(p) > y until q+1 -> the
    // early indices cannot satisfy lambda_p < lambda_q and are excluded
    const GapSelection sel =
        select_gaps_polynomial({0.0, 1.0}, IndexStream::identity(), 3);
    CHECK(sel.k0 >= 2);
}

TEST_CASE("select_gaps_polynomial: infeasible stream raises the typed error") {
    const IndexStream tiny = IndexStream::explicit_list({1, 2, 3});
    CHECK_THROWS_AS(select_gaps_polynomial({0.0, 0.0, 1.0}, tiny, 10),
                    InfeasibleError);
}

TEST_CASE("select_gaps_geometric: 2^n with the (1.9, 2.1) band") {
    const auto seq = IndexSequence::geometric(2, 2.0, 1.9, 2.1, 100000);
    const GapSelection sel = select_gaps_geometric(seq, IndexStream::identity(), 10);
    CHECK(sel.k0 == 3);  // first k with floor(log k / log 2.1) >= 1

    // spec'd spot check at k = 5: width floor(log 5 / log 2.1) = 2, ratio 4
    const GapPair& p5 = sel.at_k(5);
    CHECK(p5.q - p5.p == 2);
    CHECK(p5.ratio() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(1.9 * 1.9 < p5.ratio());
    CHECK(p5.ratio() < 2.1 * 2.1);
    CHECK(p5.ratio() <= 5.0);

    const auto rep = check_gap_conditions(seq, IndexStream::identity(), sel,
                                          geometric_ratio_witness(sel, 1.9));
    CHECK(rep.all_ok());
}

TEST_CASE("select_gaps_geometric: sandwich exact over 40 pairs") {
    const auto seq = IndexSequence::geometric(2, 2.0, 1.9, 2.1, 100000);
    const GapSelection sel = select_gaps_geometric(seq, IndexStream::identity(), 40);
    REQUIRE(std::int64_t(sel.pairs.size()) == 40);
    for (const auto& pr : sel.pairs) {
        const std::int64_t width = pr.q - pr.p;
        // theta^(q-p) < lambda_q/lambda_p < M^(q-p); the middle is exactly
        // 2^(q-p) here, so compare in log scale
        const double mid = double(width) * std::log(2.0);
        CHECK(double(width) * std::log(1.9) < mid);
        CHECK(mid < double(width) * std::log(2.1));
        CHECK(pr.log_lambda_q - pr.log_lambda_p == doctest::Approx(mid).epsilon(1e-12));
        // the "<= k" half, strict here since M^(q-p) <= k
        CHECK(mid <= std::log(double(pr.k)) + 1e-12);
    }
    // width nondecreasing and unbounded in k (floor of log k / log M)
    for (std::size_t i = 1; i < sel.pairs.size(); ++i)
        CHECK(sel.pairs[i].q - sel.pairs[i].p >= sel.pairs[i - 1].q - sel.pairs[i - 1].p);
}

TEST_CASE("select_gaps_geometric: rejects non-geometric sequences") {
    CHECK_THROWS_AS(select_gaps_geometric(IndexSequence::factorial(50),
                                          IndexStream::identity(), 3),
                    ConfigError);
}

TEST_CASE("check_gap_conditions: degenerate selections are caught") {
    const std::vector<double> coeffs = {0.0, 0.0, 1.0};
    const auto seq = IndexSequence::polynomial_floor(coeffs, 1000000);
    GapSelection sel = select_gaps_polynomial(coeffs, IndexStream::identity(), 4);

    SUBCASE("p = q violates the lambda chain") {
        sel.pairs[1].p = sel.pairs[1].q;
        sel.pairs[1].lambda_p = sel.pairs[1].lambda_q;
        const auto rep =
            check_gap_conditions(seq, IndexStream::identity(), sel);
        CHECK(!rep.lambda_chain_ok);
        CHECK(rep.first_violation_k.has_value());
    }
    SUBCASE("swapped pair ordering violates condition 2") {
        std::swap(sel.pairs[1].p, sel.pairs[2].p);
        std::swap(sel.pairs[1].lambda_p, sel.pairs[2].lambda_p);
        std::swap(sel.pairs[1].log_lambda_p, sel.pairs[2].log_lambda_p);
        const auto rep =
            check_gap_conditions(seq, IndexStream::identity(), sel);
        CHECK(!rep.p_increasing_ok);
    }
    SUBCASE("q outside the stream violates condition 1") {
        const auto rep =
            check_gap_conditions(seq, IndexStream::affine(2, 1), sel);
        CHECK(!rep.subsequence_ok);
    }
    SUBCASE("witness failures are reported") {
        const auto rep = check_gap_conditions(
            seq, IndexStream::identity(), sel,
            [](std::int64_t) { return 1e9; });
        CHECK(rep.witness_checked);
        CHECK(!rep.witness_ok);
        CHECK(!rep.all_ok());
    }
    SUBCASE("out-of-horizon indices are an error") {
        const auto small_seq = IndexSequence::polynomial_floor(coeffs, 10);
        sel.pairs.back().q = 400;
        CHECK_THROWS_AS(check_gap_conditions(small_seq, IndexStream::identity(), sel),
                        ConfigError);
    }
}

TEST_CASE("selectors satisfy the exact invariants on fuzzed streams") {
    oracles::DiskSampler sampler(606);
    std::uniform_int_distribution<std::int64_t> step_dist(1, 4);
    std::uniform_int_distribution<std::int64_t> off_dist(0, 5);
    const std::vector<double> coeffs = {1.0, 2.0, 1.0};  // (n+1)^2
    for (int trial = 0; trial < 25; ++trial) {
        const std::int64_t step = step_dist(sampler.rng());
        const IndexStream stream = IndexStream::affine(step, off_dist(sampler.rng()));
        const GapSelection sel = select_gaps_polynomial(coeffs, stream, 12);
        const auto rep = check_gap_conditions(
            IndexSequence::polynomial_floor(coeffs, 1LL << 60), stream, sel,
            polynomial_ratio_witness(coeffs, sel));
        CHECK(rep.all_ok());
    }
}
