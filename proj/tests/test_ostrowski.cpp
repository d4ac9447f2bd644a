#include <doctest.h>

#include <cmath>

#include "uts/build_plan.hpp"
#include "uts/errors.hpp"
#include "uts/ostrowski.hpp"

using namespace uts;

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn3 = 1.0986122886681098;

std::vector<std::pair<std::int64_t, std::int64_t>> sample_windows() {
    return {{4, 9}, {12, 25}, {30, 70}};
}
}  // namespace

TEST_CASE("detect_ostrowski_gaps: all-zero windows pass at any eps") {
    std::vector<LogMag> mags(80, LogMag::zero());
    mags[0] = LogMag::from_log(0.0);
    for (std::int64_t nu : {1, 2, 3, 10, 11, 26, 29, 71, 75})
        mags[std::size_t(nu)] = LogMag::from_log(0.0);  // off-window junk
    const auto rep = detect_ostrowski_gaps(mags, sample_windows(), 1e-30, 1);
    CHECK(rep.ordering_ok);
    CHECK(rep.decay_nonincreasing);
    CHECK(rep.final_below_eps);
    CHECK(rep.pass());
    for (const auto& d : rep.window_decay) {
        REQUIRE(d.has_value());
        CHECK(d->is_zero());
    }
}

TEST_CASE("detect_ostrowski_gaps: a_nu = m^-nu decays as 1/m") {
    const auto windows = sample_windows();
    std::vector<LogMag> mags(80, LogMag::zero());
    for (std::size_t m = 0; m < windows.size(); ++m) {
        for (std::int64_t nu = windows[m].first + 1; nu <= windows[m].second; ++nu)
            mags[std::size_t(nu)] = LogMag::from_log(-std::log(double(m + 1)));
    }
    const auto rep = detect_ostrowski_gaps(mags, windows, 1.0 / 3.0 + 1e-9, 1);
    CHECK(rep.pass());
    for (std::size_t m = 0; m < windows.size(); ++m)
        CHECK(rep.window_decay[m]->log ==
              doctest::Approx(-std::log(double(m + 1))).epsilon(1e-14));

    // monotone in eps: passing at eps implies passing at every larger eps
    CHECK(detect_ostrowski_gaps(mags, windows, 0.5, 1).pass());
    CHECK(detect_ostrowski_gaps(mags, windows, 10.0, 1).pass());
    CHECK(!detect_ostrowski_gaps(mags, windows, 1.0 / 3.0 - 1e-9, 1).final_below_eps);
}

TEST_CASE("detect_ostrowski_gaps: flat coefficients fail below eps = 1") {
    std::vector<LogMag> mags(80, LogMag::from_log(0.0));  // |a_nu|^(1/nu) = 1
    const auto rep = detect_ostrowski_gaps(mags, sample_windows(), 0.5, 1);
    CHECK(rep.ordering_ok);
    CHECK(rep.decay_nonincreasing);
    CHECK(!rep.final_below_eps);
    CHECK(!rep.pass());
    CHECK(detect_ostrowski_gaps(mags, sample_windows(), 1.0, 1).pass());
}

TEST_CASE("detect_ostrowski_gaps: empty windows are rejected") {
    std::vector<LogMag> mags(80, LogMag::zero());
    CHECK_THROWS_AS(detect_ostrowski_gaps(mags, {{5, 5}}, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(detect_ostrowski_gaps(mags, {{9, 4}}, 1.0, 1), ConfigError);
}

TEST_CASE("detect_ostrowski_gaps: burn-in removes early windows from the trend") {
    const auto windows = sample_windows();
    std::vector<LogMag> mags(80, LogMag::zero());
    // first window loud, later windows quiet; with nu0 past the first
    // window the loud part is outside the measurement
    for (std::int64_t nu = 5; nu <= 9; ++nu)
        mags[std::size_t(nu)] = LogMag::from_log(5.0);
    for (std::int64_t nu = 13; nu <= 25; ++nu)
        mags[std::size_t(nu)] = LogMag::from_log(-1.0);
    for (std::int64_t nu = 31; nu <= 70; ++nu)
        mags[std::size_t(nu)] = LogMag::from_log(-2.0);
    const auto with_burn = detect_ostrowski_gaps(mags, windows, 0.2, 10);
    CHECK(with_burn.first_measured_window == 1);
    CHECK(with_burn.pass());
    const auto without = detect_ostrowski_gaps(mags, windows, 0.2, 1);
    CHECK(without.first_measured_window == 0);
    CHECK(without.pass());  // still nonincreasing from the first window here
}

TEST_CASE("verify_decay_chain: tight monomial makes the first link an equality") {
    // S = c z^(lambda_q) with |c| = 2^lambda_q / 3^(k lambda_q) saturates
    // |a_nu|^(1/nu) = 2^(lambda_q/nu)/3^k at nu = lambda_q
    GapSelection sel;
    sel.k0 = 4;
    GapPair pair;
    pair.k = 4;
    pair.p = 4;
    pair.q = 6;
    pair.lambda_p = 40;
    pair.lambda_q = 60;
    pair.lambda_exact = true;
    pair.log_lambda_p = std::log(40.0);
    pair.log_lambda_q = std::log(60.0);
    sel.pairs.push_back(pair);

    const double log_c = 60.0 * kLn2 - 4.0 * 60.0 * kLn3;
    const TaylorPoly s = TaylorPoly::monomial(60, std::polar(std::exp(log_c), 0.7));
    const ChainReport rep = verify_decay_chain({s}, sel);
    CHECK(rep.all_ok);
    CHECK(std::abs(rep.rows[0].slack_first) <= 1e-9);
    // ratio 60/40 = 1.5 <= k = 4 leaves genuine room in the last link
    CHECK(rep.rows[0].slack_third ==
          doctest::Approx((4.0 - 1.5) * kLn2).epsilon(1e-12));
}

TEST_CASE("verify_decay_chain: all-zero partial sums pass trivially") {
    GapSelection sel;
    sel.k0 = 2;
    for (std::int64_t k = 2; k <= 4; ++k) {
        GapPair pair;
        pair.k = k;
        pair.p = k;
        pair.q = k + 1;
        pair.lambda_p = 10 * k;
        pair.lambda_q = 10 * k + 15;
        pair.lambda_exact = true;
        pair.log_lambda_p = std::log(double(10 * k));
        pair.log_lambda_q = std::log(double(10 * k + 15));
        sel.pairs.push_back(pair);
    }
    std::vector<TaylorPoly> sums;
    for (const auto& pr : sel.pairs)
        sums.push_back(partial_sum(TaylorPoly::constant({0, 0}),
                                   std::int64_t(pr.lambda_q)));
    const ChainReport rep = verify_decay_chain(sums, sel);
    CHECK(rep.all_ok);
}

TEST_CASE("verify_decay_chain: ratio at the condition-4 boundary closes the last link") {
    GapSelection sel;
    sel.k0 = 3;
    GapPair pair;
    pair.k = 3;
    pair.p = 3;
    pair.q = 5;
    pair.lambda_p = 20;
    pair.lambda_q = 60;  // ratio exactly k = 3
    pair.lambda_exact = true;
    pair.log_lambda_p = std::log(20.0);
    pair.log_lambda_q = std::log(60.0);
    sel.pairs.push_back(pair);
    std::vector<TaylorPoly> sums = {
        partial_sum(TaylorPoly::constant({0, 0}), 60)};
    const ChainReport rep = verify_decay_chain(sums, sel);
    CHECK(rep.all_ok);
    CHECK(std::abs(rep.rows[0].slack_third) <= 1e-12);
}

TEST_CASE("verify_decay_chain: normalization violations carry the offending k") {
    GapSelection sel;
    sel.k0 = 5;
    GapPair pair;
    pair.k = 5;
    pair.p = 2;
    pair.q = 4;
    pair.lambda_p = 8;
    pair.lambda_q = 16;
    pair.lambda_exact = true;
    pair.log_lambda_p = std::log(8.0);
    pair.log_lambda_q = std::log(16.0);
    sel.pairs.push_back(pair);
    // |a_16| = 1 at radius 3^5: the bound is 16 * 5 * ln 3, far past 16 ln 2
    const TaylorPoly bad = TaylorPoly::monomial(16, {1.0, 0.0});
    try {
        verify_decay_chain({bad}, sel);
        FAIL("expected NormalizationError");
    } catch (const NormalizationError& e) {
        CHECK(e.offending_k == 5);
    }
}

TEST_CASE("verify_decay_chain: synthesized gap series pass every link") {
    // windows from the quadratic selector, sigma keyed to the condition
    // index: sigma = 3^-(k+1) keeps every normalization comfortable
    const GapSelection sel = select_gaps_polynomial({0.0, 0.0, 1.0},
                                                    IndexStream::identity(), 5);
    std::vector<double> sigmas;
    for (const auto& pr : sel.pairs)
        sigmas.push_back(std::pow(3.0, -double(pr.k) - 1.0));
    const TaylorPoly f = synthesize_gap_series(lambda_windows(sel),
                                               SigmaRule::explicit_list(sigmas),
                                               OffWindowRule::Zeros,
                                               std::int64_t(sel.pairs.back().lambda_q));
    std::vector<TaylorPoly> sums;
    for (const auto& pr : sel.pairs)
        sums.push_back(partial_sum(f, std::int64_t(pr.lambda_q)));
    const ChainReport rep = verify_decay_chain(sums, sel);
    CHECK(rep.all_ok);
    CHECK(rep.worst_first >= -1e-9);
    CHECK(rep.worst_second >= -1e-9);
    CHECK(rep.worst_third >= -1e-9);
}
