#include <doctest.h>

#include <sstream>

#include "support/oracles.hpp"
#include "support/reference_plan.hpp"
#include "uts/errors.hpp"
#include "uts/serialize.hpp"

using namespace uts;

TEST_CASE("format_double: shortest round-trip and special names") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("taylor poly JSON round-trips exactly") {
    oracles::DiskSampler sampler(12);
    for (int trial = 0; trial < 40; ++trial) {
        const TaylorPoly p = sampler.poly(30, sampler.sample(2.0));
        const TaylorPoly q = taylor_poly_from_json(taylor_poly_to_json(p));
        CHECK(q.center == p.center);
        REQUIRE(q.coeffs.size() == p.coeffs.size());
        for (std::size_t i = 0; i < p.coeffs.size(); ++i)
            CHECK(q.coeffs[i] == p.coeffs[i]);  // bitwise
    }
}

TEST_CASE("taylor poly JSON has the documented shape") {
    const TaylorPoly p({1.5, -0.25}, {{0.0, 1.0}, {2.0, 0.0}});
    CHECK(taylor_poly_to_json(p) ==
          R"({"center":[1.5,-0.25],"coeffs":[[0.0,1.0],[2.0,0.0]]})");
}

TEST_CASE("gap selection JSON carries k0, pairs, lambda pairs and ratios") {
    const GapSelection sel =
        select_gaps_polynomial({0.0, 0.0, 1.0}, IndexStream::identity(), 3);
    const std::string text = gap_selection_to_json(sel);
    CHECK(text.find("\"k0\":4") != std::string::npos);
    CHECK(text.find("\"pairs\":[[4,5],[6,8],[9,13]]") != std::string::npos);
    CHECK(text.find("\"lambda_pairs\":[[16,25],[36,64],[81,169]]") !=
          std::string::npos);
    CHECK(text.find("\"ratios\"") != std::string::npos);
}

TEST_CASE("gap selection CSV has the pinned columns") {
    const GapSelection sel =
        select_gaps_polynomial({0.0, 0.0, 1.0}, IndexStream::identity(), 2);
    const std::string csv =
        gap_selection_to_csv(sel, polynomial_ratio_witness({0.0, 0.0, 1.0}, sel));
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "k,p_k,q_k,lambda_p,lambda_q,ratio,bound_k");
    std::string row;
    std::getline(is, row);
    CHECK(row.substr(0, 10) == "4,4,5,16,2");
}

TEST_CASE("trace CSV has the pinned columns and honest specials") {
    const GapSelection sel =
        select_gaps_polynomial({0.0, 0.0, 1.0}, IndexStream::identity(), 2);
    const TaylorPoly f = synthesize_gap_series(lambda_windows(sel),
                                               SigmaRule::constant(0.0),
                                               OffWindowRule::Zeros, 64);
    ExperimentConfig cfg;
    cfg.radii = {1.0, 2.0};
    cfg.lgrid = LGrid::polar(0.3, 2, 2);
    const auto trace = run_transport_experiment(f, sel, cfg);
    const std::string csv = trace_to_csv(trace);
    std::istringstream is(csv);
    std::string header, row;
    std::getline(is, header);
    CHECK(header == "k,lambda_p,lambda_q,D1_log,D1,D2_log,D2,D3_log,D3");
    std::getline(is, row);
    // zero-window fixture: D1 zero (log -inf), D2/D3 not computed -> nan
    CHECK(row == "4,16,25,-inf,0,nan,nan,nan,nan");
}

TEST_CASE("diagnostics JSON-lines carry the pinned fields") {
    StageDiagnostics st;
    st.stage = 2;
    st.residual = 1e-7;
    st.omega_norm = 0.25;
    st.ek_norm = 0.0;
    st.requested_eps = 1e-3;
    st.ok = true;
    const std::string line = diagnostics_to_jsonl({st});
    CHECK(line.find("\"stage\":2") != std::string::npos);
    CHECK(line.find("\"residual\":1e-07") != std::string::npos);
    CHECK(line.find("\"omega_norm\":0.25") != std::string::npos);
    CHECK(line.find("\"ek_norm\":0.0") != std::string::npos);
    CHECK(line.find("\"requested_eps\":0.001") != std::string::npos);
    CHECK(line.find("\"status\":\"ok\"") != std::string::npos);
    CHECK(line.back() == '\n');
}

TEST_CASE("probe report text and JSON are deterministic") {
    const auto rep = probe_factorial(IndexStream::affine(2, 0), 12);
    const auto rep2 = probe_factorial(IndexStream::affine(2, 0), 12);
    CHECK(probe_report_to_text(rep) == probe_report_to_text(rep2));
    CHECK(probe_report_to_json(rep) == probe_report_to_json(rep2));
    CHECK(probe_report_to_text(rep).find("proves nothing") != std::string::npos);
}

TEST_CASE("cli config: selector + lambda + stream sections") {
    const std::string text = R"({
        "lambda": {"kind": "polynomial_floor", "coeffs": [1, 0, 0], "horizon": 100000},
        "stream": {"kind": "identity"},
        "selector": {"kind": "polynomial", "count": 5}
    })";
    const CliConfig cfg = parse_cli_config(text);
    REQUIRE(cfg.lambda.has_value());
    CHECK(cfg.lambda->kind() == IndexSequence::Kind::PolynomialFloor);
    CHECK(cfg.lambda->value(7) == 49);  // descending coeffs in configs
    REQUIRE(cfg.stream.has_value());
    CHECK(cfg.selector_kind == "polynomial");
    CHECK(cfg.selector_count == 5);
}

TEST_CASE("cli config: plan section builds a valid plan") {
    const std::string text = R"({
      "plan": {
        "omega_radius": 1.0,
        "lambda": {"kind": "polynomial_floor", "coeffs": [1, 0, 0], "horizon": 1000},
        "stages": [
          {"n": 8,
           "set": {"descriptor": {"kind": "segment", "a": [2,0], "b": [3,0]},
                   "density": 16},
           "target": {"kind": "polynomial", "coeffs": [[1,0]]},
           "eps": 1e-3},
          {"n": 12,
           "set": {"descriptor": {"kind": "segment", "a": [2,0], "b": [3,0]},
                   "density": 16},
           "target": {"kind": "polynomial", "coeffs": [[1,0]]},
           "eps": 1e-3}
        ]
      }
    })";
    const CliConfig cfg = parse_cli_config(text);
    REQUIRE(cfg.plan.has_value());
    CHECK(cfg.plan->stages.size() == 2);
    CHECK(cfg.plan->stages[0].sample.nodes.size() == 17);
    const BuildResult res = build_universal_polynomial(*cfg.plan);
    CHECK(res.all_stages_ok());
}

TEST_CASE("cli config: malformed JSON raises ConfigError") {
    CHECK_THROWS_AS(parse_cli_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_cli_config(R"({"lambda": {"kind": "mystery"}})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_cli_config(R"({"stream": {"kind": "affine", "step": 0}})"),
        ConfigError);
}

TEST_CASE("stream and polynomial flag parsing") {
    CHECK(parse_stream_spec("identity").contains(17));
    const IndexStream even = parse_stream_spec("2k");
    CHECK(even.contains(8));
    CHECK(!even.contains(9));
    const IndexStream shifted = parse_stream_spec("3k+1");
    CHECK(shifted.contains(4));
    CHECK(shifted.contains(7));
    const IndexStream listed = parse_stream_spec("2,5,11");
    CHECK(listed.contains(5));
    CHECK(listed.max_element() == 11);

    const auto coeffs = parse_poly_descending("1,0,0");
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0] == 0.0);  // ascending after the flip
    CHECK(coeffs[2] == 1.0);
    CHECK_THROWS_AS(parse_poly_descending(""), ConfigError);
}

TEST_CASE("experiment section round-trips into a valid config") {
    const std::string text = R"({
      "experiment": {
        "omega_radius": 1.0,
        "radii": [1, 2, 4],
        "lgrid": {"kind": "polar", "radius": 0.3, "radii": 5, "angles": 5},
        "set": {"descriptor": {"kind": "segment", "a": [2,0], "b": [3,0]},
                "density": 32},
        "target": {"kind": "polynomial", "coeffs": [[1,0]]},
        "tolerance": 5e-3
      }
    })";
    const CliConfig cfg = parse_cli_config(text);
    REQUIRE(cfg.experiment.has_value());
    CHECK(cfg.experiment->lgrid.points.size() == 25);
    CHECK(cfg.experiment->approximation_set->nodes.size() == 33);
    CHECK(cfg.experiment->tolerance == 5e-3);
}
