// Command-line front end: gap selection, condition checking, finite-stage
// builds, transport verification, and the factorial feasibility probe.
// Exit codes: 0 success/pass, 1 verdict fail, 2 configuration error,
// 3 numerical error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "uts/errors.hpp"
#include "uts/serialize.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw uts::ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw uts::ConfigError("cannot write file: " + path);
    out << content;
}

uts::CliConfig load_config(const std::string& path) {
    return uts::parse_cli_config(read_file(path));
}

uts::RatioWitness witness_from_config(const uts::CliConfig& cfg,
                                      const uts::GapSelection& sel) {
    using Kind = uts::WitnessSpec::Kind;
    switch (cfg.witness.kind) {
        case Kind::None:
            return {};
        case Kind::Power: {
            const double scale = cfg.witness.scale;
            const double expo = cfg.witness.exponent;
            return [scale, expo](std::int64_t k) {
                return scale * std::pow(double(k), expo);
            };
        }
        case Kind::Selector:
            if (cfg.selector_kind == "polynomial" && cfg.lambda)
                return uts::polynomial_ratio_witness(cfg.lambda->poly_coeffs(), sel);
            if (cfg.selector_kind == "geometric" && cfg.lambda)
                return uts::geometric_ratio_witness(sel, cfg.lambda->theta());
            throw uts::ConfigError(
                "witness kind \"selector\" needs a selector and its sequence");
    }
    return {};
}

uts::GapSelection selection_from_config(const uts::CliConfig& cfg) {
    if (cfg.pairs) {
        if (!cfg.lambda)
            throw uts::ConfigError("explicit pairs need a \"lambda\" sequence");
        uts::GapSelection sel;
        sel.k0 = cfg.pairs_k0;
        sel.source = "explicit pairs";
        std::int64_t k = cfg.pairs_k0;
        for (const auto& [p, q] : *cfg.pairs) {
            uts::GapPair pair;
            pair.k = k++;
            pair.p = p;
            pair.q = q;
            auto lp = cfg.lambda->value128(p);
            auto lq = cfg.lambda->value128(q);
            pair.lambda_exact = lp.has_value() && lq.has_value();
            pair.lambda_p = lp.value_or(0);
            pair.lambda_q = lq.value_or(0);
            pair.log_lambda_p = cfg.lambda->log_value(p).log;
            pair.log_lambda_q = cfg.lambda->log_value(q).log;
            sel.pairs.push_back(pair);
        }
        return sel;
    }
    if (!cfg.stream) throw uts::ConfigError("selection needs a \"stream\"");
    if (cfg.selector_kind == "polynomial") {
        if (!cfg.lambda ||
            cfg.lambda->kind() != uts::IndexSequence::Kind::PolynomialFloor)
            throw uts::ConfigError(
                "polynomial selector needs a polynomial_floor \"lambda\"");
        return uts::select_gaps_polynomial(cfg.lambda->poly_coeffs(), *cfg.stream,
                                           cfg.selector_count);
    }
    if (cfg.selector_kind == "geometric") {
        if (!cfg.lambda ||
            cfg.lambda->kind() != uts::IndexSequence::Kind::Geometric)
            throw uts::ConfigError("geometric selector needs a geometric \"lambda\"");
        return uts::select_gaps_geometric(*cfg.lambda, *cfg.stream,
                                          cfg.selector_count);
    }
    throw uts::ConfigError("no selection: give \"pairs\" or a \"selector\"");
}

uts::TaylorPoly poly_from_config(const uts::CliConfig& cfg) {
    if (cfg.poly_file) return uts::taylor_poly_from_json(read_file(*cfg.poly_file));
    if (cfg.synthesize) {
        auto windows = cfg.synthesize->windows;
        if (cfg.synthesize->windows_from_selection)
            windows = uts::lambda_windows(selection_from_config(cfg));
        return uts::synthesize_gap_series(windows, cfg.synthesize->sigma,
                                          cfg.synthesize->off_window,
                                          cfg.synthesize->degree);
    }
    if (cfg.plan) return uts::build_universal_polynomial(*cfg.plan).f;
    throw uts::ConfigError("no polynomial source: give \"poly_file\", "
                           "\"synthesize\" or \"plan\"");
}

int cmd_select_gaps(const std::string& kind, const std::string& poly_spec,
                    std::int64_t first, double ratio, double theta, double bound_M,
                    std::int64_t horizon, const std::string& nk, std::int64_t count,
                    const std::string& out_csv, const std::string& out_json) {
    const uts::IndexStream stream = uts::parse_stream_spec(nk);
    uts::GapSelection sel;
    uts::RatioWitness witness;
    if (kind == "polynomial") {
        const auto coeffs = uts::parse_poly_descending(poly_spec);
        sel = uts::select_gaps_polynomial(coeffs, stream, count);
        witness = uts::polynomial_ratio_witness(coeffs, sel);
    } else if (kind == "geometric") {
        const auto seq = uts::IndexSequence::geometric(first, ratio, theta, bound_M,
                                                       horizon);
        sel = uts::select_gaps_geometric(seq, stream, count);
        witness = uts::geometric_ratio_witness(sel, theta);
    } else {
        throw uts::ConfigError("--kind must be polynomial or geometric");
    }
    const std::string csv = uts::gap_selection_to_csv(sel, witness);
    if (out_csv.empty())
        std::cout << csv;
    else
        write_file(out_csv, csv);
    if (!out_json.empty()) write_file(out_json, uts::gap_selection_to_json(sel));
    return 0;
}

int cmd_check_conditions(const std::string& config_path, const std::string& out) {
    const uts::CliConfig cfg = load_config(config_path);
    if (!cfg.lambda || !cfg.stream)
        throw uts::ConfigError("check-conditions needs \"lambda\" and \"stream\"");
    const uts::GapSelection sel = selection_from_config(cfg);
    const uts::RatioWitness witness = witness_from_config(cfg, sel);
    const uts::ConditionReport rep =
        uts::check_gap_conditions(*cfg.lambda, *cfg.stream, sel, witness);
    const std::string text = uts::condition_report_to_text(rep, sel);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return rep.all_ok() ? 0 : 1;
}

int cmd_build(const std::string& config_path, const std::string& out_poly,
              const std::string& out_diag) {
    const uts::CliConfig cfg = load_config(config_path);
    if (!cfg.plan) throw uts::ConfigError("build needs a \"plan\" section");
    const uts::BuildResult result = uts::build_universal_polynomial(*cfg.plan);
    if (!out_poly.empty())
        write_file(out_poly, uts::taylor_poly_to_json(result.f));
    const std::string diag = uts::diagnostics_to_jsonl(result.stages);
    if (out_diag.empty())
        std::cout << diag;
    else
        write_file(out_diag, diag);
    return result.all_stages_ok() ? 0 : 1;
}

int cmd_verify_transport(const std::string& config_path, const std::string& out) {
    const uts::CliConfig cfg = load_config(config_path);
    if (!cfg.experiment)
        throw uts::ConfigError("verify-transport needs an \"experiment\" section");
    const uts::TaylorPoly f = poly_from_config(cfg);
    const uts::GapSelection sel = selection_from_config(cfg);
    const uts::ConvergenceTrace trace =
        uts::run_transport_experiment(f, sel, *cfg.experiment);
    const std::string csv = uts::trace_to_csv(trace);
    if (out.empty())
        std::cout << csv;
    else
        write_file(out, csv);

    bool ok = trace.d1_trend.nonincreasing;
    if (trace.d2_trend) ok = ok && trace.d2_trend->nonincreasing;
    if (trace.d3_trend) ok = ok && trace.d3_trend->nonincreasing;
    std::cerr << "trend check: " << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 1;
}

int cmd_verify_center_independence(const std::string& config_path,
                                   const std::string& out,
                                   const std::string& out_diag) {
    const uts::CliConfig cfg = load_config(config_path);
    if (!cfg.plan || !cfg.experiment)
        throw uts::ConfigError(
            "verify-center-independence needs \"plan\" and \"experiment\"");
    const uts::CenterIndependenceResult result =
        uts::run_center_independence(*cfg.plan, *cfg.experiment);
    if (!out.empty()) write_file(out, uts::trace_to_csv(result.trace));
    if (!out_diag.empty())
        write_file(out_diag, uts::diagnostics_to_jsonl(result.build.stages));

    std::cout << "verdict: " << (result.pass ? "PASS" : "FAIL") << " ("
              << result.disclaimer << ")\n";
    if (!result.failed_stages.empty()) {
        std::cout << "failed stages:";
        for (auto s : result.failed_stages) std::cout << ' ' << s;
        std::cout << '\n';
    }
    if (result.trace.d3_trend)
        std::cout << "D3_final = "
                  << uts::format_double(result.trace.d3_trend->final_value.linear())
                  << '\n';
    return result.pass ? 0 : 1;
}

int cmd_probe_factorial(const std::string& nk, std::int64_t horizon,
                        const std::string& out, const std::string& out_json) {
    const uts::IndexStream stream = uts::parse_stream_spec(nk);
    const uts::FactorialProbeReport rep = uts::probe_factorial(stream, horizon);
    const std::string text = uts::probe_report_to_text(rep);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    if (!out_json.empty()) write_file(out_json, uts::probe_report_to_json(rep));
    return 0;
}

int cmd_synthesize(const std::string& config_path, const std::string& out) {
    const uts::CliConfig cfg = load_config(config_path);
    if (!cfg.synthesize) throw uts::ConfigError("synthesize needs a config section");
    const uts::TaylorPoly f = poly_from_config(cfg);
    if (out.empty())
        std::cout << uts::taylor_poly_to_json(f) << '\n';
    else
        write_file(out, uts::taylor_poly_to_json(f));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal Taylor series toolkit"};
    app.require_subcommand(1);

    // select-gaps
    auto* sg = app.add_subcommand("select-gaps", "select (p_k, q_k) gap pairs");
    std::string sg_kind, sg_poly = "1,0,0", sg_nk = "identity";
    std::int64_t sg_first = 2, sg_horizon = 100000, sg_count = 10;
    double sg_ratio = 2.0, sg_theta = 1.9, sg_M = 2.1;
    std::string sg_out, sg_json;
    sg->add_option("--kind", sg_kind, "polynomial | geometric")->required();
    sg->add_option("--poly", sg_poly, "P coefficients, descending (polynomial kind)");
    sg->add_option("--first", sg_first, "first term (geometric kind)");
    sg->add_option("--ratio", sg_ratio, "ratio (geometric kind)");
    sg->add_option("--theta", sg_theta, "lower ratio bound");
    sg->add_option("--M", sg_M, "upper ratio bound");
    sg->add_option("--horizon", sg_horizon, "sequence horizon");
    sg->add_option("--nk", sg_nk, "stream: identity | <a>k[+b] | comma list");
    sg->add_option("--count", sg_count, "number of pairs");
    sg->add_option("--out", sg_out, "CSV output path (stdout if absent)");
    sg->add_option("--json", sg_json, "JSON output path");

    // check-conditions
    auto* cc = app.add_subcommand("check-conditions",
                                  "verify conditions (1)-(4) on a selection");
    std::string cc_config, cc_out;
    cc->add_option("--config", cc_config)->required();
    cc->add_option("--out", cc_out, "report path (stdout if absent)");

    // build
    auto* bd = app.add_subcommand("build", "run a finite-stage build plan");
    std::string bd_config, bd_poly, bd_diag;
    bd->add_option("--config", bd_config)->required();
    bd->add_option("--out", bd_poly, "polynomial JSON output path");
    bd->add_option("--diagnostics", bd_diag, "JSON-lines diagnostics path");

    // verify-transport
    auto* vt = app.add_subcommand("verify-transport",
                                  "trace D1/D2/D3 over the gap pairs");
    std::string vt_config, vt_out;
    vt->add_option("--config", vt_config)->required();
    vt->add_option("--out", vt_out, "trace CSV path (stdout if absent)");

    // verify-center-independence
    auto* vc = app.add_subcommand("verify-center-independence",
                                  "end-to-end build + transport verdict");
    std::string vc_config, vc_out, vc_diag;
    vc->add_option("--config", vc_config)->required();
    vc->add_option("--out", vc_out, "trace CSV path");
    vc->add_option("--diagnostics", vc_diag, "JSON-lines diagnostics path");

    // probe-factorial
    auto* pf = app.add_subcommand("probe-factorial",
                                  "feasibility probe for lambda_n = n!");
    std::string pf_nk = "identity", pf_out, pf_json;
    std::int64_t pf_horizon = 20;
    pf->add_option("--nk", pf_nk, "stream: identity | <a>k[+b] | comma list");
    pf->add_option("--horizon", pf_horizon);
    pf->add_option("--out", pf_out, "text report path (stdout if absent)");
    pf->add_option("--json", pf_json, "JSON report path");

    // synthesize
    auto* sy = app.add_subcommand("synthesize",
                                  "construct a gap series test fixture");
    std::string sy_config, sy_out;
    sy->add_option("--config", sy_config)->required();
    sy->add_option("--out", sy_out, "polynomial JSON path (stdout if absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (sg->parsed())
            return cmd_select_gaps(sg_kind, sg_poly, sg_first, sg_ratio, sg_theta,
                                   sg_M, sg_horizon, sg_nk, sg_count, sg_out,
                                   sg_json);
        if (cc->parsed()) return cmd_check_conditions(cc_config, cc_out);
        if (bd->parsed()) return cmd_build(bd_config, bd_poly, bd_diag);
        if (vt->parsed()) return cmd_verify_transport(vt_config, vt_out);
        if (vc->parsed())
            return cmd_verify_center_independence(vc_config, vc_out, vc_diag);
        if (pf->parsed())
            return cmd_probe_factorial(pf_nk, pf_horizon, pf_out, pf_json);
        if (sy->parsed()) return cmd_synthesize(sy_config, sy_out);
    } catch (const uts::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const uts::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
