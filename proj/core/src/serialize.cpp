#include "uts/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "uts/errors.hpp"

namespace uts {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json lambda_to_json(Int128 v, bool exact, double log_value) {
    if (!exact) return json(std::exp(log_value));
    if (fits_int64(v)) return json(std::int64_t(v));
    return json(to_string(v));
}

std::string lambda_to_csv(Int128 v, bool exact, double log_value) {
    if (exact) return to_string(v);
    return format_double(std::exp(log_value));
}

double require_double(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("config: missing \"") + key + "\"");
    return j.at(key).get<double>();
}

std::int64_t require_int(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("config: missing \"") + key + "\"");
    return j.at(key).get<std::int64_t>();
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("config: missing \"") + key + "\"");
    return j.at(key).get<std::string>();
}

}  // namespace

std::string taylor_poly_to_json(const TaylorPoly& p) {
    json j;
    j["center"] = complex_to_json(p.center);
    json coeffs = json::array();
    for (std::int64_t nu = 0; nu <= p.degree_bound(); ++nu)
        coeffs.push_back(complex_to_json(p.coeff(nu)));
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

TaylorPoly taylor_poly_from_json(const std::string& text) {
    json j = json::parse(text);
    const Complex center = complex_from_json(j.at("center"));
    std::vector<Complex> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
    return TaylorPoly(center, std::move(coeffs));
}

std::string gap_selection_to_json(const GapSelection& sel) {
    json j;
    j["k0"] = sel.k0;
    json pairs = json::array();
    json lambda_pairs = json::array();
    json ratios = json::array();
    for (const auto& pr : sel.pairs) {
        pairs.push_back(json::array({pr.p, pr.q}));
        lambda_pairs.push_back(json::array(
            {lambda_to_json(pr.lambda_p, pr.lambda_exact, pr.log_lambda_p),
             lambda_to_json(pr.lambda_q, pr.lambda_exact, pr.log_lambda_q)}));
        ratios.push_back(pr.ratio());
    }
    j["pairs"] = std::move(pairs);
    j["lambda_pairs"] = std::move(lambda_pairs);
    j["ratios"] = std::move(ratios);
    return j.dump();
}

std::string gap_selection_to_csv(const GapSelection& sel, const RatioWitness& bound) {
    std::ostringstream os;
    os << "k,p_k,q_k,lambda_p,lambda_q,ratio,bound_k\n";
    for (const auto& pr : sel.pairs) {
        os << pr.k << ',' << pr.p << ',' << pr.q << ','
           << lambda_to_csv(pr.lambda_p, pr.lambda_exact, pr.log_lambda_p) << ','
           << lambda_to_csv(pr.lambda_q, pr.lambda_exact, pr.log_lambda_q) << ','
           << format_double(pr.ratio()) << ','
           << format_double(bound ? bound(pr.k) : 0.0) << '\n';
    }
    return os.str();
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
    std::ostringstream os;
    os << "k,lambda_p,lambda_q,D1_log,D1,D2_log,D2,D3_log,D3\n";
    auto emit = [&os](const std::optional<LogMag>& v) {
        if (!v) {
            os << ",nan,nan";
            return;
        }
        os << ',' << format_double(v->log) << ',' << format_double(v->linear());
    };
    for (const auto& row : trace.rows) {
        os << row.k << ',' << row.lambda_p << ',' << row.lambda_q;
        emit(row.d1);
        emit(row.d2);
        emit(row.d3);
        os << '\n';
    }
    return os.str();
}

std::string diagnostics_to_jsonl(const std::vector<StageDiagnostics>& stages) {
    std::ostringstream os;
    for (const auto& st : stages) {
        json j;
        j["stage"] = st.stage;
        j["residual"] = st.residual;
        j["omega_norm"] = st.omega_norm;
        j["ek_norm"] = st.ek_norm;
        j["requested_eps"] = st.requested_eps;
        j["status"] = st.ok ? "ok" : "failed";
        os << j.dump() << '\n';
    }
    return os.str();
}

std::string probe_report_to_json(const FactorialProbeReport& rep) {
    json j;
    j["header"] = rep.header;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row;
        row["position"] = r.position;
        row["p"] = r.p;
        row["q"] = r.q;
        row["ratio"] = r.ratio;
        row["lambda_representable"] = r.lambda_representable;
        row["log_lambda_q"] = r.log_lambda_q;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (rep.first_infeasible_k)
        j["first_infeasible_k"] = *rep.first_infeasible_k;
    else
        j["first_infeasible_k"] = nullptr;
    j["k0_within_horizon"] = rep.k0_within_horizon;
    j["k0_at_horizon_edge"] = rep.k0_at_horizon_edge;
    return j.dump();
}

std::string probe_report_to_text(const FactorialProbeReport& rep) {
    std::ostringstream os;
    os << "# " << rep.header << '\n';
    os << "i,p,q,ratio,lambda_q_representable,log_lambda_q\n";
    for (const auto& r : rep.rows) {
        os << r.position << ',' << r.p << ',' << r.q << ',' << r.ratio << ','
           << (r.lambda_representable ? "yes" : "no") << ','
           << format_double(r.log_lambda_q) << '\n';
    }
    if (rep.first_infeasible_k)
        os << "# first infeasible condition index with onset k0 = 1: "
           << *rep.first_infeasible_k << '\n';
    else
        os << "# feasible at every condition index with onset k0 = 1\n";
    os << "# smallest onset within horizon: k0 = " << rep.k0_within_horizon;
    if (rep.k0_at_horizon_edge) os << " (still growing at the horizon edge)";
    os << '\n';
    return os.str();
}

std::string condition_report_to_text(const ConditionReport& rep,
                                     const GapSelection& sel) {
    std::ostringstream os;
    auto line = [&os](const char* name, bool ok) {
        os << name << ": " << (ok ? "ok" : "VIOLATED") << '\n';
    };
    line("(1) q subsequence of stream", rep.subsequence_ok);
    line("(2) p strictly increasing", rep.p_increasing_ok);
    line("(3) lambda chain", rep.lambda_chain_ok);
    line("(4) ratio <= k", rep.ratio_le_k_ok);
    if (rep.witness_checked)
        line("(4) divergence witness", rep.witness_ok);
    else
        os << "(4) divergence witness: not checked (finite horizons cannot "
              "certify a limit)\n";
    os << "k0 = " << sel.k0 << '\n';
    if (!sel.tie_flags.empty()) {
        os << "inverse ties broken upward at k =";
        for (auto k : sel.tie_flags) os << ' ' << k;
        os << '\n';
    }
    if (rep.first_violation_k)
        os << "first violation at k = " << *rep.first_violation_k << '\n';
    return os.str();
}

namespace {

IndexSequence sequence_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "explicit") {
        std::vector<std::int64_t> values;
        for (const auto& v : j.at("values")) values.push_back(v.get<std::int64_t>());
        return IndexSequence::explicit_list(std::move(values));
    }
    const std::int64_t horizon =
        j.contains("horizon") ? require_int(j, "horizon") : 1000000;
    if (kind == "polynomial_floor") {
        std::vector<double> desc;
        for (const auto& c : j.at("coeffs")) desc.push_back(c.get<double>());
        std::vector<double> asc(desc.rbegin(), desc.rend());
        return IndexSequence::polynomial_floor(std::move(asc), horizon);
    }
    if (kind == "geometric") {
        return IndexSequence::geometric(require_int(j, "first"),
                                        require_double(j, "ratio"),
                                        require_double(j, "theta"),
                                        require_double(j, "M"), horizon);
    }
    if (kind == "factorial") return IndexSequence::factorial(horizon);
    throw ConfigError("config: unknown sequence kind \"" + kind + "\"");
}

IndexStream stream_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "identity") return IndexStream::identity();
    if (kind == "affine")
        return IndexStream::affine(require_int(j, "step"),
                                   j.contains("offset") ? require_int(j, "offset") : 0);
    if (kind == "explicit") {
        std::vector<std::int64_t> values;
        for (const auto& v : j.at("values")) values.push_back(v.get<std::int64_t>());
        return IndexStream::explicit_list(std::move(values));
    }
    throw ConfigError("config: unknown stream kind \"" + kind + "\"");
}

SetDescriptor descriptor_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "segment")
        return SetDescriptor::segment(complex_from_json(j.at("a")),
                                      complex_from_json(j.at("b")));
    if (kind == "arc")
        return SetDescriptor::arc(complex_from_json(j.at("center")),
                                  require_double(j, "radius"),
                                  require_double(j, "theta0"),
                                  require_double(j, "span"));
    if (kind == "union") {
        SetDescriptor d;
        for (const auto& part : j.at("parts")) {
            SetDescriptor p = descriptor_from_json(part);
            for (auto& x : p.parts) d.parts.push_back(std::move(x));
        }
        return d;
    }
    throw ConfigError("config: unknown descriptor kind \"" + kind + "\"");
}

CompactSetSample sample_from_json(const json& j, double exclusion_radius) {
    const double density = j.contains("density") ? require_double(j, "density") : 16.0;
    return discretize(descriptor_from_json(j.at("descriptor")), density,
                      exclusion_radius);
}

TargetFunction target_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "polynomial") {
        std::vector<Complex> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
        const Complex center = j.contains("center")
                                   ? complex_from_json(j.at("center"))
                                   : Complex{0.0, 0.0};
        return TargetFunction::polynomial(TaylorPoly(center, std::move(coeffs)));
    }
    if (kind == "rational") {
        std::vector<Complex> coeffs;
        for (const auto& c : j.at("numerator")) coeffs.push_back(complex_from_json(c));
        std::vector<Complex> poles;
        for (const auto& p : j.at("poles")) poles.push_back(complex_from_json(p));
        return TargetFunction::rational(TaylorPoly({0.0, 0.0}, std::move(coeffs)),
                                        std::move(poles));
    }
    if (kind == "exp")
        return TargetFunction::entire_exp(complex_from_json(j.at("scale")),
                                          require_int(j, "order"));
    throw ConfigError("config: unknown target kind \"" + kind + "\"");
}

SigmaRule sigma_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "constant") return SigmaRule::constant(require_double(j, "value"));
    if (kind == "inverse_m")
        return SigmaRule::inverse_m(j.contains("scale") ? require_double(j, "scale")
                                                        : 1.0);
    if (kind == "geometric")
        return SigmaRule::geometric(require_double(j, "scale"),
                                    require_double(j, "base"));
    if (kind == "explicit") {
        std::vector<double> values;
        for (const auto& v : j.at("values")) values.push_back(v.get<double>());
        return SigmaRule::explicit_list(std::move(values));
    }
    throw ConfigError("config: unknown sigma kind \"" + kind + "\"");
}

BuildPlan plan_from_json(const json& j) {
    BuildPlan plan;
    plan.omega_radius = require_double(j, "omega_radius");
    plan.lambda = sequence_from_json(j.at("lambda"));
    if (j.contains("control_weight_factor"))
        plan.control_weight_factor = require_double(j, "control_weight_factor");
    if (j.contains("control_circle_nodes"))
        plan.control_circle_nodes = require_int(j, "control_circle_nodes");
    for (const auto& st : j.at("stages")) {
        BuildStage stage;
        stage.n_index = require_int(st, "n");
        stage.sample = sample_from_json(st.at("set"), plan.omega_radius);
        stage.target = target_from_json(st.at("target"));
        stage.requested_eps = require_double(st, "eps");
        plan.stages.push_back(std::move(stage));
    }
    if (j.contains("smallness")) {
        for (const auto& e : j.at("smallness")) {
            if (e.is_null()) {
                plan.smallness_sets.push_back(std::nullopt);
                plan.smallness_targets.push_back(1.0);
            } else {
                plan.smallness_sets.push_back(
                    sample_from_json(e.at("set"), plan.omega_radius));
                plan.smallness_targets.push_back(require_double(e, "delta"));
            }
        }
    }
    plan.validate();
    return plan;
}

ExperimentConfig experiment_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("omega_radius")) cfg.omega_radius = require_double(j, "omega_radius");
    if (j.contains("radii")) {
        cfg.radii.clear();
        for (const auto& r : j.at("radii")) cfg.radii.push_back(r.get<double>());
    }
    if (j.contains("lgrid")) {
        const auto& g = j.at("lgrid");
        const std::string kind = require_string(g, "kind");
        if (kind == "polar") {
            cfg.lgrid = LGrid::polar(
                require_double(g, "radius"),
                g.contains("radii") ? require_int(g, "radii") : 5,
                g.contains("angles") ? require_int(g, "angles") : 5);
        } else if (kind == "explicit") {
            cfg.lgrid.points.clear();
            for (const auto& p : g.at("points"))
                cfg.lgrid.points.push_back(complex_from_json(p));
        } else {
            throw ConfigError("config: unknown lgrid kind \"" + kind + "\"");
        }
    }
    if (j.contains("set"))
        cfg.approximation_set = sample_from_json(j.at("set"), cfg.omega_radius);
    if (j.contains("target")) cfg.target = target_from_json(j.at("target"));
    if (j.contains("tolerance")) cfg.tolerance = require_double(j, "tolerance");
    cfg.validate();
    return cfg;
}

SynthesisSpec synthesis_from_json(const json& j) {
    SynthesisSpec spec;
    if (j.contains("windows")) {
        for (const auto& w : j.at("windows"))
            spec.windows.emplace_back(w[0].get<std::int64_t>(),
                                      w[1].get<std::int64_t>());
    } else {
        spec.windows_from_selection = true;
    }
    spec.sigma = sigma_from_json(j.at("sigma"));
    const std::string off = j.contains("off_window")
                                ? j.at("off_window").get<std::string>()
                                : "zeros";
    if (off == "zeros")
        spec.off_window = OffWindowRule::Zeros;
    else if (off == "unit")
        spec.off_window = OffWindowRule::UnitModulus;
    else
        throw ConfigError("config: unknown off_window rule \"" + off + "\"");
    spec.degree = require_int(j, "degree");
    return spec;
}

}  // namespace

CliConfig parse_cli_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    CliConfig cfg;
    try {
        if (j.contains("lambda")) cfg.lambda = sequence_from_json(j.at("lambda"));
        if (j.contains("stream")) cfg.stream = stream_from_json(j.at("stream"));
        if (j.contains("selector")) {
            cfg.selector_kind = require_string(j.at("selector"), "kind");
            cfg.selector_count = require_int(j.at("selector"), "count");
        }
        if (j.contains("plan")) cfg.plan = plan_from_json(j.at("plan"));
        if (j.contains("experiment"))
            cfg.experiment = experiment_from_json(j.at("experiment"));
        if (j.contains("poly_file"))
            cfg.poly_file = j.at("poly_file").get<std::string>();
        if (j.contains("synthesize"))
            cfg.synthesize = synthesis_from_json(j.at("synthesize"));
        if (j.contains("pairs")) {
            std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
            for (const auto& p : j.at("pairs"))
                pairs.emplace_back(p[0].get<std::int64_t>(), p[1].get<std::int64_t>());
            cfg.pairs = std::move(pairs);
        }
        if (j.contains("k0")) cfg.pairs_k0 = require_int(j, "k0");
        if (j.contains("witness")) {
            const auto& w = j.at("witness");
            const std::string kind = require_string(w, "kind");
            if (kind == "none") {
                cfg.witness.kind = WitnessSpec::Kind::None;
            } else if (kind == "power") {
                cfg.witness.kind = WitnessSpec::Kind::Power;
                cfg.witness.scale = require_double(w, "scale");
                cfg.witness.exponent = require_double(w, "exponent");
            } else if (kind == "selector") {
                cfg.witness.kind = WitnessSpec::Kind::Selector;
            } else {
                throw ConfigError("config: unknown witness kind \"" + kind + "\"");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

IndexStream parse_stream_spec(const std::string& text) {
    if (text == "identity") return IndexStream::identity();
    // "<step>k" or "<step>k+<offset>"
    const auto kpos = text.find('k');
    if (kpos != std::string::npos && text.find(',') == std::string::npos) {
        const std::int64_t step = std::stoll(text.substr(0, kpos));
        std::int64_t offset = 0;
        if (kpos + 1 < text.size()) offset = std::stoll(text.substr(kpos + 1));
        return IndexStream::affine(step, offset);
    }
    std::vector<std::int64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stoll(item));
    }
    return IndexStream::explicit_list(std::move(values));
}

std::vector<double> parse_poly_descending(const std::string& text) {
    std::vector<double> desc;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) desc.push_back(std::stod(item));
    }
    if (desc.empty()) throw ConfigError("empty polynomial spec");
    return {desc.rbegin(), desc.rend()};  // ascending for the library
}

}  // namespace uts
