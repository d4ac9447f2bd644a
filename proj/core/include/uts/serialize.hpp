#ifndef UTS_SERIALIZE_HPP
#define UTS_SERIALIZE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uts/build_plan.hpp"
#include "uts/transport.hpp"

namespace uts {

// shortest round-trip decimal form; "inf", "-inf", "nan" for the specials
std::string format_double(double v);

// ---- canonical JSON forms ----

// {"center":[re,im],"coeffs":[[re,im],...]}; exact round-trip
std::string taylor_poly_to_json(const TaylorPoly& p);
TaylorPoly taylor_poly_from_json(const std::string& text);

// {"k0":...,"pairs":[[p,q],...],"lambda_pairs":[[lp,lq],...],"ratios":[...]}
// lambda entries are JSON integers while they fit in 64 bits, decimal
// strings past that.
std::string gap_selection_to_json(const GapSelection& sel);

// ---- CSV emitters ----

// header: k,p_k,q_k,lambda_p,lambda_q,ratio,bound_k
// bound_k is the selector's ratio witness w(k) (0 when absent).
std::string gap_selection_to_csv(const GapSelection& sel,
                                 const RatioWitness& bound = {});

// header: k,lambda_p,lambda_q,D1_log,D1,D2_log,D2,D3_log,D3
// log columns carry ln values; linear columns the plain magnitudes
// (inf once past double range, nan for columns not computed).
std::string trace_to_csv(const ConvergenceTrace& trace);

// one JSON object per line: stage, residual, omega_norm, ek_norm,
// requested_eps, status
std::string diagnostics_to_jsonl(const std::vector<StageDiagnostics>& stages);

std::string probe_report_to_json(const FactorialProbeReport& rep);
std::string probe_report_to_text(const FactorialProbeReport& rep);

std::string condition_report_to_text(const ConditionReport& rep,
                                     const GapSelection& sel);

// ---- CLI configuration ----

struct SynthesisSpec {
    std::vector<std::pair<std::int64_t, std::int64_t>> windows;
    bool windows_from_selection = false;
    SigmaRule sigma = SigmaRule::constant(0.0);
    OffWindowRule off_window = OffWindowRule::Zeros;
    std::int64_t degree = 0;
};

struct WitnessSpec {
    enum class Kind { None, Power, Selector };
    Kind kind = Kind::None;
    double scale = 1.0;
    double exponent = 0.0;  // w(k) = scale * k^exponent
};

struct CliConfig {
    std::optional<IndexSequence> lambda;
    std::optional<IndexStream> stream;
    std::string selector_kind;       // "polynomial" | "geometric" | ""
    std::int64_t selector_count = 0;
    std::optional<BuildPlan> plan;
    std::optional<ExperimentConfig> experiment;
    std::optional<std::string> poly_file;
    std::optional<SynthesisSpec> synthesize;
    std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> pairs;
    std::int64_t pairs_k0 = 1;
    WitnessSpec witness;
};

// Parses the documented config schema (see README).  Unknown sections are
// ignored so one file can drive several subcommands.
CliConfig parse_cli_config(const std::string& json_text);

// helper shared by the CLI flags: "identity" | "<step>k" | "<step>k+<off>"
// | comma-separated explicit list
IndexStream parse_stream_spec(const std::string& text);

// CLI polynomial flag: descending coefficients, e.g. "1,0,0" for n^2
std::vector<double> parse_poly_descending(const std::string& text);

}  // namespace uts

#endif
