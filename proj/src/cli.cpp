#include "mubqpd/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "mubqpd/csco.hpp"
#include "mubqpd/error.hpp"
#include "mubqpd/json_io.hpp"
#include "mubqpd/mub.hpp"
#include "mubqpd/parallel.hpp"
#include "mubqpd/polytope.hpp"
#include "mubqpd/qpd.hpp"
#include "mubqpd/state.hpp"
#include "mubqpd/tomography.hpp"

namespace mubqpd::cli {

namespace {

constexpr std::array<std::string_view, 10> kSubcommands{"mub",     "csco",     "qpd",   "classify", "marginal",
                                                         "oracle",  "polytope", "probe", "tomo",     "fixtures"};

struct RunConfig {
  std::string command;
  int dim = 3;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t shots = 10000;
  std::string theta;
  std::vector<int> subset;
  bool strict = false;
  bool fixture = false;
  int threads = 0;
  std::string out_path;
};

// Raised when a --strict check does not hold; the JSON is still emitted.
struct CheckFailed {
  Json document;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CscoBasis basis_for(const RunConfig& c) { return c.fixture ? paper_fixture(c.dim) : build_csco(c.dim); }

std::optional<BlochState> parse_theta(const RunConfig& c, const CscoBasis& b) {
  if (c.theta.empty()) return std::nullopt;
  const std::string text = c.theta.front() == '@' ? read_file(c.theta.substr(1)) : c.theta;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("--theta is not valid JSON: ") + e.what());
  }
  BlochState s;
  if (j.is_array()) {
    s.dim = b.dim;
    try {
      s.theta = j.get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadInput, std::string("--theta must hold reals: ") + e.what());
    }
  } else {
    s = bloch_from_json(j);
  }
  if (s.dim != b.dim || s.theta.size() != b.operator_count()) {
    throw Error(ErrorCode::BadInput, "--theta needs " + std::to_string(b.operator_count()) + " components for n = " +
                                         std::to_string(b.dim));
  }
  return s;
}

BlochState require_theta(const RunConfig& c, const CscoBasis& b) {
  auto s = parse_theta(c, b);
  if (!s) throw Error(ErrorCode::BadInput, "--theta is required for " + c.command);
  return *s;
}

Json cmd_mub(const RunConfig& c) {
  const MubFamily f = build_mub(c.dim);
  Json bases = Json::array();
  for (const auto& m : f.bases) bases.push_back(to_json(m));
  Json doc{{"dim", f.dim}, {"unbiased_defect", verify_unbiased(f)}, {"bases", bases}};
  if (f.dim == 3) {
    const TwistCheck t = twist_map_check(f);
    doc["twist"] = {{"ok", t.ok}, {"residual_third", t.residual_third}, {"residual_fourth", t.residual_fourth}};
  }
  return doc;
}

Json validation_json(const CscoValidation& v) {
  return {{"orthonormality", v.orthonormality}, {"hermiticity", v.hermiticity}, {"trace", v.trace},
          {"commutator", v.commutator},         {"ray_mismatch", v.ray_mismatch}, {"alignment", v.alignment},
          {"pass", v.pass}};
}

Json cmd_csco(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const CscoValidation v = validate_csco(b, build_mub(c.dim));
  Json doc = to_json(b);
  doc["validation"] = validation_json(v);
  if (c.strict && !v.pass) throw CheckFailed{doc};
  return doc;
}

Json cmd_fixtures(const RunConfig& c) {
  const CscoBasis fixture = paper_fixture(c.dim);
  const CscoBasis generated = build_csco(c.dim);
  const CscoValidation v = validate_csco(fixture, build_mub(c.dim));
  Json doc = to_json(fixture);
  doc["validation"] = validation_json(v);
  doc["span_residual"] = span_residual(generated, fixture);
  doc["set_alignment"] = align_sets(generated, fixture);
  if (c.strict && !v.pass) throw CheckFailed{doc};
  return doc;
}

Json cmd_qpd(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const BlochState s = require_theta(c, b);
  if (!c.subset.empty()) return to_json(qpd_closed_form(s, b, c.subset));
  return to_json(qpd_table(s, b));
}

Json cmd_classify(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const BlochState s = require_theta(c, b);
  const Classification cl = classify(s, b);
  const Membership m = membership(s, b);
  return {{"dim", b.dim},
          {"min_value", cl.min_value},
          {"non_negative", cl.non_negative},
          {"argmin", cl.argmin},
          {"margin", m.margin},
          {"region", to_string(m.region)}};
}

Json cmd_marginal(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const BlochState s = require_theta(c, b);
  if (c.subset.empty()) throw Error(ErrorCode::BadInput, "--subset is required for marginal");
  return to_json(qpd_marginal(qpd_table(s, b), c.subset));
}

DensityMatrix state_for(const RunConfig& c, const CscoBasis& b) {
  if (auto s = parse_theta(c, b)) return density_from_bloch(*s, b);
  return random_state(b.dim, StateKind::mixed, c.seed);
}

Json cmd_oracle(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const DensityMatrix rho = state_for(c, b);
  const std::vector<int> subset = c.subset.empty() ? full_subset(b.dim) : c.subset;
  const FourierConsistency fc = fourier_consistency(rho.matrix, b, c.samples, c.seed, subset);
  const bool pass = fc.max_deviation < kTolerances.oracle;
  Json doc{{"dim", b.dim},
           {"subset", fc.subset},
           {"samples", fc.samples},
           {"max_deviation", fc.max_deviation},
           {"mean_deviation", fc.mean_deviation},
           {"tolerance", kTolerances.oracle},
           {"pass", pass}};
  if (c.strict && !pass) throw CheckFailed{doc};
  return doc;
}

Json cmd_polytope(const RunConfig& c) { return to_json(enumerate_faces(basis_for(c))); }

Json cmd_probe(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const SupportProbe p = support_probe(b, c.samples, c.seed);
  const bool pass = p.max_gap < 1e-7;
  Json doc{{"dim", b.dim}, {"directions", p.directions}, {"max_gap", p.max_gap}, {"pass", pass}};
  if (b.dim == 2) doc["octahedron_disagreements"] = octahedron_check(b, c.samples, c.seed);
  if (c.strict && !pass) throw CheckFailed{doc};
  return doc;
}

Json cmd_tomo(const RunConfig& c) {
  const CscoBasis b = basis_for(c);
  const DensityMatrix rho = state_for(c, b);
  const BlochState truth = bloch_from_density(rho, b);
  const MeasurementRecord r = simulate_counts(rho, b, c.shots, c.seed);
  const BlochEstimate e = estimate_bloch(r, b);
  double err2 = 0.0;
  for (std::size_t j = 0; j < truth.theta.size(); ++j) err2 += std::pow(e.state.theta[j] - truth.theta[j], 2);
  return {{"record", to_json(r)},
          {"estimate", to_json(e.state)},
          {"standard_errors", e.standard_errors},
          {"aggregate_error", e.aggregate_error},
          {"truth", to_json(truth)},
          {"error_norm", std::sqrt(err2)}};
}

Json dispatch(const RunConfig& c) {
  const std::string& s = c.command;
  if (s == "mub") return cmd_mub(c);
  if (s == "csco") return cmd_csco(c);
  if (s == "qpd") return cmd_qpd(c);
  if (s == "classify") return cmd_classify(c);
  if (s == "marginal") return cmd_marginal(c);
  if (s == "oracle") return cmd_oracle(c);
  if (s == "polytope") return cmd_polytope(c);
  if (s == "probe") return cmd_probe(c);
  if (s == "tomo") return cmd_tomo(c);
  return cmd_fixtures(c);
}

void write_error(std::ostream& err, std::string_view code, const std::string& detail) {
  err << Json{{"error", code}, {"detail", detail}}.dump() << '\n';
}

void emit(const RunConfig& c, const Json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!c.out_path.empty()) {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::BadInput, "cannot write " + c.out_path);
    file << text;
  }
  out << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
    write_error(err, "UnknownSubcommand", args.empty() ? "no subcommand given" : "unknown subcommand " + args.front());
    return kExitUnknownSubcommand;
  }

  RunConfig c;
  c.command = args.front();
  CLI::App app{"mubqpd " + c.command};
  app.add_option("--dim", c.dim, "Hilbert-space dimension n");
  app.add_option("--seed", c.seed, "seed for every random draw");
  app.add_option("--samples", c.samples, "oracle samples or probe directions")->check(CLI::PositiveNumber);
  app.add_option("--shots", c.shots, "shots per basis")->check(CLI::PositiveNumber);
  app.add_option("--theta", c.theta, "Bloch vector: JSON array, {\"dim\",\"theta\"} object, or @file");
  app.add_option("--subset", c.subset, "1-based set indices, comma separated")->delimiter(',');
  app.add_flag("--strict", c.strict, "exit 1 when a check fails");
  app.add_flag("--fixture", c.fixture, "use the published operator matrices (n = 2, 3, 4)");
  app.add_option("--threads", c.threads, "OpenMP threads");
  app.add_option("--out", c.out_path, "also write the JSON document here");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "BadInput", e.what());
    return kExitBadInput;
  }

  try {
    set_thread_count(c.threads);
    emit(c, dispatch(c), out);
    return kExitOk;
  } catch (const CheckFailed& f) {
    try {
      emit(c, f.document, out);
    } catch (const Error&) {
    }
    write_error(err, "InternalCheckFailed", c.command + " check did not pass");
    return kExitCheckFailed;
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.detail());
    return kExitBadInput;
  }
}

}  // namespace mubqpd::cli
