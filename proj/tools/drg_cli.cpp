// drg: certification toolkit for distance-regular graphs.
//
// Subcommands: certify, spectral, classical, bounded, delta, gen.
// Exit codes: 0 = every requested certification passed, 1 = certified
// negative (witness in the JSON certificate), 2 = usage or I/O error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "drg/drg.hpp"

namespace {

using drg::Json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string input;
  std::string family;
  std::string format = "graph6";
  std::string out;
  double tol = 1e-9;
  int sample = 0;
  std::uint64_t seed = 0;
  int max_distance = 3;
  int dense_limit = 2048;
  bool quiet = false;
};

struct Session {
  Options opts;
  std::string subcommand;
  drg::Graph graph;
  std::optional<drg::FamilyMetadata> family_meta;
  Json cert;
  Json timings = Json::object();
  int exit_code = 0;

  drg::Tolerances tolerances() const {
    drg::Tolerances t;
    t.residual_abs = opts.tol;
    return t;
  }

  void note(const std::string& line) const {
    if (!opts.quiet) std::cout << line << "\n";
  }
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) drg::fail(drg::errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load_graph(Session& s) {
  auto start = Clock::now();
  if (!s.opts.family.empty()) {
    drg::GeneratedGraph gen = drg::gen_family(s.opts.family);
    s.graph = std::move(gen.graph);
    s.family_meta = std::move(gen.meta);
  } else if (!s.opts.input.empty()) {
    std::string text = read_file(s.opts.input);
    if (s.opts.format == "graph6") s.graph = drg::parse_graph6(text);
    else if (s.opts.format == "edges") s.graph = drg::parse_edge_list(text);
    else drg::fail(drg::errc::unsupported_parameters, "unknown format '" + s.opts.format + "'");
  } else {
    drg::fail(drg::errc::unsupported_parameters, "one of --family or --input is required");
  }
  s.timings["load_ms"] = ms_since(start);

  s.cert["schema"] = drg::kSchemaVersion;
  s.cert["tool"] = Json{{"name", drg::kToolName}, {"version", drg::kToolVersion}};
  Json invocation{{"subcommand", s.subcommand}};
  if (!s.opts.family.empty()) invocation["family"] = s.opts.family;
  if (!s.opts.input.empty()) {
    invocation["input"] = s.opts.input;
    invocation["format"] = s.opts.format;
  }
  invocation["tol"] = s.opts.tol;
  invocation["seed"] = s.opts.seed;
  if (s.opts.sample > 0) invocation["sample"] = s.opts.sample;
  invocation["dense_limit"] = s.opts.dense_limit;
  s.cert["invocation"] = invocation;
  s.cert["input"] = Json{{"n", s.graph.n()},
                         {"edge_count", s.graph.edge_count()},
                         {"digest", drg::graph_digest(s.graph)}};
  s.cert["tolerances"] = drg::json_tolerances(s.tolerances());
}

void finish(Session& s) {
  s.cert["outcome"] = s.exit_code == 0 ? "pass" : "negative";
  s.cert["timings"] = s.timings;
  if (!s.opts.out.empty()) drg::write_json_atomic(s.opts.out, s.cert);
}

/// Certifies and stores the graph/drg sections. Returns the certificate
/// when the graph is distance-regular.
std::optional<drg::DRGCertificate> stage_certify(Session& s) {
  auto start = Clock::now();
  drg::CertifyOptions copts;
  if (s.opts.sample > 0 && s.subcommand == "certify") {
    // an explicit --sample on `certify` requests spot mode
    copts.sample_sources = s.opts.sample;
    copts.seed = s.opts.seed;
  } else if (s.graph.n() > 4096) {
    // large graphs get spot certification with a recorded default
    copts.sample_sources = 64;
    copts.seed = s.opts.seed;
  }
  drg::CertifyOutcome outcome = drg::certify_distance_regular(s.graph, copts);
  s.timings["certify_ms"] = ms_since(start);

  if (std::holds_alternative<drg::NonDRGWitness>(outcome)) {
    const auto& witness = std::get<drg::NonDRGWitness>(outcome);
    std::optional<drg::Vertex> diameter, valency;
    if (s.graph.n() <= 2048) {
      try {
        drg::DiameterReport rep = drg::diameter_and_regularity(s.graph);
        diameter = rep.diameter;
        valency = rep.valency;
      } catch (const drg::Error&) {
      }
    }
    s.cert["graph"] = drg::json_graph_section(s.graph, diameter, valency);
    s.cert["drg"] = drg::json_drg_section(witness);
    s.exit_code = 1;
    s.note("not distance-regular: " + witness.describe());
    return std::nullopt;
  }

  const auto& cert = std::get<drg::DRGCertificate>(outcome);
  s.cert["graph"] = drg::json_graph_section(s.graph, cert.array.D(), cert.array.k());
  s.cert["drg"] = drg::json_drg_section(cert);
  s.note("distance-regular with array " + cert.array.to_string());
  return cert;
}

/// Parallelogram-freedom for the closure gate: through a classical fit
/// when one exists, otherwise by direct scans of lengths 3..D.
drg::ClosureGate build_gate(Session& s, const drg::DRGCertificate& cert,
                            const drg::FitReport& fits) {
  bool para_free = fits.matched;
  if (!para_free) {
    para_free = true;
    for (int len = 3; len <= cert.array.D() && para_free; ++len)
      para_free = drg::find_parallelograms(s.graph, len, true).empty();
  }
  return drg::make_gate(cert, para_free);
}

int run_certify(Session& s) {
  auto cert = stage_certify(s);
  return cert ? 0 : 1;
}

int run_spectral(Session& s) {
  auto cert = stage_certify(s);
  if (!cert) return 1;
  auto start = Clock::now();
  drg::Tolerances tol = s.tolerances();
  drg::SpectralData spec = drg::eigen_from_array(cert->array, s.graph.n(), tol);
  auto orderings = drg::find_qpoly_orderings(spec, tol);
  drg::KreinTensor krein = drg::krein_parameters_checked(
      s.graph, spec, drg::natural_order(spec.D()), s.opts.dense_limit);

  std::optional<double> representation_residual;
  if (!orderings.empty() && s.graph.n() <= s.opts.dense_limit) {
    auto idempotents = drg::primitive_idempotents_dense(s.graph, spec, s.opts.dense_limit);
    const auto& qp = orderings.front();
    const auto& E1 = idempotents[static_cast<std::size_t>(qp.order[1])];
    std::mt19937_64 rng(s.opts.seed);
    std::uniform_int_distribution<drg::Vertex> pick(0, s.graph.n() - 1);
    int sweeps = s.opts.sample > 0 ? s.opts.sample : 50;
    double worst = 0;
    int done = 0;
    while (done < sweeps) {
      drg::Vertex x = pick(rng), y = pick(rng);
      if (x == y) continue;
      drg::DistanceRow dx = drg::bfs_distances(s.graph, x);
      int h = dx[y];
      std::uniform_int_distribution<int> pij(0, spec.D());
      int i = pij(rng), j = pij(rng);
      worst = std::max(worst, drg::verify_representation_identity(
                                  s.graph, E1, qp.dual.theta_star, h, i, j, x, y, tol));
      ++done;
    }
    representation_residual = worst;
  }
  s.cert["spectral"] = drg::json_spectral_section(spec, orderings, krein, tol, representation_residual);
  s.timings["spectral_ms"] = ms_since(start);
  s.note("eigenvalues computed; q-polynomial orderings found: " +
         std::to_string(orderings.size()));
  return 0;
}

int run_classical(Session& s) {
  auto cert = stage_certify(s);
  if (!cert) return 1;
  auto start = Clock::now();
  drg::Tolerances tol = s.tolerances();
  drg::FitReport fits = drg::fit_classical_parameters(cert->array);

  std::vector<double> dual_bracket;
  if (fits.matched) {
    drg::SpectralData spec = drg::eigen_from_array(cert->array, s.graph.n(), tol);
    for (const auto& qp : drg::find_qpoly_orderings(spec, tol))
      dual_bracket.push_back(
          drg::verify_dual_bracket_relation(qp.dual, fits.candidates.front().params.b, tol));
  }
  s.cert["classical"] = drg::json_classical_section(fits, dual_bracket);
  s.timings["classical_ms"] = ms_since(start);
  if (!fits.matched) {
    s.note("no classical parameters reproduce the array");
    s.exit_code = 1;
    return 1;
  }
  s.note("classical fit: " + fits.candidates.front().params.to_string());
  return 0;
}

int run_bounded(Session& s) {
  auto cert = stage_certify(s);
  if (!cert) return 1;
  auto start = Clock::now();
  drg::GateReport gate_report = drg::hypothesis_gate(*cert);
  s.cert["gate"] = drg::json_gate(gate_report);
  if (!gate_report.admissible()) {
    s.cert["failure"] =
        Json{{"stage", "gate"}, {"message", "hypotheses D>=3, a1=0, a2!=0 not met"}};
    s.note("hypothesis gate failed");
    s.exit_code = 1;
    return 1;
  }
  drg::FitReport fits = drg::fit_classical_parameters(cert->array);
  drg::ClosureGate gate = build_gate(s, *cert, fits);
  if (!gate.parallelogram_free) {
    s.cert["failure"] = Json{{"stage", "gate"}, {"message", "parallelograms found"}};
    s.note("parallelogram-freeness could not be established");
    s.exit_code = 1;
    return 1;
  }
  int max_d = std::min(s.opts.max_distance, cert->array.D());
  drg::Sampling sampling = s.opts.sample > 0
                               ? drg::Sampling::random(s.opts.sample, s.opts.seed)
                               : drg::Sampling::exhaustive();
  drg::DistanceCache cache(s.graph);
  drg::BoundednessReport report =
      drg::check_i_bounded(s.graph, *cert, gate, max_d, sampling, &cache);
  s.cert["boundedness"] = drg::json_boundedness_section(report);
  s.timings["bounded_ms"] = ms_since(start);
  s.note("bounded check passed for all " + std::to_string(report.pairs_checked()) + " pairs");
  return 0;
}

int run_delta(Session& s) {
  auto cert = stage_certify(s);
  if (!cert) return 1;
  auto start = Clock::now();
  drg::GateReport gate_report = drg::hypothesis_gate(*cert);
  s.cert["gate"] = drg::json_gate(gate_report);
  if (!gate_report.admissible()) {
    s.cert["failure"] =
        Json{{"stage", "gate"}, {"message", "hypotheses D>=3, a1=0, a2!=0 not met"}};
    s.note("hypothesis gate failed");
    s.exit_code = 1;
    return 1;
  }
  drg::FitReport fits = drg::fit_classical_parameters(cert->array);
  drg::ClosureGate gate = build_gate(s, *cert, fits);
  if (!gate.parallelogram_free) {
    s.cert["failure"] = Json{{"stage", "gate"}, {"message", "parallelograms found"}};
    s.exit_code = 1;
    return 1;
  }

  int wanted = s.opts.sample > 0 ? s.opts.sample : 1;
  std::mt19937_64 rng(s.opts.seed);
  std::uniform_int_distribution<drg::Vertex> pick(0, s.graph.n() - 1);
  Json records = Json::array();
  int produced = 0, attempts = 0;
  while (produced < wanted && attempts < wanted * 200) {
    ++attempts;
    drg::Vertex x = pick(rng);
    drg::DistanceRow row = drg::bfs_distances(s.graph, x);
    std::vector<drg::Vertex> layer;
    for (drg::Vertex v = 0; v < s.graph.n(); ++v)
      if (row[v] == 3) layer.push_back(v);
    if (layer.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_layer(0, layer.size() - 1);
    drg::Vertex y = layer[pick_layer(rng)];
    drg::DeltaResult delta = drg::construct_delta(s.graph, *cert, gate, x, y);
    Json rec = drg::json_subgraph_certificate(delta.cert, s.graph.n() <= 2048);
    rec["x"] = delta.x;
    rec["y"] = delta.y;
    rec["c_set_size"] = delta.c_set.size();
    rec["b_xy_size"] = delta.b_xy.size();
    records.push_back(rec);
    ++produced;
  }
  if (produced < wanted)
    drg::fail(drg::errc::unsupported_parameters, "could not sample distance-3 pairs");
  s.cert["delta"] = Json{{"requested", wanted}, {"records", records}};
  s.timings["delta_ms"] = ms_since(start);
  s.note("constructed " + std::to_string(produced) + " Delta subgraph(s)");
  return 0;
}

int run_gen(Session& s) {
  if (s.opts.family.empty())
    drg::fail(drg::errc::unsupported_parameters, "gen requires --family");
  std::string encoded = drg::write_graph6(s.graph);
  if (s.opts.out.empty()) {
    std::cout << encoded << "\n";
    return 0;
  }
  {
    std::ofstream out(s.opts.out, std::ios::binary | std::ios::trunc);
    if (!out) drg::fail(drg::errc::io_error, "cannot write " + s.opts.out);
    out << encoded << "\n";
  }
  Json meta;
  meta["schema"] = drg::kSchemaVersion;
  meta["family"] = s.family_meta->family;
  meta["n"] = s.graph.n();
  meta["edge_count"] = s.graph.edge_count();
  meta["digest"] = drg::graph_digest(s.graph);
  if (s.family_meta->expected_b) {
    meta["expected_array"] = Json{{"b", *s.family_meta->expected_b},
                                  {"c", *s.family_meta->expected_c}};
  }
  if (s.family_meta->expected_classical) {
    const auto& ecp = *s.family_meta->expected_classical;
    meta["expected_classical"] =
        Json{{"D", ecp[0]}, {"b", ecp[1]}, {"alpha", ecp[2]}, {"beta", ecp[3]}};
  }
  drg::write_json_atomic(s.opts.out + ".meta.json", meta);
  s.note("wrote " + s.opts.out + " and sidecar");
  return 0;
}

int usage_exit_code(drg::errc code) {
  switch (code) {
    case drg::errc::malformed_header:
    case drg::errc::invalid_character:
    case drg::errc::truncated_bit_vector:
    case drg::errc::trailing_garbage:
    case drg::errc::self_loop:
    case drg::errc::vertex_out_of_range:
    case drg::errc::parse_error:
    case drg::errc::unsupported_parameters:
    case drg::errc::io_error:
      return 2;
    default:
      return 1;  // certified negative
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification toolkit for distance-regular graphs"};
  app.require_subcommand(1);

  Options opts;
  Session session;

  auto add_common = [&](CLI::App* cmd, bool graph_input) {
    if (graph_input) {
      cmd->add_option("--input", opts.input, "path to a graph file");
      cmd->add_option("--family", opts.family, "family spec, e.g. petersen or hermitian:3,2");
      cmd->add_option("--format", opts.format, "input format: graph6|edges")
          ->check(CLI::IsMember({"graph6", "edges"}));
    } else {
      cmd->add_option("--family", opts.family, "family spec to generate")->required();
    }
    cmd->add_option("--out", opts.out, "output path");
    cmd->add_option("--tol", opts.tol, "absolute residual tolerance");
    cmd->add_option("--sample", opts.sample, "sample count for randomized stages");
    cmd->add_option("--seed", opts.seed, "seed for every randomized choice");
    cmd->add_option("--max-distance", opts.max_distance, "largest pair distance to certify");
    cmd->add_option("--dense-limit", opts.dense_limit, "max n for dense-matrix verification");
    cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
  };

  add_common(app.add_subcommand("certify", "decide distance-regularity"), true);
  add_common(app.add_subcommand("spectral", "eigenvalues, idempotents, Krein data"), true);
  add_common(app.add_subcommand("classical", "fit classical parameters"), true);
  add_common(app.add_subcommand("bounded", "certify i-boundedness pair by pair"), true);
  add_common(app.add_subcommand("delta", "construct Delta = [x,C] for distance-3 pairs"), true);
  add_common(app.add_subcommand("gen", "generate a family graph (graph6 + sidecar)"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  session.opts = opts;
  session.subcommand = app.get_subcommands().front()->get_name();

  try {
    load_graph(session);
    int rc = 0;
    if (session.subcommand == "certify") rc = run_certify(session);
    else if (session.subcommand == "spectral") rc = run_spectral(session);
    else if (session.subcommand == "classical") rc = run_classical(session);
    else if (session.subcommand == "bounded") rc = run_bounded(session);
    else if (session.subcommand == "delta") rc = run_delta(session);
    else if (session.subcommand == "gen") return run_gen(session);
    session.exit_code = rc;
    finish(session);
    return rc;
  } catch (const drg::Error& e) {
    int rc = usage_exit_code(e.code());
    session.exit_code = rc;
    session.cert["failure"] = Json{{"code", drg::errc_name(e.code())}, {"message", e.what()}};
    if (!session.opts.quiet) std::cerr << "error: " << e.what() << "\n";
    if (!session.opts.out.empty() && session.subcommand != "gen") {
      try {
        finish(session);
      } catch (...) {
      }
    }
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
