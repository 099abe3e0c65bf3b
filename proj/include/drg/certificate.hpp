#pragma once

// JSON certificate assembly (schema 1). Sections appear iff the
// corresponding stage ran; every classification carries the tolerance it
// was made under; failures carry machine-readable witnesses. Output
// bytes are deterministic for a fixed invocation apart from "timings".

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "drg/classical.hpp"
#include "drg/closure.hpp"
#include "drg/core.hpp"
#include "drg/graph.hpp"
#include "drg/intersection.hpp"
#include "drg/io.hpp"
#include "drg/spectral.hpp"

namespace drg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "drgcert";
inline constexpr const char* kToolVersion = "1.0.0";

/// FNV-1a over the canonical graph6 form; identifies the input graph.
inline std::string graph_digest(const Graph& g) {
  std::string enc = write_graph6(g);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : enc) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

inline Json json_tolerances(const Tolerances& tol) {
  return Json{{"matrix_residual_abs", tol.residual_abs},
              {"krein_zero_rel", tol.zero_rel},
              {"eigen_gap_rel", tol.eigen_gap_rel},
              {"mult_integer_rel", tol.mult_int_rel}};
}

inline Json json_graph_section(const Graph& g, std::optional<Vertex> diameter,
                               std::optional<Vertex> valency) {
  Json j{{"n", g.n()}, {"edge_count", g.edge_count()}};
  j["diameter"] = diameter ? Json(*diameter) : Json(nullptr);
  j["valency"] = valency ? Json(*valency) : Json(nullptr);
  return j;
}

inline Json json_witness(const NonDRGWitness& w) {
  Json j;
  switch (w.kind) {
    case NonDRGWitness::Kind::disconnected:
      j["kind"] = "disconnected";
      j["component_root"] = w.component_root;
      j["unreachable"] = w.unreachable;
      break;
    case NonDRGWitness::Kind::not_regular:
      j["kind"] = "not_regular";
      j["vertices"] = {w.deg_u, w.deg_v};
      j["degrees"] = {w.degree_u, w.degree_v};
      break;
    case NonDRGWitness::Kind::count_mismatch:
      j["kind"] = "count_mismatch";
      j["h"] = w.h;
      j["i"] = w.i;
      j["j"] = w.j;
      j["pair1"] = {w.pair1.first, w.pair1.second};
      j["count1"] = w.count1;
      j["pair2"] = {w.pair2.first, w.pair2.second};
      j["count2"] = w.count2;
      break;
  }
  j["description"] = w.describe();
  return j;
}

inline Json json_array(const IntersectionArray& arr) {
  Json j;
  j["D"] = arr.D();
  j["b"] = arr.b_seq();
  j["c"] = arr.c_seq();
  std::vector<std::int64_t> a, ki;
  for (int i = 0; i <= arr.D(); ++i) a.push_back(arr.a(i));
  for (int i = 0; i <= arr.D(); ++i) ki.push_back(arr.ki(i));
  j["a"] = a;
  j["k_i"] = ki;
  j["k"] = arr.k();
  j["display"] = arr.to_string();
  return j;
}

inline Json json_drg_section(const DRGCertificate& cert) {
  Json j;
  j["is_drg"] = true;
  j["array"] = json_array(cert.array);
  switch (cert.mode) {
    case DRGCertificate::Verification::full_tensor: j["verification"] = "full-tensor"; break;
    case DRGCertificate::Verification::array_all_pairs:
      j["verification"] = "array-all-pairs";
      break;
    case DRGCertificate::Verification::array_sampled:
      j["verification"] = "array-sampled";
      j["sampled_sources"] = cert.sampled_sources;
      j["sample_seed"] = cert.sample_seed;
      break;
  }
  return j;
}

inline Json json_drg_section(const NonDRGWitness& witness) {
  return Json{{"is_drg", false}, {"witness", json_witness(witness)}};
}

inline Json json_gate(const GateReport& gate) {
  return Json{{"d_ge_3", gate.d_ge_3},
              {"a1_zero", gate.a1_zero},
              {"a2_nonzero", gate.a2_nonzero},
              {"admissible", gate.admissible()}};
}

inline Json json_spectral_section(const SpectralData& spec,
                                  const std::vector<QPolyOrdering>& orderings,
                                  const KreinTensor& krein, const Tolerances& tol,
                                  std::optional<double> representation_residual) {
  Json j;
  j["theta"] = spec.theta;
  j["mult"] = spec.mult;
  j["krein_min"] = krein.min_value();
  j["krein_min_tol"] = tol.residual_abs * 10;
  // Zero pattern as a bitstring over (h,i,j) in lexicographic order.
  const double zero_threshold = tol.zero_rel * std::max(1.0, krein.max_abs());
  std::string pattern;
  const int m = spec.D() + 1;
  pattern.reserve(static_cast<std::size_t>(m) * m * m);
  for (int h = 0; h < m; ++h)
    for (int i = 0; i < m; ++i)
      for (int jj = 0; jj < m; ++jj)
        pattern.push_back(std::abs(krein.at(h, i, jj)) <= zero_threshold ? '0' : '1');
  j["krein_zero_pattern"] = pattern;
  j["krein_zero_threshold"] = zero_threshold;
  j["qpoly"] = !orderings.empty();
  Json list = Json::array();
  for (const auto& qp : orderings) {
    Json o;
    o["order"] = qp.order;
    o["theta_star"] = qp.dual.theta_star;
    o["duals_distinct"] = qp.duals_distinct;
    list.push_back(o);
  }
  j["orderings"] = list;
  if (representation_residual) {
    j["representation_residual"] = *representation_residual;
    j["representation_tol"] = 1e-8;
  }
  return j;
}

inline Json json_classical_section(const FitReport& fits,
                                   const std::vector<double>& dual_bracket_deviation_per_ordering) {
  Json j;
  j["matched"] = fits.matched;
  Json list = Json::array();
  for (const Fit& f : fits.candidates) {
    list.push_back(Json{{"D", f.params.D},
                        {"b", f.params.b},
                        {"alpha", f.params.alpha},
                        {"beta", f.params.beta},
                        {"exact", f.exact},
                        {"max_deviation", f.max_deviation}});
  }
  j["candidates"] = list;
  if (!dual_bracket_deviation_per_ordering.empty()) {
    j["dual_bracket_deviation"] = dual_bracket_deviation_per_ordering;
    j["dual_bracket_tol"] = 1e-8;
  }
  return j;
}

inline Json json_subgraph_certificate(const ClosedSubgraphCertificate& cert,
                                      bool include_members = true) {
  Json j;
  j["size"] = cert.members.size();
  j["diameter"] = cert.diameter;
  j["valency"] = cert.valency ? Json(*cert.valency) : Json(nullptr);
  j["closed"] = cert.closed;
  j["construction"] = construction_name(cert.construction);
  j["closed_wrt_count"] = cert.closed_wrt.size();
  if (include_members && cert.members.size() <= 2048) j["members"] = cert.members.members();
  return j;
}

inline Json json_boundedness_section(const BoundednessReport& report) {
  Json j;
  j["max_distance"] = report.max_distance;
  j["sampling"] = report.sampling.mode == Sampling::Mode::exhaustive
                      ? Json{{"mode", "exhaustive"}}
                      : Json{{"mode", "random"},
                             {"count", report.sampling.count},
                             {"seed", report.sampling.seed}};
  Json levels = Json::array();
  for (const auto& level : report.levels) {
    Json l;
    l["distance"] = level.distance;
    l["pairs_checked"] = level.pairs_checked;
    l["passes"] = level.passes;
    l["unique_subgraphs"] = level.unique_subgraphs;
    Json shapes = Json::array();
    for (const auto& [shape, count] : level.shapes)
      shapes.push_back(Json{{"size", shape.size},
                            {"valency", shape.valency},
                            {"diameter", shape.diameter},
                            {"construction", construction_name(shape.construction)},
                            {"pairs", count}});
    l["shapes"] = shapes;
    levels.push_back(l);
  }
  j["levels"] = levels;
  j["all_passed"] = report.all_passed;
  return j;
}

/// Writes JSON atomically: temp file in the target directory, then rename.
inline void write_json_atomic(const std::filesystem::path& path, const Json& j) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io_error, "cannot open " + tmp.string());
    out << j.dump(2) << "\n";
    if (!out) fail(errc::io_error, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace drg
