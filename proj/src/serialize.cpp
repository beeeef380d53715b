#include "systole/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "systole/error.hpp"

namespace systole {

namespace {

template <class F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Domain, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Json end_to_json(double x) { return std::isinf(x) ? Json(nullptr) : Json(x); }

double end_from_json(const Json& j, double inf) { return j.is_null() ? inf : j.get<double>(); }

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "flagged") return Verdict::Flagged;
  throw Error(ErrorKind::Domain, "unknown verdict '" + s + "'");
}

}  // namespace

Json mesh_to_json(const TriMesh& mesh) {
  Json faces = Json::array();
  for (const auto& f : mesh.faces()) faces.push_back({f[0], f[1], f[2]});
  Json lengths = Json::array();
  for (const auto& e : mesh.edges()) lengths.push_back({e.a, e.b, e.length});
  return {{"vertices", mesh.vertex_count()}, {"faces", faces}, {"edge_lengths", lengths}};
}

TriMesh mesh_from_json(const Json& j) {
  return parsing("mesh", [&] {
    const int n = j.at("vertices").get<int>();
    std::vector<TriMesh::Face> faces;
    for (const auto& f : j.at("faces")) {
      if (f.size() != 3) throw Error(ErrorKind::Domain, "mesh faces must have three vertices");
      faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }
    std::vector<TriMesh::EdgeLength> lengths;
    if (j.contains("edge_lengths")) {
      for (const auto& e : j.at("edge_lengths")) {
        if (e.size() != 3) throw Error(ErrorKind::Domain, "edge_lengths entries must be [i, j, length]");
        lengths.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
      }
    }
    return TriMesh(n, std::move(faces), std::move(lengths));
  });
}

TriMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Domain, "cannot open mesh file " + path.string());
  Json j = parsing("mesh", [&] { return Json::parse(in); });
  return mesh_from_json(j);
}

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Domain, "cannot write mesh file " + path.string());
  out << mesh_to_json(mesh).dump(2) << '\n';
}

Json to_json(const CycleWitness& w) {
  Json edges = Json::array();
  for (const auto& e : w.edges) edges.push_back({e.from, e.to});
  return {{"edges", edges}, {"length", w.length}, {"signature", w.signature}, {"exact", w.exact}};
}

CycleWitness witness_from_json(const Json& j) {
  return parsing("witness", [&] {
    CycleWitness w;
    for (const auto& e : j.at("edges")) w.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    w.length = j.at("length").get<double>();
    w.signature = j.at("signature").get<std::vector<std::uint8_t>>();
    w.exact = j.at("exact").get<bool>();
    return w;
  });
}

Json to_json(const LoopGrowthSample& s) {
  return {{"thresholds", s.thresholds},
          {"counts", s.counts},
          {"basepoint", s.basepoint},
          {"homology_proxy", s.homology_proxy}};
}

LoopGrowthSample growth_from_json(const Json& j) {
  auto s = parsing("growth sample", [&] {
    LoopGrowthSample s;
    s.thresholds = j.at("thresholds").get<std::vector<double>>();
    s.counts = j.at("counts").get<std::vector<std::int64_t>>();
    s.basepoint = j.at("basepoint").get<int>();
    s.homology_proxy = j.at("homology_proxy").get<bool>();
    return s;
  });
  s.validate();
  return s;
}

std::string to_csv(const LoopGrowthSample& s) {
  std::ostringstream out;
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "T,N\n";
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) out << s.thresholds[i] << ',' << s.counts[i] << '\n';
  return out.str();
}

Json to_json(const EntropyEstimate& e) {
  return {{"h_est", e.h_est},
          {"fit_window", {e.fit_min, e.fit_max}},
          {"residual", e.residual},
          {"raw_slope", e.raw_slope},
          {"polynomial_exponent", e.polynomial_exponent},
          {"polynomial_corrected", e.polynomial_corrected},
          {"degenerate", e.degenerate}};
}

EntropyEstimate entropy_from_json(const Json& j) {
  return parsing("entropy estimate", [&] {
    EntropyEstimate e;
    e.h_est = j.at("h_est").get<double>();
    e.fit_min = j.at("fit_window").at(0).get<double>();
    e.fit_max = j.at("fit_window").at(1).get<double>();
    e.residual = j.at("residual").get<double>();
    e.raw_slope = j.at("raw_slope").get<double>();
    e.polynomial_exponent = j.at("polynomial_exponent").get<double>();
    e.polynomial_corrected = j.at("polynomial_corrected").get<bool>();
    e.degenerate = j.at("degenerate").get<bool>();
    return e;
  });
}

Json to_json(const OptimizationResult& r) {
  Json slacks = Json::array();
  for (const auto& s : r.certificate) slacks.push_back({{"constraint", s.name}, {"slack", s.slack}});
  const auto& p = r.best_params;
  return {{"params", {{"alpha", p.alpha}, {"beta", p.beta}, {"delta", p.delta}, {"eta", p.eta}}},
          {"value", r.best_value},
          {"evaluations", r.evaluations},
          {"slacks", slacks},
          {"low_confidence", r.low_confidence}};
}

OptimizationResult optimization_from_json(const Json& j) {
  return parsing("optimization result", [&] {
    OptimizationResult r;
    const auto& p = j.at("params");
    r.best_params = {p.at("alpha").get<double>(), p.at("beta").get<double>(), p.at("delta").get<double>(),
                     p.at("eta").get<double>()};
    r.best_value = j.at("value").get<double>();
    r.evaluations = j.at("evaluations").get<std::int64_t>();
    for (const auto& s : j.at("slacks")) r.certificate.push_back({s.at("constraint"), s.at("slack")});
    r.low_confidence = j.value("low_confidence", false);
    return r;
  });
}

Json to_json(const ClaimReport& c) {
  Json value;
  if (const auto* d = std::get_if<double>(&c.paper_value)) {
    value = *d;
  } else {
    const auto& iv = std::get<Interval>(c.paper_value);
    value = {{"lo", end_to_json(iv.lo)}, {"hi", end_to_json(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
  }
  return {{"claim_id", c.claim_id}, {"paper_location", c.paper_location}, {"computed", c.computed},
          {"paper_value", value},   {"tolerance", c.tolerance},           {"verdict", to_string(c.verdict)},
          {"note", c.note}};
}

ClaimReport claim_from_json(const Json& j) {
  return parsing("claim", [&] {
    constexpr double inf = std::numeric_limits<double>::infinity();
    ClaimReport c;
    c.claim_id = j.at("claim_id").get<std::string>();
    c.paper_location = j.at("paper_location").get<std::string>();
    c.computed = j.at("computed").get<double>();
    const auto& v = j.at("paper_value");
    if (v.is_object()) {
      c.paper_value = Interval{end_from_json(v.at("lo"), -inf), end_from_json(v.at("hi"), inf),
                               v.at("lo_open").get<bool>(), v.at("hi_open").get<bool>()};
    } else {
      c.paper_value = v.get<double>();
    }
    c.tolerance = j.at("tolerance").get<double>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.note = j.value("note", "");
    return c;
  });
}

Json to_json(const SurfaceCheckReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  return {{"genus", r.genus},   {"systole", r.systole}, {"systole_exact", r.systole_exact},
          {"area", r.area},     {"ratio", r.ratio},     {"verdict", r.verdict},
          {"witness", to_json(r.witness)}, {"claims", claims}};
}

}  // namespace systole
