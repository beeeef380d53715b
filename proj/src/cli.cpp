#include "systole/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "systole/bounds.hpp"
#include "systole/error.hpp"
#include "systole/optimizer.hpp"
#include "systole/serialize.hpp"
#include "systole/surface_check.hpp"
#include "systole/verifier.hpp"

namespace systole {

namespace {

enum class Format { Table, Json, Csv };

std::string table_number(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string scalar_text(const Json& v, Format f) {
  if (v.is_null()) return f == Format::Csv ? "" : "-";
  if (v.is_number_float()) return f == Format::Table ? table_number(v.get<double>()) : csv_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j);
  }
}

std::string array_text(const Json& v, Format f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += f == Format::Csv ? ";" : ", ";
    s += scalar_text(v[i], f);
  }
  return s;
}

// Key/value rendering of an arbitrary JSON document.
void emit(const Json& j, Format f, std::ostream& out) {
  if (f == Format::Json) {
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, Json>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  if (f == Format::Csv) out << "key,value\n";
  for (const auto& [k, v] : rows) {
    const std::string text = v.is_array() ? array_text(v, f) : scalar_text(v, f);
    if (f == Format::Csv) {
      out << k << ',' << text << '\n';
    } else {
      out << std::left << std::setw(static_cast<int>(width) + 2) << k << text << '\n';
    }
  }
}

void emit_claims(const std::vector<ClaimReport>& claims, Format f, std::ostream& out) {
  if (f == Format::Json) {
    Json arr = Json::array();
    for (const auto& c : claims) arr.push_back(to_json(c));
    out << Json{{"claims", arr}, {"all_passed", all_passed(claims)}}.dump(2) << '\n';
    return;
  }
  auto expected = [&](const ClaimReport& c) {
    if (const auto* d = std::get_if<double>(&c.paper_value)) {
      return f == Format::Table ? table_number(*d) : csv_number(*d);
    }
    const auto& iv = std::get<Interval>(c.paper_value);
    auto num = [&](double x) { return f == Format::Table ? table_number(x) : csv_number(x); };
    return std::string(iv.lo_open ? "(" : "[") + num(iv.lo) + " " + num(iv.hi) + (iv.hi_open ? ")" : "]");
  };
  if (f == Format::Csv) {
    out << "claim_id,computed,paper_value,tolerance,verdict\n";
    for (const auto& c : claims) {
      out << c.claim_id << ',' << csv_number(c.computed) << ',' << expected(c) << ',' << csv_number(c.tolerance)
          << ',' << to_string(c.verdict) << '\n';
    }
    return;
  }
  std::size_t width = 8;
  for (const auto& c : claims) width = std::max(width, c.claim_id.size());
  const int w = static_cast<int>(width) + 2;
  out << std::left << std::setw(w) << "claim" << std::setw(14) << "computed" << std::setw(24) << "paper"
      << std::setw(12) << "tolerance" << "verdict\n";
  for (const auto& c : claims) {
    out << std::left << std::setw(w) << c.claim_id << std::setw(14) << table_number(c.computed) << std::setw(24)
        << expected(c) << std::setw(12) << table_number(c.tolerance) << to_string(c.verdict) << '\n';
  }
  std::size_t flagged = 0;
  for (const auto& c : claims) {
    if (c.verdict == Verdict::Pass) continue;
    if (c.verdict == Verdict::Flagged) ++flagged;
    out << "  " << to_string(c.verdict) << ' ' << c.claim_id << ": " << c.note << '\n';
  }
  out << (all_passed(claims) ? "all claims pass" : "claim failures") << " (" << claims.size() << " claims, " << flagged
      << " flagged)\n";
}

struct BoundsArgs {
  std::string formula;
  double alpha = 0.0, beta = 0.0, delta = 0.0, eta = 0.0;
  double sys = 1.0, area = 0.0, radius = 0.0, rho = 0.0, inj = 0.0;
  int genus = 0, n = 0;
  std::string model = "croke";
};

Json eval_bound(const BoundsArgs& a) {
  const BoundParams p{a.alpha, a.beta, a.delta, a.eta};
  Json j{{"formula", a.formula}};
  auto entropy_json = [&](const EntropyBoundResult& r) {
    j["value"] = r.h_upper;
    j["log_argument"] = r.log_argument;
    j["prefactor"] = r.prefactor;
  };
  if (a.formula == "thm12") {
    const double v = genus_bound_small_height(p);
    j["value"] = v;
    j["genus_at_most"] = genus_conclusion(v);
  } else if (a.formula == "prop25") {
    const double v = genus_bound_half_injectivity(a.eta);
    j["value"] = v;
    j["genus_at_most"] = genus_conclusion(v);
  } else if (a.formula == "katok") {
    SurfaceSummary s{a.genus, a.sys, a.area, std::nullopt};
    s.validate();
    j["value"] = katok_lower_bound(s);
  } else if (a.formula == "croke") {
    j["value"] = disk_area_lower(BallAreaModel::croke(), a.radius);
  } else if (a.formula == "gromov") {
    j["value"] = disk_area_lower(BallAreaModel::gromov_height(a.rho), a.radius);
  } else if (a.formula == "bishop") {
    j["value"] = disk_area_lower(BallAreaModel::euclidean(), a.radius);
  } else if (a.formula == "centers") {
    const double v = nonpositive_center_count(a.area, a.sys);
    j["value"] = v;
  } else if (a.formula == "betti") {
    const double v = betti_genus_bound(a.n);
    j["value"] = v;
  } else if (a.formula == "prop22") {
    SurfaceSummary s{a.genus, a.sys, a.area, std::nullopt};
    BallAreaModel m = a.model == "gromov" ? BallAreaModel::gromov_height(a.rho)
                      : a.model == "bishop" ? BallAreaModel::euclidean()
                                            : BallAreaModel::croke();
    j["model"] = m.name();
    entropy_json(entropy_upper_bound(s, p, m));
  } else if (a.formula == "cor24") {
    entropy_json(entropy_upper_bound_inj(a.inj, a.area, a.eta));
  }
  return j;
}

struct SurfaceArgs {
  std::string action;
  std::string mesh_path;
  std::vector<double> torus;
  int polygon = 0;
  double tmax = 10.0;
  int steps = 20;
  int basepoint = 0;
  bool heuristic = false;
  bool entropy = false;
  LoopCountOptions caps;
};

TriMesh load_surface(const SurfaceArgs& a) {
  if (!a.mesh_path.empty()) return load_mesh(a.mesh_path);
  const auto& t = a.torus;
  const double n = t[4];
  if (n != static_cast<int>(n)) throw Error(ErrorKind::Domain, "torus subdivision n must be an integer");
  return build_flat_torus({t[0], t[1]}, {t[2], t[3]}, static_cast<int>(n));
}

std::vector<double> thresholds(const SurfaceArgs& a) {
  if (!(a.tmax > 0.0) || a.steps < 1) throw Error(ErrorKind::Domain, "--Tmax must be positive and --steps >= 1");
  std::vector<double> ts;
  for (int k = 1; k <= a.steps; ++k) ts.push_back(a.tmax * k / a.steps);
  return ts;
}

Json growth_json(const LoopGrowthSample& s) {
  Json j{{"sample", to_json(s)}};
  try {
    j["entropy"] = to_json(estimate_entropy(s));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Domain) throw;
    j["entropy"] = nullptr;
  }
  return j;
}

int run_surface(const SurfaceArgs& a, Format f, std::ostream& out) {
  if (a.polygon > 0) {
    if (a.action != "growth") throw Error(ErrorKind::Domain, "--polygon supports only the growth action");
    const auto s = sample_loop_growth(PolygonComplex::standard(a.polygon), thresholds(a), a.caps);
    if (f == Format::Csv) {
      out << to_csv(s);
    } else {
      emit(growth_json(s), f, out);
    }
    return kExitOk;
  }
  const TriMesh mesh = load_surface(a);
  SystoleOptions opt;
  opt.allow_heuristic = a.heuristic;
  if (a.action == "genus") {
    emit(Json{{"genus", mesh_genus(mesh)}, {"euler_characteristic", mesh.euler_characteristic()}}, f, out);
  } else if (a.action == "area") {
    emit(Json{{"area", mesh_area(mesh)}}, f, out);
  } else if (a.action == "systole") {
    emit(to_json(homological_systole(mesh, opt)), f, out);
  } else if (a.action == "ratio") {
    const auto w = homological_systole(mesh, opt);
    const double area = mesh_area(mesh);
    emit(Json{{"systole", w.length}, {"area", area}, {"ratio", loewner_ratio(w.length, area)}, {"exact", w.exact}}, f,
         out);
  } else if (a.action == "growth") {
    const auto s = sample_loop_growth(mesh, a.basepoint, thresholds(a), a.caps);
    if (f == Format::Csv) {
      out << to_csv(s);
    } else {
      emit(growth_json(s), f, out);
    }
  } else {
    std::optional<EntropyInput> entropy;
    if (a.entropy) {
      const auto s = sample_loop_growth(mesh, a.basepoint, thresholds(a), a.caps);
      entropy = EntropyInput{estimate_entropy(s), s.homology_proxy};
    }
    const auto report = check_surface_against_bounds(mesh, entropy, opt);
    emit(to_json(report), f, out);
    return all_passed(report.claims) ? kExitOk : kExitClaimFailure;
  }
  return kExitOk;
}

int exit_code_for(ErrorKind k) { return k == ErrorKind::Resource ? kExitResource : kExitDomain; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Systolic bound evaluation, constant search, mesh analysis and claim verification", "systolab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "table";
  bool as_json = false, as_csv = false, as_table = false;
  auto* fmt = app.add_option("--format", format_name, "Output format")
                  ->check(CLI::IsMember({"table", "json", "csv"}));
  auto* fj = app.add_flag("--json", as_json, "Same as --format json");
  auto* fc = app.add_flag("--csv", as_csv, "Same as --format csv");
  auto* ft = app.add_flag("--table", as_table, "Same as --format table (6 significant digits)");
  fmt->excludes(fj, fc, ft);
  fj->excludes(fc, ft);
  fc->excludes(ft);

  // bounds eval
  BoundsArgs b;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  bounds->require_subcommand(1);
  bounds->fallthrough();
  auto* eval = bounds->add_subcommand("eval", "Evaluate one formula");
  eval->fallthrough();
  eval->add_option("--formula", b.formula, "Formula to evaluate")
      ->required()
      ->check(CLI::IsMember(
          {"thm12", "prop25", "katok", "croke", "gromov", "bishop", "centers", "betti", "prop22", "cor24"}));
  eval->add_option("--alpha", b.alpha, "Net radius ratio");
  eval->add_option("--beta", b.beta, "Net step ratio");
  eval->add_option("--delta", b.delta, "Height / systole ratio");
  eval->add_option("--eta", b.eta, "Radius / injectivity-radius ratio");
  eval->add_option("--sys", b.sys, "Systole")->capture_default_str();
  eval->add_option("--area", b.area, "Area");
  eval->add_option("--genus", b.genus, "Genus");
  eval->add_option("--radius", b.radius, "Disk radius");
  eval->add_option("--rho", b.rho, "Height-function bound");
  eval->add_option("--inj", b.inj, "Injectivity radius");
  eval->add_option("--n", b.n, "Center count");
  eval->add_option("--model", b.model, "Disk model for prop22")
      ->check(CLI::IsMember({"croke", "gromov", "bishop"}))
      ->capture_default_str();

  // optimize
  std::string target;
  std::int64_t budget = 0;
  std::uint64_t seed = 1;
  double opt_delta = 1e-6;
  unsigned threads = 0;
  auto* optimize = app.add_subcommand("optimize", "Search for the constants minimizing a genus bound");
  optimize->fallthrough();
  optimize->add_option("target", target, "thm12 or prop25")->required()->check(CLI::IsMember({"thm12", "prop25"}));
  optimize->add_option("--budget", budget, "Objective evaluations (default 200000 for thm12, 10000 for prop25)");
  optimize->add_option("--seed", seed, "Grid jitter seed")->capture_default_str();
  optimize->add_option("--delta", opt_delta, "Fixed height ratio for thm12")->capture_default_str();
  optimize->add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();

  // surface
  SurfaceArgs s;
  auto* surface = app.add_subcommand("surface", "Analyze a triangulated surface; CSV growth columns are T,N");
  surface->fallthrough();
  surface->add_option("action", s.action, "genus | area | systole | ratio | growth | check")
      ->required()
      ->check(CLI::IsMember({"genus", "area", "systole", "ratio", "growth", "check"}));
  auto* mesh_opt = surface->add_option("--mesh", s.mesh_path, "Mesh JSON file")->check(CLI::ExistingFile);
  auto* torus_opt = surface->add_option("--torus", s.torus, "Flat torus u1,u2,v1,v2,n")->delimiter(',')->expected(5);
  auto* polygon_opt = surface->add_option("--polygon", s.polygon, "Standard genus-g polygon complex (growth only)");
  mesh_opt->excludes(torus_opt, polygon_opt);
  torus_opt->excludes(polygon_opt);
  surface->add_option("--Tmax", s.tmax, "Largest loop-length threshold")->capture_default_str();
  surface->add_option("--steps", s.steps, "Number of evenly spaced thresholds")->capture_default_str();
  surface->add_option("--basepoint", s.basepoint, "Basepoint vertex")->capture_default_str();
  surface->add_option("--max-classes", s.caps.max_classes, "Loop-class cap before a resource error")
      ->capture_default_str();
  surface->add_option("--max-states", s.caps.max_states, "Cover-state cap before a resource error")
      ->capture_default_str();
  surface->add_flag("--heuristic", s.heuristic, "Allow the non-exact systole search past the cover limit");
  surface->add_flag("--entropy", s.entropy, "check: also estimate entropy and compare with Katok");

  auto* verify = app.add_subcommand("verify", "Replay the numeric claims");
  verify->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (*surface && !*mesh_opt && !*torus_opt && !*polygon_opt) {
      throw CLI::RequiredError("one of --mesh, --torus or --polygon");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "systolab: usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  Format f = Format::Table;
  if (as_json || format_name == "json") f = Format::Json;
  if (as_csv || format_name == "csv") f = Format::Csv;
  if (as_table) f = Format::Table;

  try {
    if (*bounds) {
      emit(eval_bound(b), f, out);
    } else if (*optimize) {
      OptimizationResult r;
      if (target == "thm12") {
        HeightSearchOptions o;
        o.threads = threads;
        r = optimize_height_bound(opt_delta, budget > 0 ? budget : 200'000, seed, o);
      } else {
        r = optimize_injectivity_bound(budget > 0 ? budget : 10'000, seed);
      }
      emit(to_json(r), f, out);
    } else if (*surface) {
      return run_surface(s, f, out);
    } else if (*verify) {
      const auto claims = run_all_claims();
      emit_claims(claims, f, out);
      return all_passed(claims) ? kExitOk : kExitClaimFailure;
    }
  } catch (const ResourceError& e) {
    err << "systolab: resource error: " << e.what() << " (" << e.progress() << ")\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "systolab: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitOk;
}

}  // namespace systole
