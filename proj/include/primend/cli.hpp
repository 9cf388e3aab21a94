#pragma once

// Command-line front end. run_command() parses an argument vector (without
// the program name), runs one subcommand and writes a JSON run report.
//
// Exit codes: 0 success, 2 bad input (parse or validation), 3 tolerance
// unreachable, 4 boundary is a simple closed curve.

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "primend/cylinder.hpp"
#include "primend/io.hpp"
#include "primend/random.hpp"

#ifndef PRIMEND_VERSION
#define PRIMEND_VERSION "0.0.0"
#endif

namespace primend::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitTolerance = 3;
inline constexpr int kExitSimpleCurve = 4;

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ToleranceUnreachable: return kExitTolerance;
    case ErrorCode::SimpleClosedCurveBoundary: return kExitSimpleCurve;
    default: return kExitInput;
  }
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return s.str();
}

/// Everything a command reads and produces.
struct RunReport {
  json command = json::array();
  json inputs = json::object();      ///< path -> "sha256:<hex>"
  json thresholds = json::object();
  json results = json::object();
  json warnings = json::array();
  std::string version = PRIMEND_VERSION;

  json to_json() const {
    return {{"command", command}, {"inputs", inputs},     {"thresholds", thresholds},
            {"results", results}, {"warnings", warnings}, {"version", version}};
  }

  /// Reads a JSON input file and records its digest.
  json load(const std::string& path) {
    const std::string text = io::read_text_file(path);
    inputs[path] = "sha256:" + sha256_hex(text);
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
  }
};

namespace detail {

inline json exact_or_null(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

inline json rot_json(const RotResult& r) {
  json j{{"value", r.value}, {"exact", exact_or_null(r.exact)}, {"orientation", to_string(r.orientation)}};
  if (r.orientation == Orientation::Reversing) j["fixed_points"] = r.fixed_points;
  return j;
}

inline Orientation orientation_from_string(const std::string& s) {
  if (s == "preserving") return Orientation::Preserving;
  if (s == "reversing") return Orientation::Reversing;
  throw Error(ErrorCode::ParseError, "unknown orientation '" + s + "'");
}

inline json diagnostic_rows_json(const std::vector<DiagnosticRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"resolution", r.resolution},
                   {"window_plane_units", r.window_plane},
                   {"oscillation", r.oscillation},
                   {"region_cells", r.region_cells},
                   {"window_cells", r.window_cells}});
  return out;
}

inline void write_csv(const std::string& path, const std::vector<DiagnosticRow>& rows) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  f << "resolution,window_plane_units,oscillation\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", r.resolution, r.window_plane, r.oscillation);
    f << buf;
  }
}

inline std::string sibling_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

// Builds the boundary-feature bijection and cylinder metadata shared by
// rot-cyl and the non-locally-connected branch of rot.
struct NonLcInput {
  ExactArcFamily family;
  ArcBijection h;
  CylinderMap meta;
};

inline NonLcInput non_lc_input(RunReport& rep, const std::string& family_path, const std::string& bijection_path,
                               const std::string& variant, const std::string& plane, const std::string& ends) {
  auto family = io::family_from_json(rep.load(family_path));
  auto action = io::label_map_from_json(rep.load(bijection_path));
  auto h = ArcBijection::from_labels(family, action);
  if (!is_order_preserving(family, h)) {
    throw Error(ErrorCode::OrderViolation, "bijection is not order preserving on the family");
  }
  Orientation po = Orientation::Preserving;
  if (plane == "auto") {
    if (family.size() >= 3) po = bijection_orientation(family, h);
  } else {
    po = orientation_from_string(plane);
  }
  CylinderMap base = CylinderMap::identity();
  if (variant == "product")
    base = CylinderMap::product_with(po);
  else if (variant == "shear")
    base = CylinderMap::shear({0, 1});
  else if (variant == "end-flip")
    base = CylinderMap::end_flip();
  else
    throw Error(ErrorCode::ParseError, "unknown variant '" + variant + "'");
  if (variant != "product" && po == Orientation::Reversing) {
    base = CylinderMap::compose({CylinderMap::product_with(po), base});
  }
  if (!ends.empty() && ends_from_string(ends) != base.ends()) {
    base = CylinderMap::compose({CylinderMap::end_flip(), base});
  }
  rep.thresholds["variant"] = variant;
  ArcBijection induced = induced_arc_bijection(family, base, action);
  return {std::move(family), std::move(induced), std::move(base)};
}

inline json cylinder_rot_json(const CylinderRot& r) {
  return {{"rot", r.rot.value},       {"exact", exact_or_null(r.rot.exact)}, {"features", r.features},
          {"edge_rule", r.edge_rule}, {"orientation3", to_string(r.orientation3)}, {"ends", to_string(r.ends)}};
}

}  // namespace detail

/// Runs one command. The report goes to the --out file when given (except
/// for `demo`, where --out names the CSV), else to `out`. Diagnostics go to
/// `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation numbers of circle maps, arc-family bijections and cylinder maps.", "primend"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", PRIMEND_VERSION);

  std::string out_path;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  app.add_option("--out", out_path, "write the report (or CSV for demo) to this file");
  app.add_option("--tol", tol, "tolerance for rotation numbers")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for generated inputs");

  // rotnum
  auto* rotnum = app.add_subcommand("rotnum", "rotation number of a circle map");
  std::string map_path;
  int random_pieces = 0;
  std::int64_t n_iter = 0;
  double x0 = 0.0;
  auto* map_opt = rotnum->add_option("--map", map_path, "map JSON file");
  auto* rand_opt = rotnum->add_option("--random", random_pieces, "use a seeded random map with this many pieces");
  map_opt->excludes(rand_opt);
  rotnum->add_option("--n", n_iter, "orbit length for the reported interval")->check(CLI::PositiveNumber);
  rotnum->add_option("--x0", x0, "orbit start point");

  // order-check
  auto* order = app.add_subcommand("order-check", "check that a bijection of an arc family preserves circular order");
  std::string family_path, bijection_path;
  bool want_rot = false;
  order->add_option("--family", family_path, "family JSON file")->required();
  order->add_option("--bijection", bijection_path, "bijection JSON file")->required();
  order->add_flag("--rot", want_rot, "also compute the rotation number");

  // domain analyze
  auto* domain = app.add_subcommand("domain", "planar domain tools");
  domain->require_subcommand(1);
  auto* analyze = domain->add_subcommand("analyze", "boundary walk, cutpoints and features of a domain");
  std::string in_path;
  double scale_cells = 2.0;
  analyze->add_option("--in", in_path, "polygon or grid JSON file")->required();
  analyze->add_option("--scale", scale_cells, "cluster scale in cells (grid domains)")->check(CLI::PositiveNumber);

  // rot-lc
  auto* rotlc = app.add_subcommand("rot-lc", "rotation number over a slit domain");
  std::string domain_path, auto_path, ends = "fixes";
  rotlc->add_option("--domain", domain_path, "polygon JSON file")->required();
  rotlc->add_option("--auto", auto_path, "automorphism JSON file")->required();
  rotlc->add_option("--ends", ends, "fixes or swaps");

  // rot-cyl
  auto* rotcyl = app.add_subcommand("rot-cyl", "rotation number from boundary features of a cylinder map");
  std::string variant = "product", plane = "auto", cyl_ends;
  rotcyl->add_option("--family", family_path, "family JSON file")->required();
  rotcyl->add_option("--bijection", bijection_path, "bijection JSON file")->required();
  rotcyl->add_option("--variant", variant, "product, shear or end-flip");
  rotcyl->add_option("--plane-orientation", plane, "auto, preserving or reversing");
  rotcyl->add_option("--ends", cyl_ends, "fixes or swaps (overrides the variant)");

  // rot
  auto* rotany = app.add_subcommand("rot", "rotation number; picks the domain or the feature-family path");
  rotany->add_option("--domain", domain_path, "polygon JSON file");
  rotany->add_option("--auto", auto_path, "automorphism JSON file");
  rotany->add_option("--family", family_path, "family JSON file");
  rotany->add_option("--bijection", bijection_path, "bijection JSON file");
  rotany->add_option("--variant", variant, "product, shear or end-flip (family path)");
  rotany->add_option("--plane-orientation", plane, "auto, preserving or reversing (family path)");
  rotany->add_option("--ends", cyl_ends, "fixes or swaps");

  // demo warsaw
  auto* demo = app.add_subcommand("demo", "canned sweeps");
  demo->require_subcommand(1);
  auto* warsaw = demo->add_subcommand("warsaw", "oscillation of a shear near the limit bar, against the square");
  std::vector<int> resolutions{32, 64, 128};
  double window = 4.0;
  std::string demo_variant = "shear", baseline_out;
  warsaw->add_option("--resolutions", resolutions, "grid resolutions")->delimiter(',');
  warsaw->add_option("--window", window, "window radius in cells")->check(CLI::PositiveNumber);
  warsaw->add_option("--variant", demo_variant, "shear or product");
  warsaw->add_option("--baseline-out", baseline_out, "CSV for the square sweep (default: <out>_square.csv)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  RunReport rep;
  rep.command = args;
  bool report_to_stdout = false;
  int code = kExitOk;
  try {
    if (*rotnum) {
      rep.thresholds["tol"] = tol;
      io::AnyMap m = PLMap::identity();
      if (*rand_opt) {
        m = random_pl_map(seed, random_pieces);
        rep.thresholds["seed"] = seed;
        rep.thresholds["random_pieces"] = random_pieces;
      } else if (*map_opt) {
        m = io::map_from_json(rep.load(map_path));
      } else {
        throw Error(ErrorCode::ParseError, "rotnum needs --map or --random");
      }
      std::visit(
          [&](const auto& g) {
            using T = std::decay_t<decltype(g.breakpoints()[0].x)>;
            const RotResult r = rot(g, tol);
            rep.results = detail::rot_json(r);
            rep.results["exact_search_exhausted"] = r.exact_search_exhausted;
            if (r.orientation == Orientation::Reversing) {
              rep.results["lo"] = nullptr;
              rep.results["hi"] = nullptr;
              return;
            }
            std::optional<RotInterval> iv = r.interval;
            if (n_iter > 0 || !iv) {
              const std::int64_t n = n_iter > 0 ? n_iter : static_cast<std::int64_t>(std::ceil(2.0 / tol));
              if (n > kIterationCap) throw Error(ErrorCode::ToleranceUnreachable, "orbit length exceeds the iteration cap");
              T start;
              if constexpr (is_exact_v<T>) start = to_rational(x0); else start = x0;
              iv = rot_interval(g, n, start);
              rep.thresholds["x0"] = x0;
            }
            rep.thresholds["n"] = iv->n;
            rep.results["lo"] = iv->lo;
            rep.results["hi"] = iv->hi;
          },
          m);
    } else if (*order) {
      auto family = io::family_from_json(rep.load(family_path));
      auto h = ArcBijection::from_labels(family, io::label_map_from_json(rep.load(bijection_path)));
      const bool ok = is_order_preserving(family, h);
      rep.results["members"] = family.size();
      rep.results["order_preserving"] = ok;
      rep.results["orientation"] = ok && family.size() >= 3 ? json(to_string(bijection_orientation(family, h))) : json(nullptr);
      if (want_rot) {
        rep.thresholds["tol"] = tol;
        if (ok) {
          const RotResult r = rot_of_bijection(family, h, tol);
          rep.results["rot"] = r.value;
          rep.results["exact"] = detail::exact_or_null(r.exact);
        } else {
          rep.results["rot"] = nullptr;
          rep.warnings.push_back("bijection is not order preserving: rotation number undefined");
        }
      }
    } else if (*analyze) {
      const json doc = rep.load(in_path);
      if (io::is_grid_json(doc)) {
        const GridDomain g = io::grid_from_json(doc);
        const double scale = scale_cells * g.cell_size();
        rep.thresholds["scale"] = scale;
        const GridWalk walk(g);
        const Clustering cl = boundary_clusters(g, scale);
        rep.results["kind"] = "grid";
        rep.results["cells"] = g.size();
        rep.results["walk_length"] = cl.walk_length;
        json clusters = json::array();
        for (std::size_t i = 0; i < cl.clusters.size(); ++i) {
          const auto& c = cl.clusters[i];
          const auto& arc = cl.family[i];
          json jc{{"label", c.label}, {"pinch", c.pinch}, {"first_edge", c.first_edge}, {"edge_count", c.edge_count}};
          jc["a"] = to_string(arc.a);
          if (!arc.trivial()) jc["b"] = to_string(arc.b);
          clusters.push_back(jc);
        }
        rep.results["clusters"] = clusters;
      } else {
        const PolygonalDomain d = io::domain_from_json(doc);
        const ValidationReport v = validate_polygon(d);
        if (!v.ok()) {
          json viol = json::array();
          for (const auto& x : v.violations) viol.push_back({{"code", std::string(to_string(x.code))}, {"message", x.message}});
          rep.results["violations"] = viol;
          throw Error(v.violations.front().code, v.violations.front().message);
        }
        const BoundaryWalk w = boundary_walk(d);
        const std::size_t L = w.length();
        rep.results["kind"] = "polygon";
        rep.results["walk_length"] = L;
        json walk = json::array();
        for (std::size_t i = 0; i < L; ++i) walk.push_back(w[i].vertex);
        rep.results["walk"] = walk;
        json mult = json::array();
        for (std::size_t u = 0; u < d.vertex_count(); ++u) mult.push_back(w.multiplicity(u));
        rep.results["multiplicities"] = mult;
        const CutpointSet c = cutpoint_set(w);
        json arcs = json::array();
        for (const auto& run : c.runs) {
          const std::size_t last = run.first + run.count - 1;
          const Rational from(Rational(run.first / 2, L));
          const Rational to(Rational(((last + 1) / 2) % L, L));
          arcs.push_back({{"from", to_string(Rational(from))},
                          {"to", to_string(Rational(to))},
                          {"from_closed", run.first % 2 == 0},
                          {"to_closed", last % 2 == 0}});
        }
        rep.results["b_arcs"] = arcs;
        json points = json::array();
        if (c.empty() || c.full()) {
          rep.warnings.push_back("simple closed curve: Rot undefined");
        } else {
          for (const auto& p : b_hat(c, w).points)
            points.push_back({{"label", p.label}, {"position", p.position}, {"vertex", p.vertex}, {"at", to_string(p.at)}});
        }
        rep.results["b_hat"] = points;
        rep.results["b_hat_size"] = points.size();
      }
    } else if (*rotlc) {
      rep.thresholds["tol"] = tol;
      const PolygonalDomain d = io::domain_from_json(rep.load(domain_path));
      require_valid(d);
      const auto a = io::automorphism_from_json(rep.load(auto_path));
      const LcRotResult r = rot_lc(d, a, ends_from_string(ends), tol);
      rep.results = {{"b_hat_size", r.b_hat_size},
                     {"rot", r.rot.value},
                     {"exact", detail::exact_or_null(r.rot.exact)},
                     {"orientation", to_string(r.plane_orientation)},
                     {"orientation3", to_string(r.orientation3)},
                     {"ends", to_string(r.ends)},
                     {"two_point_rule", r.two_point_rule}};
    } else if (*rotcyl) {
      rep.thresholds["tol"] = tol;
      auto in = detail::non_lc_input(rep, family_path, bijection_path, variant, plane, cyl_ends);
      rep.results = detail::cylinder_rot_json(rot_nonlc(in.family, in.h, in.meta, tol));
    } else if (*rotany) {
      rep.thresholds["tol"] = tol;
      if (!domain_path.empty()) {
        if (auto_path.empty()) throw Error(ErrorCode::ParseError, "rot with --domain needs --auto");
        const PolygonalDomain d = io::domain_from_json(rep.load(domain_path));
        require_valid(d);
        const auto a = io::automorphism_from_json(rep.load(auto_path));
        const LcRotResult r = rot_lc(d, a, ends_from_string(cyl_ends.empty() ? "fixes" : cyl_ends), tol);
        rep.results = {{"path", "locally-connected"},
                       {"rot", r.rot.value},
                       {"exact", detail::exact_or_null(r.rot.exact)},
                       {"features", r.b_hat_size},
                       {"orientation", to_string(r.plane_orientation)},
                       {"orientation3", to_string(r.orientation3)},
                       {"ends", to_string(r.ends)}};
      } else if (!family_path.empty()) {
        if (bijection_path.empty()) throw Error(ErrorCode::ParseError, "rot with --family needs --bijection");
        auto in = detail::non_lc_input(rep, family_path, bijection_path, variant, plane, cyl_ends);
        rep.results = detail::cylinder_rot_json(rot_nonlc(in.family, in.h, in.meta, tol));
        rep.results["path"] = "non-locally-connected";
        rep.results["orientation"] = to_string(in.meta.plane_orientation());
      } else {
        throw Error(ErrorCode::ParseError, "rot needs --domain and --auto, or --family and --bijection");
      }
    } else if (*warsaw) {
      report_to_stdout = true;
      CylinderMap h = CylinderMap::identity();
      if (demo_variant == "shear")
        h = CylinderMap::shear({0, 1});
      else if (demo_variant != "product")
        throw Error(ErrorCode::ParseError, "demo variant must be shear or product");
      rep.thresholds["window_cells"] = window;
      rep.thresholds["resolutions"] = resolutions;
      rep.thresholds["variant"] = demo_variant;
      const auto wr = equicontinuity_diagnostic("warsaw", resolutions, h, window);
      const auto sq = equicontinuity_diagnostic("square", resolutions, h, window);
      rep.results["warsaw"] = detail::diagnostic_rows_json(wr);
      rep.results["square"] = detail::diagnostic_rows_json(sq);
      if (!out_path.empty()) {
        const std::string base = baseline_out.empty() ? detail::sibling_path(out_path, "_square") : baseline_out;
        detail::write_csv(out_path, wr);
        detail::write_csv(base, sq);
        rep.results["csv"] = {{"warsaw", out_path}, {"square", base}};
      }
    }
  } catch (const Error& e) {
    code = exit_code_for(e.code());
    rep.results["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    code = kExitInput;
    rep.results["error"] = {{"code", "ParseError"}, {"message", e.what()}};
    err << "error: ParseError: " << e.what() << "\n";
  }

  for (const auto& w : rep.warnings) err << "warning: " << w.get<std::string>() << "\n";
  const std::string text = io::canonical(rep.to_json()) + "\n";
  if (out_path.empty() || report_to_stdout) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitInput;
    }
    f << text;
  }
  return code;
}

}  // namespace primend::cli
