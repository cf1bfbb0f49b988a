#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyheis/blowup.hpp"
#include "polyheis/distance.hpp"
#include "polyheis/horofunction.hpp"
#include "polyheis/io.hpp"
#include "polyheis/mesh.hpp"

using nlohmann::json;
using namespace polyheis;

namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error("BadFlagValue", "cannot parse number list '" + text + "'");
    }
  }
  return out;
}

HeisPoint parse_point(const std::string& text) {
  const auto v = parse_numbers(text);
  if (v.size() != 3) throw Error("BadFlagValue", "--point expects x,y,z");
  return {v[0], v[1], v[2]};
}

GridWindow parse_grid(const std::string& text, const std::vector<double>& z_slices) {
  const auto v = parse_numbers(text);
  if (v.size() != 2 || v[0] <= 0.0 || v[1] <= 0.0 || v[1] >= v[0]) {
    throw Error("BadFlagValue", "--grid expects R,spacing with 0 < spacing < R");
  }
  GridWindow g;
  g.R = v[0];
  g.spacing = v[1];
  g.z_slices = z_slices;
  return g;
}

std::vector<double> parse_eps_schedule(const std::string& text) {
  const auto v = parse_numbers(text);
  if (v.size() != 2 || v[0] > v[1]) {
    throw Error("BadFlagValue", "--eps-schedule expects nmin,nmax (eps_n = 2^-n)");
  }
  std::vector<double> eps;
  for (int n = static_cast<int>(v[0]); n <= static_cast<int>(v[1]); ++n) {
    eps.push_back(std::ldexp(1.0, -n));
  }
  return eps;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

TwoPieceFamily parse_family(const std::string& name) {
  if (name == "psi_vee") return TwoPieceFamily::PsiVee;
  if (name == "psi_wedge") return TwoPieceFamily::PsiWedge;
  if (name == "xi_vee") return TwoPieceFamily::XiVee;
  if (name == "xi_wedge") return TwoPieceFamily::XiWedge;
  throw Error("BadFlagValue", "unknown family '" + name + "'");
}

// ---- horo atlas -----------------------------------------------------------

std::string atlas_json(const PolygonNormData& g) {
  json charts = json::array();
  const std::vector<double> s_grid = {0.25, 0.5, 0.75, 1.0};
  const std::vector<double> a_grid = {-1.0, 0.0, 1.0};
  for (int i = 0; i < g.n(); ++i) {
    for (const std::string fname : {"psi_vee", "psi_wedge", "xi_vee", "xi_wedge"}) {
      const TwoPieceFamily fam = parse_family(fname);
      json members = json::array();
      for (double s : s_grid) {
        for (double a : a_grid) {
          const Horofunction h = Horofunction::two_piece(g, fam, i, s, a);
          json rec;
          rec["family"] = fname;
          rec["i"] = i;
          rec["s"] = s;
          rec["a"] = a;
          rec["canonical"] = orbit_class(h, g);
          members.push_back(rec);
        }
      }
      json chart;
      chart["family"] = fname;
      chart["i"] = i;
      chart["members"] = members;
      charts.push_back(chart);
    }
  }
  json j;
  j["num_edges"] = g.n();
  j["charts"] = charts;
  return j.dump(2) + "\n";
}

std::string atlas_svg(const PolygonNormData& g) {
  // One glued-sphere chart per index i: a square [0,1]^2 in (s, a-compressed)
  // coordinates for the psi family on top and xi below, sharing the meridian.
  const int n = g.n();
  const int cell = 110, pad = 20;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
     << pad * 2 + n * (cell + pad) << "\" height=\"" << pad * 3 + 2 * cell
     << "\">\n";
  for (int i = 0; i < n; ++i) {
    const int x0 = pad + i * (cell + pad);
    for (int row = 0; row < 2; ++row) {
      const int y0 = pad + row * (cell + pad / 2);
      // Chart square with a color key taken from the supporting covector.
      const Covector key = row == 0 ? g.alpha(i - 1) : g.alpha(i);
      double scale = 1.0;
      for (int k = 0; k < n; ++k) {
        scale = std::max({scale, std::abs(g.alpha(k).a), std::abs(g.alpha(k).b)});
      }
      const int rr = static_cast<int>(127 + 114 * key.a / scale);
      const int gg = static_cast<int>(127 + 114 * key.b / scale);
      os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"rgb(" << rr << ',' << gg
         << ",140)\" stroke=\"black\"/>\n";
      // Meridian s = 1 (psi) glued to s = 0 (xi).
      const int mx = x0 + (row == 0 ? cell : 0);
      os << "<line x1=\"" << mx << "\" y1=\"" << y0 << "\" x2=\"" << mx
         << "\" y2=\"" << y0 + cell << "\" stroke=\"white\" stroke-width=\"3\"/>\n";
      os << "<text x=\"" << x0 + 6 << "\" y=\"" << y0 + 16
         << "\" font-size=\"12\">" << (row == 0 ? "psi_" : "xi_") << i
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

// ---- verify suites --------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

SuiteResult verify_eikonal(const PolygonNormData& g, int samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const HeisPoint p = sample_smooth_sphere_point(g, rng, 0.02);
    worst = std::max(worst, std::abs(dual_gauge(g, pansu_derivative(g, p)) - 1.0));
  }
  return {"eikonal", worst <= 1e-9, "max |dual_gauge - 1| = " + format12(worst)};
}

SuiteResult verify_pansu(const PolygonNormData& g, int samples, unsigned long long seed,
                         std::string* csv_out) {
  const std::vector<double> ladder = {4e-4, 2e-4, 1e-4};
  const PansuAuditResult audit = pansu_audit(g, samples, ladder, seed);
  if (csv_out) *csv_out = audit.csv;
  const bool pass = audit.ladder_decreasing && audit.max_err.back() <= 1e-3;
  return {"pansu", pass,
          "max FD error at eps=1e-4: " + format12(audit.max_err.back()) +
              (audit.ladder_decreasing ? ", ladder decreasing" : ", ladder NOT decreasing")};
}

SuiteResult verify_vertical(const PolygonNormData& g, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.7, 0.7);
  GridWindow window;
  window.R = 2.0;
  window.spacing = 0.5;
  window.z_slices = {-0.5, 0.0, 0.5};
  const std::vector<HeisPoint> probes = window.points();
  bool pass = true;
  double worst_final = 0.0;
  for (int k = 0; k < 3; ++k) {
    const PlanarVector w{unif(rng), unif(rng)};
    const auto rows = vertical_sequence_deviation(g, w, {1e2, 1e3, 1e4}, probes);
    worst_final = std::max(worst_final, rows.back().max_dev);
    if (rows.back().max_dev > 1e-2) pass = false;
    for (std::size_t t = 0; t + 1 < rows.size(); ++t) {
      if (rows[t + 1].max_dev > rows[t].max_dev + 1e-3) pass = false;
    }
  }
  return {"vertical", pass, "worst final deviation = " + format12(worst_final)};
}

SuiteResult verify_blowup(const PolygonNormData& g, const std::vector<double>& eps,
                          GridWindow window) {
  window.z_slices = {0.0};
  // Vertex blow-up with crease through the origin: an economical end-to-end
  // exercise of the sequence builder plus the empirical harness.
  const HeisPoint vertex(g.vertex(0).x, g.vertex(0).y, 0.0);
  const BlowUpFamily fam = blow_up_family_at(g, vertex);
  const Horofunction target = family_member(g, fam, 0.0);
  SequenceSpec seq = build_blowup_sequence(g, vertex, target);
  if (!eps.empty()) seq.eps_schedule = eps;
  const EmpiricalResult res = empirical_horofunction(g, seq, window, target);
  const double fin = res.sup_dev.back();
  bool trend = true;
  for (std::size_t t = 0; t + 1 < res.sup_dev.size(); ++t) {
    if (res.sup_dev[t + 1] > res.sup_dev[t] + 1e-3) trend = false;
  }
  return {"blowup", fin <= 1e-2 && trend,
          "vertex family C=0: final sup-deviation = " + format12(fin)};
}

SuiteResult verify_action(const PolygonNormData& g, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  std::uniform_real_distribution<double> sgrid(0.1, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const TwoPieceFamily fam = static_cast<TwoPieceFamily>(trial % 4);
    Horofunction h = Horofunction::two_piece(g, fam, trial % g.n(), sgrid(rng), unif(rng));
    const HeisPoint g1(unif(rng), unif(rng), 0.0);
    const HeisPoint g2(unif(rng), unif(rng), 0.0);
    const Horofunction lhs = act(g1, act(g2, h, g), g);
    const Horofunction rhs = act(multiply(g1, g2), h, g);
    for (int ix = -2; ix <= 2; ++ix) {
      for (int iy = -2; iy <= 2; ++iy) {
        const HeisPoint x(ix, iy, 0.0);
        worst = std::max(worst, std::abs(eval(lhs, x, g) - eval(rhs, x, g)));
      }
    }
  }
  return {"action", worst <= 1e-9, "max composition residual = " + format12(worst)};
}

int run_suites(const PolygonNormData& g, const std::string& which, int samples,
               unsigned long long seed, const std::vector<double>& eps,
               const GridWindow& window, const std::string& out_csv,
               const std::string& report_path) {
  std::vector<SuiteResult> results;
  std::string pansu_csv;
  if (which == "eikonal" || which == "all") results.push_back(verify_eikonal(g, samples, seed));
  if (which == "pansu" || which == "all") {
    results.push_back(verify_pansu(g, std::min(samples, 100), seed, &pansu_csv));
  }
  if (which == "vertical" || which == "all") results.push_back(verify_vertical(g, seed));
  if (which == "blowup" || which == "all") results.push_back(verify_blowup(g, eps, window));
  if (which == "action" || which == "all") results.push_back(verify_action(g, seed));
  if (results.empty()) throw Error("BadFlagValue", "unknown suite '" + which + "'");

  if (!out_csv.empty() && !pansu_csv.empty()) write_text_file(out_csv, pansu_csv);

  bool all_pass = true;
  json jreport;
  json jsuites = json::array();
  for (const SuiteResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
    json js;
    js["suite"] = r.name;
    js["pass"] = r.pass;
    js["detail"] = r.detail;
    jsuites.push_back(js);
  }
  jreport["suites"] = jsuites;
  jreport["pass"] = all_pass;
  if (!report_path.empty()) write_text_file(report_path, jreport.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygonal sub-Finsler geometry on the Heisenberg group"};
  app.require_subcommand(1);

  std::string polygon_path, point_str, out_path, report_path;
  std::string grid_str = "3,0.1", eps_str = "4,16";
  int samples = 32;
  unsigned long long seed = 42;

  app.add_option("--polygon", polygon_path, "Geometry JSON file")->required();
  app.add_option("--seed", seed, "Random seed");

  auto* geom = app.add_subcommand("geom", "Validate geometry and emit a JSON report");
  geom->add_option("--report", report_path, "Report output path (stdout if omitted)")
      ->expected(0, 1);

  auto* dist = app.add_subcommand("dist", "Distance from the identity (d_e)");
  dist->add_option("--point", point_str, "Query point x,y,z")->required();
  std::string path_csv;
  dist->add_option("--path", path_csv, "Write the lifted geodesic as CSV");

  auto* meshcmd = app.add_subcommand("mesh", "Export the unit sphere as OBJ+MTL");
  meshcmd->add_option("--samples", samples, "Samples per panel (>= 2)");
  meshcmd->add_option("--out", out_path, "Output base path (base.obj, base.mtl)")->required();

  auto* horo = app.add_subcommand("horo", "Horofunction catalogue operations");
  horo->require_subcommand(1);
  auto* horo_eval = horo->add_subcommand("eval", "Evaluate a two-piece member");
  std::string family_str = "psi_vee";
  int h_index = 0;
  double h_s = 1.0, h_a = 0.0;
  horo_eval->add_option("--family", family_str, "psi_vee|psi_wedge|xi_vee|xi_wedge");
  horo_eval->add_option("--index", h_index, "Family index i");
  horo_eval->add_option("--s", h_s, "Interpolation parameter");
  horo_eval->add_option("--a", h_a, "Crease parameter");
  horo_eval->add_option("--point", point_str, "Evaluation point x,y,z")->required();
  auto* horo_atlas = horo->add_subcommand("atlas", "Emit the boundary atlas (SVG + JSON)");
  horo_atlas->add_option("--out", out_path, "SVG output path");
  horo_atlas->add_option("--report", report_path, "JSON output path");
  auto* horo_orbit = horo->add_subcommand("orbit", "Act on a member and report its orbit");
  std::string g_el_str = "0,0,0";
  horo_orbit->add_option("--family", family_str, "psi_vee|psi_wedge|xi_vee|xi_wedge|norm");
  horo_orbit->add_option("--index", h_index, "Family index i");
  horo_orbit->add_option("--s", h_s, "Interpolation parameter");
  horo_orbit->add_option("--a", h_a, "Crease parameter (or w = a,s for norm)");
  horo_orbit->add_option("--g", g_el_str, "Group element x,y,z");

  auto* verify = app.add_subcommand("verify", "Numerical verification suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "pansu|vertical|blowup|eikonal|action|all");
  verify->add_option("--samples", samples, "Sample count for sampled suites");
  verify->add_option("--grid", grid_str, "Window R,spacing");
  verify->add_option("--eps-schedule", eps_str, "nmin,nmax (eps_n = 2^-n)");
  verify->add_option("--out", out_path, "CSV output path");
  verify->add_option("--report", report_path, "JSON summary path");

  CLI11_PARSE(app, argc, argv);

  try {
    const PolygonNormData g = build_geometry(load_polygon_file(polygon_path));

    if (geom->parsed()) {
      emit(geometry_report_json(g), report_path);
      return 0;
    }
    if (dist->parsed()) {
      const HeisPoint p = parse_point(point_str);
      const double d = d_e(g, p);
      std::cout << format12(d) << "\n";
      if (!path_csv.empty()) write_text_file(path_csv, geodesic_csv(geodesic(g, p)));
      return 0;
    }
    if (meshcmd->parsed()) {
      const SphereMesh mesh = sphere_mesh(g, samples);
      const std::string mtl_name = out_path + ".mtl";
      write_text_file(out_path + ".obj", to_obj(mesh, mtl_name));
      write_text_file(mtl_name, to_mtl(mesh));
      std::cout << "wrote " << out_path << ".obj (" << mesh.vertices.size()
                << " vertices, " << mesh.faces.size() << " faces), z range ["
                << format12(mesh.z_min) << ", " << format12(mesh.z_max) << "]\n";
      return 0;
    }
    if (horo->parsed()) {
      if (horo_eval->parsed()) {
        const Horofunction h =
            Horofunction::two_piece(g, parse_family(family_str), h_index, h_s, h_a);
        std::cout << format12(eval(h, parse_point(point_str), g)) << "\n";
        return 0;
      }
      if (horo_atlas->parsed()) {
        emit(atlas_svg(g), out_path);
        if (!report_path.empty()) write_text_file(report_path, atlas_json(g));
        return 0;
      }
      if (horo_orbit->parsed()) {
        Horofunction h = family_str == "norm"
                             ? Horofunction::norm_type({h_a, h_s})
                             : Horofunction::two_piece(g, parse_family(family_str),
                                                       h_index, h_s, h_a);
        const Horofunction moved = act(parse_point(g_el_str), h, g);
        std::cout << "orbit " << orbit_class(h, g) << " -> member "
                  << orbit_class(moved, g)
                  << (bounded_difference(h, moved, g) ? " (same reduced class)\n"
                                                      : " (class changed)\n");
        return 0;
      }
    }
    if (verify->parsed()) {
      return run_suites(g, suite, samples, seed, parse_eps_schedule(eps_str),
                        parse_grid(grid_str, {0.0}), out_path, report_path);
    }
  } catch (const Error& e) {
    std::cerr << "error " << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
