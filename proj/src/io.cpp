#include "polyheis/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polyheis {

using nlohmann::json;

std::string format12(double x) {
  std::ostringstream os;
  os.precision(12);
  if (x == 0.0) x = 0.0;  // normalize -0
  os << x;
  return os.str();
}

std::vector<PlanarVector> parse_polygon_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error("BadGeometryFile", std::string("JSON parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error("BadGeometryFile", "expected an object with a \"vertices\" array");
  }
  std::vector<PlanarVector> verts;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      throw Error("BadGeometryFile", "each vertex must be a [x, y] number pair");
    }
    verts.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return verts;
}

std::vector<PlanarVector> load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("BadGeometryFile", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_polygon_json(buf.str());
}

namespace {

json vec_json(const PlanarVector& v) { return json::array({v.x, v.y}); }
json cov_json(const Covector& c) { return json::array({c.a, c.b}); }

}  // namespace

std::string geometry_report_json(const PolygonNormData& g) {
  json j;
  j["num_vertices"] = g.n();
  json verts = json::array(), edges = json::array(), alphas = json::array();
  json iso = json::array(), sigmas = json::array(), snorms = json::array();
  for (int k = 0; k < g.n(); ++k) {
    verts.push_back(vec_json(g.vertex(k)));
    edges.push_back(vec_json(g.edge(k)));
    alphas.push_back(cov_json(g.alpha(k)));
    iso.push_back(vec_json(g.iso_vertex(k)));
    sigmas.push_back(vec_json(g.sigma(k)));
    snorms.push_back(g.sigma_norm(k));
  }
  j["vertices"] = verts;
  j["edges"] = edges;
  j["alphas"] = alphas;
  j["isoperimetrix_vertices"] = iso;
  j["sigmas"] = sigmas;
  j["sigma_norms"] = snorms;
  j["iso_area"] = g.iso_area;
  j["iso_perimeter"] = g.iso_perimeter;
  j["unit_iso_area"] = g.unit_iso_area;
  return j.dump(2) + "\n";
}

std::string geodesic_csv(const GeodesicPath& path) {
  std::ostringstream os;
  os << "k,x,y,z\n";
  for (std::size_t k = 0; k < path.lifted.size(); ++k) {
    os << k << ',' << format12(path.lifted[k].x) << ',' << format12(path.lifted[k].y)
       << ',' << format12(path.lifted[k].z) << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw Error("WriteFailed", "cannot open " + path + " for writing");
  out << contents;
}

}  // namespace polyheis
