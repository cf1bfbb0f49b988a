#ifndef POLYHEIS_IO_HPP
#define POLYHEIS_IO_HPP

#include <string>
#include <vector>

#include "polyheis/distance.hpp"
#include "polyheis/polygon.hpp"

namespace polyheis {

// Formats a double with 12 significant digits (deterministic across runs).
std::string format12(double x);

// Parses {"vertices": [[x, y], ...]} from a JSON string / file.
// Throws Error(BadGeometryFile) on malformed input.
std::vector<PlanarVector> parse_polygon_json(const std::string& json_text);
std::vector<PlanarVector> load_polygon_file(const std::string& path);

// Full geometry report (vertices, alphas, isoperimetrix data, invariants).
std::string geometry_report_json(const PolygonNormData& g);

// CSV of a lifted geodesic: header k,x,y,z then one row per lifted point.
std::string geodesic_csv(const GeodesicPath& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace polyheis

#endif  // POLYHEIS_IO_HPP
