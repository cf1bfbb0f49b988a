#ifndef POLYHEIS_MESH_HPP
#define POLYHEIS_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "polyheis/sphere.hpp"

namespace polyheis {

// Triangulated unit-sphere surface with per-panel face groups. Face indices
// are 0-based into `vertices`; groups carry contiguous face ranges.
struct SphereMesh {
  struct Group {
    std::string name;      // panel_<i>_<j>_<side>
    std::string material;  // MTL material name
    std::array<double, 3> color{};
    std::size_t face_begin = 0;
    std::size_t face_count = 0;
  };

  std::vector<HeisPoint> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Group> groups;

  double z_min = 0.0;
  double z_max = 0.0;
};

// Samples every ceiling/basement panel on a samples x samples (r,s) grid and
// every wall on a matching strip; colors are keyed to the Pansu covector at
// the panel midpoint. samples >= 2.
SphereMesh sphere_mesh(const PolygonNormData& g, int samples);

// Wavefront OBJ / MTL serializations (12 significant digits, deterministic).
std::string to_obj(const SphereMesh& mesh, const std::string& mtl_filename);
std::string to_mtl(const SphereMesh& mesh);

}  // namespace polyheis

#endif  // POLYHEIS_MESH_HPP
