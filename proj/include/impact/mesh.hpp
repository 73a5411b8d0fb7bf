#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "impact/types.hpp"

namespace impact {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Boundary region tags: Gamma1 (Dirichlet), Gamma2 (traction), Gamma3 (potential contact).
enum class BoundaryTag { Gamma1, Gamma2, Gamma3 };

const char* to_string(BoundaryTag tag);

struct BoundaryEdge {
  std::array<int, 2> nodes;
  BoundaryTag tag;
};

/// Linear triangle mesh with tagged boundary edges.
///
/// Triangles are counter-clockwise. contact_nodes lists every node incident
/// to a Gamma3 edge, in increasing index order.
struct Mesh2D {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<int> contact_nodes;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_dofs() const { return 2 * num_nodes(); }

  double signed_area(int triangle) const;
  double total_area() const;
  /// Rebuilds contact_nodes from the Gamma3 edges.
  void update_contact_nodes();
  /// Rigid translation of every node.
  void translate(const Vec2& shift);
};

struct BoundaryWeight {
  int node;
  double weight;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Structured polar triangulation of a disk; the whole boundary is Gamma3.
Mesh2D build_disk_mesh(const Vec2& center, double radius, double target_h);

/// Structured polar triangulation of an annulus; outer circle Gamma3, inner circle Gamma2.
Mesh2D build_annulus_mesh(const Vec2& center, double r_inner, double r_outer, double target_h);

ValidationReport validate(const Mesh2D& mesh);

/// Lumped boundary measure of each contact node: half the summed length of
/// its incident Gamma3 edges. Order follows mesh.contact_nodes.
std::vector<BoundaryWeight> boundary_weights(const Mesh2D& mesh);

/// Legacy VTK ASCII UNSTRUCTURED_GRID export of the reference mesh.
void write_vtk(const Mesh2D& mesh, std::ostream& out);

}  // namespace impact
