#pragma once

#include "impact/pdas_solver.hpp"

namespace testing {

// One triangle hanging from a clamped top edge (nodes 0, 2) with its lower
// vertex (node 1) pressed into the foundation. By symmetry only the vertical
// displacement of node 1 moves, which turns a step into a scalar equation.
struct Surrogate {
  impact::Mesh2D mesh;
  impact::SvkParams material{100.0, 0.3};
  double density = 1.0;
  double tip_height = -0.01;  // initial vertex position relative to the foundation

  Surrogate() {
    using impact::BoundaryTag;
    using impact::Vec2;
    mesh.nodes = {Vec2(-1, 1), Vec2(0, tip_height), Vec2(1, 1)};
    mesh.triangles = {{0, 1, 2}};
    mesh.boundary_edges = {{{0, 1}, BoundaryTag::Gamma3},
                           {{1, 2}, BoundaryTag::Gamma3},
                           {{2, 0}, BoundaryTag::Gamma1}};
    mesh.update_contact_nodes();
  }
};

}  // namespace testing
