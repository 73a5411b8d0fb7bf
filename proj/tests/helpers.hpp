#pragma once

#include <random>

#include "impact/mesh.hpp"
#include "impact/types.hpp"

namespace testing {

using impact::Mat2;
using impact::Vec2;

// Unit right triangle, fully tagged Gamma3.
inline impact::Mesh2D unit_triangle() {
  impact::Mesh2D m;
  m.nodes = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  m.triangles = {{0, 1, 2}};
  m.boundary_edges = {{{0, 1}, impact::BoundaryTag::Gamma3},
                      {{1, 2}, impact::BoundaryTag::Gamma3},
                      {{2, 0}, impact::BoundaryTag::Gamma3}};
  m.update_contact_nodes();
  return m;
}

// nx by ny grid of squares split into triangles over [x0, x0+w] x [y0, y0+h].
// Bottom edge Gamma3, top edge tagged `top`, sides Gamma2.
inline impact::Mesh2D grid_mesh(int nx, int ny, double w = 1.0, double h = 1.0, Vec2 origin = Vec2::Zero(),
                                impact::BoundaryTag top = impact::BoundaryTag::Gamma2) {
  impact::Mesh2D m;
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.nodes.push_back(origin + Vec2(w * i / nx, h * j / ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  using impact::BoundaryTag;
  for (int i = 0; i < nx; ++i) {
    m.boundary_edges.push_back({{id(i, 0), id(i + 1, 0)}, BoundaryTag::Gamma3});
    m.boundary_edges.push_back({{id(i + 1, ny), id(i, ny)}, top});
  }
  for (int j = 0; j < ny; ++j) {
    m.boundary_edges.push_back({{id(nx, j), id(nx, j + 1)}, BoundaryTag::Gamma2});
    m.boundary_edges.push_back({{id(0, j + 1), id(0, j)}, BoundaryTag::Gamma2});
  }
  m.update_contact_nodes();
  return m;
}

// Deformation gradient with determinant in a moderate range.
inline Mat2 random_admissible_F(std::mt19937_64& rng, double spread = 0.3) {
  std::uniform_real_distribution<double> d(-spread, spread);
  for (;;) {
    Mat2 F = Mat2::Identity();
    for (int i = 0; i < 4; ++i) F(i / 2, i % 2) += d(rng);
    if (F.determinant() > 0.3) return F;
  }
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testing
