#include "impact/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace impact {

namespace {

Vec2 polar(const Vec2& center, double r, double theta) {
  return center + r * Vec2(std::cos(theta), std::sin(theta));
}

std::array<int, 2> sorted_pair(int a, int b) { return a < b ? std::array{a, b} : std::array{b, a}; }

// Appends a triangle, flipping it to counter-clockwise if needed.
void add_ccw(Mesh2D& mesh, int a, int b, int c) {
  const Vec2& pa = mesh.nodes[a];
  const Vec2& pb = mesh.nodes[b];
  const Vec2& pc = mesh.nodes[c];
  const double cross = (pb - pa).x() * (pc - pa).y() - (pb - pa).y() * (pc - pa).x();
  if (cross < 0.0) std::swap(b, c);
  mesh.triangles.push_back({a, b, c});
}

// Closed loop through consecutive nodes first..first+count-1, counter-clockwise.
void add_loop(Mesh2D& mesh, int first, int count, BoundaryTag tag, bool reverse) {
  for (int j = 0; j < count; ++j) {
    int a = first + j;
    int b = first + (j + 1) % count;
    if (reverse) std::swap(a, b);
    mesh.boundary_edges.push_back({{a, b}, tag});
  }
}

}  // namespace

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Gamma1: return "Gamma1";
    case BoundaryTag::Gamma2: return "Gamma2";
    case BoundaryTag::Gamma3: return "Gamma3";
  }
  return "?";
}

double Mesh2D::signed_area(int t) const {
  const auto& tri = triangles[t];
  const Vec2 e1 = nodes[tri[1]] - nodes[tri[0]];
  const Vec2 e2 = nodes[tri[2]] - nodes[tri[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double Mesh2D::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < num_triangles(); ++t) sum += signed_area(t);
  return sum;
}

void Mesh2D::update_contact_nodes() {
  std::set<int> on_contact;
  for (const auto& e : boundary_edges) {
    if (e.tag == BoundaryTag::Gamma3) {
      on_contact.insert(e.nodes[0]);
      on_contact.insert(e.nodes[1]);
    }
  }
  contact_nodes.assign(on_contact.begin(), on_contact.end());
}

void Mesh2D::translate(const Vec2& shift) {
  for (auto& p : nodes) p += shift;
}

Mesh2D build_disk_mesh(const Vec2& center, double radius, double target_h) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ParameterError("disk radius must be positive and finite");
  if (!(target_h > 0.0) || !(target_h < radius))
    throw ParameterError("disk target_h must satisfy 0 < target_h < radius");

  const int rings = static_cast<int>(std::ceil(radius / target_h));
  const double two_pi = 2.0 * std::numbers::pi;

  Mesh2D mesh;
  mesh.nodes.push_back(center);
  // Ring k holds 6k nodes at radius k*radius/rings, starting at angle 0.
  std::vector<int> ring_start(rings + 1, 0);
  for (int k = 1; k <= rings; ++k) {
    ring_start[k] = mesh.num_nodes();
    const int n = 6 * k;
    const double r = radius * k / rings;
    for (int j = 0; j < n; ++j) mesh.nodes.push_back(polar(center, r, two_pi * j / n));
  }

  for (int j = 0; j < 6; ++j) add_ccw(mesh, 0, ring_start[1] + j, ring_start[1] + (j + 1) % 6);

  // Zip ring k-1 to ring k by advancing whichever side has the smaller next angle.
  for (int k = 2; k <= rings; ++k) {
    const int m = 6 * (k - 1);
    const int n = 6 * k;
    const int in0 = ring_start[k - 1];
    const int out0 = ring_start[k];
    int i = 0;
    int j = 0;
    while (i < m || j < n) {
      const double next_in = i < m ? static_cast<double>(i + 1) / m : 2.0;
      const double next_out = j < n ? static_cast<double>(j + 1) / n : 2.0;
      if (next_out <= next_in) {
        add_ccw(mesh, in0 + i % m, out0 + j, out0 + (j + 1) % n);
        ++j;
      } else {
        add_ccw(mesh, in0 + i, out0 + j % n, in0 + (i + 1) % m);
        ++i;
      }
    }
  }

  add_loop(mesh, ring_start[rings], 6 * rings, BoundaryTag::Gamma3, false);
  mesh.update_contact_nodes();
  return mesh;
}

Mesh2D build_annulus_mesh(const Vec2& center, double r_inner, double r_outer, double target_h) {
  if (!(r_inner > 0.0) || !(r_inner < r_outer) || !std::isfinite(r_outer))
    throw ParameterError("annulus radii must satisfy 0 < r_inner < r_outer");
  if (!(target_h > 0.0) || !(target_h < r_outer))
    throw ParameterError("annulus target_h must satisfy 0 < target_h < r_outer");

  const double two_pi = 2.0 * std::numbers::pi;
  const int layers = std::max(1, static_cast<int>(std::ceil((r_outer - r_inner) / target_h)));
  const int n = std::max(8, static_cast<int>(std::ceil(two_pi * 0.5 * (r_inner + r_outer) / target_h)));

  Mesh2D mesh;
  for (int l = 0; l <= layers; ++l) {
    const double r = r_inner + (r_outer - r_inner) * l / layers;
    for (int j = 0; j < n; ++j) mesh.nodes.push_back(polar(center, r, two_pi * j / n));
  }
  for (int l = 0; l < layers; ++l) {
    for (int j = 0; j < n; ++j) {
      const int a = l * n + j;
      const int b = l * n + (j + 1) % n;
      const int c = (l + 1) * n + (j + 1) % n;
      const int d = (l + 1) * n + j;
      add_ccw(mesh, a, b, c);
      add_ccw(mesh, a, c, d);
    }
  }
  // Inner loop runs clockwise so the domain stays on the left of every edge.
  add_loop(mesh, 0, n, BoundaryTag::Gamma2, true);
  add_loop(mesh, layers * n, n, BoundaryTag::Gamma3, false);
  mesh.update_contact_nodes();
  return mesh;
}

ValidationReport validate(const Mesh2D& mesh) {
  ValidationReport report;
  auto issue = [&report](const std::string& s) { report.issues.push_back(s); };
  const int nn = mesh.num_nodes();
  auto in_range = [nn](int i) { return i >= 0 && i < nn; };

  std::vector<int> use_count(nn, 0);
  std::map<std::array<int, 2>, int> edge_count;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    if (!in_range(tri[0]) || !in_range(tri[1]) || !in_range(tri[2])) {
      issue("triangle " + std::to_string(t) + " references a missing node");
      continue;
    }
    if (!(mesh.signed_area(t) > 0.0))
      issue("triangle " + std::to_string(t) + " has non-positive signed area");
    for (int v = 0; v < 3; ++v) {
      ++use_count[tri[v]];
      ++edge_count[sorted_pair(tri[v], tri[(v + 1) % 3])];
    }
  }
  for (int i = 0; i < nn; ++i)
    if (use_count[i] == 0) issue("node " + std::to_string(i) + " is not used by any triangle");

  std::set<std::array<int, 2>> topological;
  for (const auto& [edge, count] : edge_count) {
    if (count == 1) topological.insert(edge);
    if (count > 2)
      issue("edge " + std::to_string(edge[0]) + "-" + std::to_string(edge[1]) + " is shared by more than two triangles");
  }

  std::set<std::array<int, 2>> tagged;
  std::vector<int> boundary_degree(nn, 0);
  for (const auto& e : mesh.boundary_edges) {
    if (!in_range(e.nodes[0]) || !in_range(e.nodes[1])) {
      issue("boundary edge references a missing node");
      continue;
    }
    const auto key = sorted_pair(e.nodes[0], e.nodes[1]);
    if (!tagged.insert(key).second)
      issue("boundary edge " + std::to_string(key[0]) + "-" + std::to_string(key[1]) + " is tagged more than once");
    if (!topological.count(key))
      issue("boundary edge " + std::to_string(key[0]) + "-" + std::to_string(key[1]) + " is not on the mesh boundary");
    ++boundary_degree[e.nodes[0]];
    ++boundary_degree[e.nodes[1]];
  }
  for (const auto& key : topological)
    if (!tagged.count(key))
      issue("boundary edge " + std::to_string(key[0]) + "-" + std::to_string(key[1]) + " carries no tag");
  for (int i = 0; i < nn; ++i)
    if (boundary_degree[i] != 0 && boundary_degree[i] != 2)
      issue("boundary loop is open at node " + std::to_string(i));

  Mesh2D expected;
  expected.boundary_edges = mesh.boundary_edges;
  expected.update_contact_nodes();
  if (expected.contact_nodes != mesh.contact_nodes)
    issue("contact_nodes does not match the nodes incident to Gamma3 edges");
  return report;
}

std::vector<BoundaryWeight> boundary_weights(const Mesh2D& mesh) {
  std::map<int, double> weight;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != BoundaryTag::Gamma3) continue;
    const double half = 0.5 * (mesh.nodes[e.nodes[1]] - mesh.nodes[e.nodes[0]]).norm();
    weight[e.nodes[0]] += half;
    weight[e.nodes[1]] += half;
  }
  std::vector<BoundaryWeight> out;
  out.reserve(mesh.contact_nodes.size());
  for (int node : mesh.contact_nodes) out.push_back({node, weight[node]});
  return out;
}

void write_vtk(const Mesh2D& mesh, std::ostream& out) {
  out << "# vtk DataFile Version 3.0\nimpactsim mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << std::setprecision(17);
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& p : mesh.nodes) out << p.x() << ' ' << p.y() << " 0\n";
  out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (int t = 0; t < mesh.num_triangles(); ++t) out << "5\n";
}

}  // namespace impact
