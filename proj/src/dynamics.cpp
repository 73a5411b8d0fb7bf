#include "impact/dynamics.hpp"

#include <cmath>
#include <set>
#include <string>

namespace impact {

namespace {

std::array<Vec2, 3> shape_gradients(const Mesh2D& mesh, int t, double area) {
  const auto& tri = mesh.triangles[t];
  const Vec2& p0 = mesh.nodes[tri[0]];
  const Vec2& p1 = mesh.nodes[tri[1]];
  const Vec2& p2 = mesh.nodes[tri[2]];
  const double inv = 1.0 / (2.0 * area);
  return {Vec2(p1.y() - p2.y(), p2.x() - p1.x()) * inv, Vec2(p2.y() - p0.y(), p0.x() - p2.x()) * inv,
          Vec2(p0.y() - p1.y(), p1.x() - p0.x()) * inv};
}

void require_finite(const Vector& f, const char* what) {
  if (!f.allFinite()) throw AssemblyError(std::string("non-finite entries in ") + what);
}

}  // namespace

Vector midpoint_velocity_update(const Vector& u_prev, const Vector& v_prev, const Vector& u_curr, double dt) {
  return 2.0 * (u_curr - u_prev) / dt - v_prev;
}

SparseMatrix assemble_mass(const Mesh2D& mesh, double density) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(18 * mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double m = density * mesh.signed_area(t) / 12.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 2; ++c) trip.emplace_back(2 * tri[a] + c, 2 * tri[b] + c, a == b ? 2.0 * m : m);
  }
  SparseMatrix M(mesh.num_dofs(), mesh.num_dofs());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

FiniteElementModel::FiniteElementModel(const Mesh2D& mesh, MaterialModel model, double density)
    : mesh_(mesh), model_(std::move(model)), density_(density) {
  check_material(model_);
  if (!(density > 0.0)) throw std::invalid_argument("density must be positive");
  area_.resize(mesh.num_triangles());
  grad_.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    area_[t] = mesh.signed_area(t);
    if (!(area_[t] > 0.0)) throw AssemblyError("triangle " + std::to_string(t) + " has non-positive area");
    grad_[t] = shape_gradients(mesh, t, area_[t]);
  }
  mass_ = assemble_mass(mesh, density);
  for (const auto& w : boundary_weights(mesh)) contact_weights_.push_back(w.weight);

  std::set<int> fixed;
  for (const auto& e : mesh.boundary_edges)
    if (e.tag == BoundaryTag::Gamma1)
      for (int n : e.nodes) {
        fixed.insert(2 * n);
        fixed.insert(2 * n + 1);
      }
  constrained_dofs_.assign(fixed.begin(), fixed.end());
}

Mat2 FiniteElementModel::deformation_gradient(int t, const Vector& u) const {
  Mat2 F = Mat2::Identity();
  const auto& tri = mesh_.triangles[t];
  for (int a = 0; a < 3; ++a) F += Vec2(u[2 * tri[a]], u[2 * tri[a] + 1]) * grad_[t][a].transpose();
  return F;
}

Vector FiniteElementModel::internal_force(const Vector& u_prev, const Vector& u_curr) const {
  Vector f = Vector::Zero(num_dofs());
  for (int t = 0; t < mesh_.num_triangles(); ++t) {
    const Mat2 P = gonzalez_stress(model_, deformation_gradient(t, u_prev), deformation_gradient(t, u_curr)).first_pk;
    const auto& tri = mesh_.triangles[t];
    for (int a = 0; a < 3; ++a) {
      const Vec2 fa = area_[t] * P * grad_[t][a];
      if (!fa.allFinite()) throw AssemblyError("non-finite internal force in triangle " + std::to_string(t));
      f[2 * tri[a]] += fa.x();
      f[2 * tri[a] + 1] += fa.y();
    }
  }
  return f;
}

void FiniteElementModel::internal_tangent(const Vector& u_prev, const Vector& u_curr,
                                          std::vector<Eigen::Triplet<double>>& out) const {
  for (int t = 0; t < mesh_.num_triangles(); ++t) {
    const Mat4 D = consistent_tangent(model_, deformation_gradient(t, u_prev), deformation_gradient(t, u_curr));
    if (!D.allFinite()) throw AssemblyError("non-finite tangent in triangle " + std::to_string(t));
    const auto& tri = mesh_.triangles[t];
    const auto& g = grad_[t];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 2; ++i)
          for (int k = 0; k < 2; ++k) {
            double s = 0.0;
            for (int j = 0; j < 2; ++j)
              for (int l = 0; l < 2; ++l) s += D(voigt_index(i, j), voigt_index(k, l)) * g[a][j] * g[b][l];
            out.emplace_back(2 * tri[a] + i, 2 * tri[b] + k, area_[t] * s);
          }
  }
}

Vector FiniteElementModel::external_force(const ExternalLoads& loads, double t) const {
  Vector f = Vector::Zero(num_dofs());
  if (loads.body_force) {
    for (int e = 0; e < mesh_.num_triangles(); ++e) {
      const auto& tri = mesh_.triangles[e];
      const Vec2 centroid = (mesh_.nodes[tri[0]] + mesh_.nodes[tri[1]] + mesh_.nodes[tri[2]]) / 3.0;
      const Vec2 share = loads.body_force(t, centroid) * area_[e] / 3.0;
      for (int a = 0; a < 3; ++a) {
        f[2 * tri[a]] += share.x();
        f[2 * tri[a] + 1] += share.y();
      }
    }
  }
  if (loads.traction) {
    for (const auto& edge : mesh_.boundary_edges) {
      if (edge.tag != BoundaryTag::Gamma2) continue;
      const Vec2& p0 = mesh_.nodes[edge.nodes[0]];
      const Vec2& p1 = mesh_.nodes[edge.nodes[1]];
      const Vec2 share = loads.traction(t, 0.5 * (p0 + p1)) * (0.5 * (p1 - p0).norm());
      for (int n : edge.nodes) {
        f[2 * n] += share.x();
        f[2 * n + 1] += share.y();
      }
    }
  }
  require_finite(f, "external load vector");
  return f;
}

double FiniteElementModel::strain_energy(const Vector& u) const {
  double sum = 0.0;
  for (int t = 0; t < mesh_.num_triangles(); ++t) {
    const Mat2 F = deformation_gradient(t, u);
    sum += area_[t] * energy_density(model_, F.transpose() * F);
  }
  return sum;
}

Vector assemble_residual(const FiniteElementModel& fem, const SystemState& prev, const Vector& u_trial,
                         const ExternalLoads& loads, const ContactForces& contact_forces, double dt) {
  const Vector v_trial = midpoint_velocity_update(prev.u, prev.v, u_trial, dt);
  Vector r = fem.mass() * ((v_trial - prev.v) / dt);
  r += fem.internal_force(prev.u, u_trial);
  if (loads.body_force || loads.traction) r -= fem.external_force(loads, prev.time + 0.5 * dt);
  const auto& nodes = fem.mesh().contact_nodes;
  for (std::size_t c = 0; c < contact_forces.size(); ++c) {
    r[2 * nodes[c]] += contact_forces[c].x();
    r[2 * nodes[c] + 1] += contact_forces[c].y();
  }
  for (int dof : fem.constrained_dofs()) r[dof] = 0.0;
  require_finite(r, "residual");
  return r;
}

SparseMatrix assemble_tangent(const FiniteElementModel& fem, const SystemState& prev, const Vector& u_trial,
                              const ContactLinearization& contact_linearization, double dt) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(36 * fem.mesh().triangles.size() + 4 * contact_linearization.size());
  fem.internal_tangent(prev.u, u_trial, trip);
  const auto& nodes = fem.mesh().contact_nodes;
  for (std::size_t c = 0; c < contact_linearization.size(); ++c)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) trip.emplace_back(2 * nodes[c] + i, 2 * nodes[c] + k, contact_linearization[c](i, k));

  SparseMatrix K(fem.num_dofs(), fem.num_dofs());
  K.setFromTriplets(trip.begin(), trip.end());
  K += (2.0 / (dt * dt)) * fem.mass();

  if (!fem.constrained_dofs().empty()) {
    std::vector<char> fixed(fem.num_dofs(), 0);
    for (int dof : fem.constrained_dofs()) fixed[dof] = 1;
    for (int col = 0; col < K.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(K, col); it; ++it)
        if (fixed[it.row()] || fixed[it.col()]) it.valueRef() = it.row() == it.col() ? 1.0 : 0.0;
  }
  K.makeCompressed();
  return K;
}

}  // namespace impact
