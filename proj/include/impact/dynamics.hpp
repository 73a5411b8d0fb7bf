#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>

#include "impact/contact_law.hpp"
#include "impact/material.hpp"
#include "impact/mesh.hpp"

namespace impact {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeStepConfig {
  double dt = 1e-3;          // s
  double final_time = 1.0;   // s
  double density = 1.0;      // kg/m^3
};

/// Body force density f0 (N/m^3) and Gamma2 traction f2 (N/m^2), both
/// functions of time and reference position. Empty functions mean zero.
struct ExternalLoads {
  std::function<Vec2(double, const Vec2&)> body_force;
  std::function<Vec2(double, const Vec2&)> traction;
};

/// Nodal fields at one time level; u and v are interleaved (x, y) per node.
struct SystemState {
  Vector u;
  Vector v;
  std::vector<NodalContactState> contact;  // aligned with mesh.contact_nodes
  double time = 0.0;
};

/// v_curr from (u_curr - u_prev)/dt = (v_curr + v_prev)/2.
Vector midpoint_velocity_update(const Vector& u_prev, const Vector& v_prev, const Vector& u_curr, double dt);

/// Consistent P1 mass matrix on interleaved dofs.
SparseMatrix assemble_mass(const Mesh2D& mesh, double density);

/// P1 discretization data shared by residual, tangent and energy evaluation.
class FiniteElementModel {
 public:
  FiniteElementModel(const Mesh2D& mesh, MaterialModel model, double density);

  const Mesh2D& mesh() const { return mesh_; }
  const MaterialModel& material() const { return model_; }
  double density() const { return density_; }
  int num_dofs() const { return mesh_.num_dofs(); }
  const SparseMatrix& mass() const { return mass_; }
  /// Lumped Gamma3 measure per entry of mesh.contact_nodes.
  const std::vector<double>& contact_weights() const { return contact_weights_; }
  /// Dofs of nodes on Gamma1 edges; held at zero displacement.
  const std::vector<int>& constrained_dofs() const { return constrained_dofs_; }

  double area(int tri) const { return area_[tri]; }
  Mat2 deformation_gradient(int tri, const Vector& u) const;

  /// Internal forces from the algorithmic stress of the step u_prev -> u_curr.
  Vector internal_force(const Vector& u_prev, const Vector& u_curr) const;
  /// Triplets of d internal_force / d u_curr.
  void internal_tangent(const Vector& u_prev, const Vector& u_curr, std::vector<Eigen::Triplet<double>>& out) const;
  /// Nodal external load vector at time t.
  Vector external_force(const ExternalLoads& loads, double t) const;
  /// Sum of element area times W(C).
  double strain_energy(const Vector& u) const;
  double kinetic_energy(const Vector& v) const { return 0.5 * v.dot(mass_ * v); }

 private:
  const Mesh2D& mesh_;
  MaterialModel model_;
  double density_;
  std::vector<double> area_;
  std::vector<std::array<Vec2, 3>> grad_;  // reference shape-function gradients
  SparseMatrix mass_;
  std::vector<double> contact_weights_;
  std::vector<int> constrained_dofs_;
};

/// Weighted nodal contact force w (lambda_n n + lambda_t) per contact node.
using ContactForces = std::vector<Vec2>;
/// d(contact force)/d(u_node) per contact node.
using ContactLinearization = std::vector<Mat2>;

/// R(u) = M (v - v_prev)/dt + f_int - f_ext(t_{n-1/2}) + f_contact, with v
/// from the midpoint rule. Constrained dofs carry zero residual.
Vector assemble_residual(const FiniteElementModel& fem, const SystemState& prev, const Vector& u_trial,
                         const ExternalLoads& loads, const ContactForces& contact_forces, double dt);

/// dR/du = (2/dt^2) M + K_int + K_contact, constrained rows/columns replaced by identity.
SparseMatrix assemble_tangent(const FiniteElementModel& fem, const SystemState& prev, const Vector& u_trial,
                              const ContactLinearization& contact_linearization, double dt);

}  // namespace impact
