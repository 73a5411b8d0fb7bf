#pragma once

#include <stdexcept>
#include <variant>

#include "impact/types.hpp"

namespace impact {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Saint Venant-Kirchhoff law with plane-stress moduli:
///   W(E) = lame_star/2 (tr E)^2 + mu tr(E^2),  E = (C - I)/2.
struct SvkParams {
  double young = 0.0;    // Pa
  double poisson = 0.0;  // dimensionless, in [0, 0.5)

  double mu() const { return young / (2.0 * (1.0 + poisson)); }
  double lambda() const { return young * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson)); }
  double lame_star() const { return 2.0 * lambda() * mu() / (lambda() + 2.0 * mu()); }
};

/// Compressible Ogden-type law in the plane-strain embedding (C33 = 1):
///   W = c1 (I1 - 3) + c2 (I2 - 3) + d (I3 - 1) - (c1 + 2 c2 + d) ln I3.
struct OgdenParams {
  double c1 = 0.0;  // Pa
  double c2 = 0.0;  // Pa
  double d = 0.0;   // Pa
};

using MaterialModel = std::variant<SvkParams, OgdenParams>;

/// Throws ParameterError-like std::invalid_argument on inadmissible constants.
void check_material(const MaterialModel& model);

/// Stored energy density W(C); throws DomainError if C is not symmetric positive definite.
double energy_density(const MaterialModel& model, const Mat2& C);

/// Second Piola-Kirchhoff stress S = 2 dW/dC.
Mat2 pk2_stress(const MaterialModel& model, const Mat2& C);

/// Directional derivative dS[dC] of the second Piola-Kirchhoff stress.
Mat2 pk2_stress_derivative(const MaterialModel& model, const Mat2& C, const Mat2& dC);

struct GonzalezStress {
  Mat2 first_pk;     // F_mid * algo_pk2
  Mat2 algo_pk2;     // midpoint stress plus correction
  Mat2 correction;   // the Delta C aligned part
  bool degenerate;   // correction dropped because Delta C is negligible
};

/// Energy-conserving algorithmic stress for the step F_prev -> F_curr.
GonzalezStress gonzalez_stress(const MaterialModel& model, const Mat2& F_prev, const Mat2& F_curr);

/// P_algo : (F_curr - F_prev) - (W(C_curr) - W(C_prev)); zero up to roundoff.
double conservation_residual(const MaterialModel& model, const Mat2& F_prev, const Mat2& F_curr);

enum class TangentMode {
  Full,             // exact derivative including the correction term
  FrozenCorrection  // correction treated as constant (for comparison only)
};

/// d P_algo / d F_curr as a 4x4 matrix, rows/cols indexed by voigt_index.
Mat4 consistent_tangent(const MaterialModel& model, const Mat2& F_prev, const Mat2& F_curr,
                        TangentMode mode = TangentMode::Full);

}  // namespace impact
