#include "impact/material.hpp"

#include <cmath>
#include <string>

namespace impact {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Relative size below which Delta C : Delta C is treated as zero.
constexpr double kDegenerateCorrection = 1e-14;

void require_spd(const Mat2& C) {
  const double scale = C.norm();
  if (!std::isfinite(scale) || std::abs(C(0, 1) - C(1, 0)) > 1e-10 * scale || !(C(0, 0) > 0.0) ||
      !(C.determinant() > 0.0))
    throw DomainError("right Cauchy-Green tensor is not symmetric positive definite");
}

double svk_energy(const SvkParams& p, const Mat2& C) {
  const Mat2 E = 0.5 * (C - Mat2::Identity());
  const double tr = E.trace();
  return 0.5 * p.lame_star() * tr * tr + p.mu() * ddot(E, E);
}

Mat2 svk_stress(const SvkParams& p, const Mat2& C) {
  const Mat2 E = 0.5 * (C - Mat2::Identity());
  return p.lame_star() * E.trace() * Mat2::Identity() + 2.0 * p.mu() * E;
}

Mat2 svk_stress_derivative(const SvkParams& p, const Mat2& dC) {
  return 0.5 * p.lame_star() * dC.trace() * Mat2::Identity() + p.mu() * dC;
}

double ogden_energy(const OgdenParams& p, const Mat2& C) {
  const double i1 = C.trace() + 1.0;
  const double i3 = C.determinant();
  const double i2 = i3 + C.trace();
  return p.c1 * (i1 - 3.0) + p.c2 * (i2 - 3.0) + p.d * (i3 - 1.0) - (p.c1 + 2.0 * p.c2 + p.d) * std::log(i3);
}

// S = 2 (c1 + c2) I + 2 ((c2 + d) I3 - k) C^-1,  k = c1 + 2 c2 + d.
Mat2 ogden_stress(const OgdenParams& p, const Mat2& C) {
  const double i3 = C.determinant();
  const double k = p.c1 + 2.0 * p.c2 + p.d;
  return 2.0 * (p.c1 + p.c2) * Mat2::Identity() + 2.0 * ((p.c2 + p.d) * i3 - k) * C.inverse();
}

Mat2 ogden_stress_derivative(const OgdenParams& p, const Mat2& C, const Mat2& dC) {
  const Mat2 Cinv = C.inverse();
  const double i3 = C.determinant();
  const double k = p.c1 + 2.0 * p.c2 + p.d;
  const double di3 = i3 * ddot(Cinv.transpose(), dC);
  const Mat2 dCinv = -Cinv * dC * Cinv;
  return 2.0 * (p.c2 + p.d) * di3 * Cinv + 2.0 * ((p.c2 + p.d) * i3 - k) * dCinv;
}

struct StepKinematics {
  Mat2 C_prev, C_curr, C_mid, dC, F_mid;
  double dC_sq;
  bool degenerate;
};

StepKinematics kinematics(const Mat2& F_prev, const Mat2& F_curr) {
  if (!(F_prev.determinant() > 0.0) || !(F_curr.determinant() > 0.0))
    throw DomainError("deformation gradient with non-positive determinant");
  StepKinematics k;
  k.C_prev = F_prev.transpose() * F_prev;
  k.C_curr = F_curr.transpose() * F_curr;
  k.C_mid = 0.5 * (k.C_prev + k.C_curr);
  k.dC = k.C_curr - k.C_prev;
  k.F_mid = 0.5 * (F_prev + F_curr);
  k.dC_sq = ddot(k.dC, k.dC);
  k.degenerate = k.dC_sq <= kDegenerateCorrection * k.C_mid.squaredNorm();
  return k;
}

}  // namespace

void check_material(const MaterialModel& model) {
  std::visit(overloaded{
                 [](const SvkParams& p) {
                   if (!(p.young > 0.0)) throw std::invalid_argument("Young modulus must be positive");
                   if (!(p.poisson >= 0.0 && p.poisson < 0.5))
                     throw std::invalid_argument("Poisson ratio must lie in [0, 0.5)");
                 },
                 [](const OgdenParams& p) {
                   if (!(p.c1 > 0.0) || !(p.c2 >= 0.0) || !(p.d >= 0.0))
                     throw std::invalid_argument("Ogden constants need c1 > 0, c2 >= 0, d >= 0");
                 }},
             model);
}

double energy_density(const MaterialModel& model, const Mat2& C) {
  require_spd(C);
  return std::visit(overloaded{[&](const SvkParams& p) { return svk_energy(p, C); },
                               [&](const OgdenParams& p) { return ogden_energy(p, C); }},
                    model);
}

Mat2 pk2_stress(const MaterialModel& model, const Mat2& C) {
  require_spd(C);
  return std::visit(overloaded{[&](const SvkParams& p) { return svk_stress(p, C); },
                               [&](const OgdenParams& p) { return ogden_stress(p, C); }},
                    model);
}

Mat2 pk2_stress_derivative(const MaterialModel& model, const Mat2& C, const Mat2& dC) {
  return std::visit(overloaded{[&](const SvkParams& p) { return svk_stress_derivative(p, dC); },
                               [&](const OgdenParams& p) { return ogden_stress_derivative(p, C, dC); }},
                    model);
}

GonzalezStress gonzalez_stress(const MaterialModel& model, const Mat2& F_prev, const Mat2& F_curr) {
  const StepKinematics k = kinematics(F_prev, F_curr);
  const Mat2 S_mid = pk2_stress(model, k.C_mid);

  GonzalezStress out;
  out.degenerate = k.degenerate;
  out.correction.setZero();
  if (!k.degenerate) {
    const double excess =
        energy_density(model, k.C_curr) - energy_density(model, k.C_prev) - 0.5 * ddot(S_mid, k.dC);
    out.correction = (2.0 * excess / k.dC_sq) * k.dC;
  }
  out.algo_pk2 = S_mid + out.correction;
  out.first_pk = k.F_mid * out.algo_pk2;
  return out;
}

double conservation_residual(const MaterialModel& model, const Mat2& F_prev, const Mat2& F_curr) {
  const GonzalezStress g = gonzalez_stress(model, F_prev, F_curr);
  const double work = ddot(g.first_pk, F_curr - F_prev);
  const double dW = energy_density(model, F_curr.transpose() * F_curr) - energy_density(model, F_prev.transpose() * F_prev);
  return work - dW;
}

Mat4 consistent_tangent(const MaterialModel& model, const Mat2& F_prev, const Mat2& F_curr, TangentMode mode) {
  const StepKinematics k = kinematics(F_prev, F_curr);
  const Mat2 S_mid = pk2_stress(model, k.C_mid);
  const Mat2 S_curr = pk2_stress(model, k.C_curr);

  Mat2 sigma = S_mid;
  double excess = 0.0;
  if (!k.degenerate) {
    excess = energy_density(model, k.C_curr) - energy_density(model, k.C_prev) - 0.5 * ddot(S_mid, k.dC);
    sigma += (2.0 * excess / k.dC_sq) * k.dC;
  }

  Mat4 tangent;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Mat2 dF = Mat2::Zero();
      dF(a, b) = 1.0;
      const Mat2 dC = dF.transpose() * F_curr + F_curr.transpose() * dF;
      const Mat2 dS_mid = pk2_stress_derivative(model, k.C_mid, 0.5 * dC);
      Mat2 dSigma = dS_mid;
      if (!k.degenerate && mode == TangentMode::Full) {
        const double q = k.dC_sq;
        const double d_excess = 0.5 * ddot(S_curr, dC) - 0.5 * (ddot(dS_mid, k.dC) + ddot(S_mid, dC));
        const double dq = 2.0 * ddot(k.dC, dC);
        dSigma += 2.0 * ((d_excess / q - excess * dq / (q * q)) * k.dC + (excess / q) * dC);
      }
      const Mat2 dP = 0.5 * dF * sigma + k.F_mid * dSigma;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) tangent(voigt_index(i, j), voigt_index(a, b)) = dP(i, j);
    }
  }
  return tangent;
}

}  // namespace impact
