#pragma once

#include "impact/types.hpp"

namespace impact {

enum class NormalLawKind {
  SNC,  // standard normal compliance, pressure from the end-of-step gap
  INC   // improved normal compliance, pressure from the divided-difference gap
};

struct NormalLaw {
  NormalLawKind kind = NormalLawKind::INC;
  double c_nu = 1.0;   // Pa / m^(alpha-1)
  double alpha = 2.0;  // >= 2
};

struct FrictionParams {
  double mu = 0.0;     // Coulomb coefficient
  double c_tau = 1.0;  // Pa s / m
};

enum class ContactStatus { Gap, Stick, Slip };

const char* to_string(ContactStatus status);

/// Per contact node contact variables at one time level.
struct NodalContactState {
  double gap_prev = 0.0;       // converged gap at t_{n-1}
  double gap_curr = 0.0;       // gap at the current iterate
  Vec2 slip_rate = Vec2::Zero();  // tangential midpoint velocity
  double lambda_n = 0.0;       // normal pressure, >= 0 in compression
  Vec2 lambda_t = Vec2::Zero();   // tangential traction
  ContactStatus status = ContactStatus::Gap;
};

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Threshold on |curr - prev| below which the INC divided difference uses its limit.
double inc_degeneracy_threshold(double gap_prev, double gap_curr);

double snc_pressure(const NormalLaw& law, double gap);
double snc_pressure_derivative(const NormalLaw& law, double gap);

/// ([curr]+^a - [prev]+^a) / (a (curr - prev)), with the limit [curr]+^(a-1) at curr == prev.
double inc_effective_gap(double alpha, double gap_prev, double gap_curr);
double inc_pressure(const NormalLaw& law, double gap_prev, double gap_curr);
/// d inc_pressure / d gap_curr.
double inc_pressure_gap_derivative(const NormalLaw& law, double gap_prev, double gap_curr);

/// Law-specific pressure; SNC ignores gap_prev.
double normal_pressure(const NormalLaw& law, double gap_prev, double gap_curr);

/// lambda_n minus the pressure the law prescribes; zero at consistent states.
double normal_complementarity(const NormalLaw& law, double lambda_n, double gap_prev, double gap_curr);

/// max(mu lambda_n, |c_tau v|) lambda_t - mu lambda_n c_tau v.
Vec2 friction_complementarity(const FrictionParams& fp, double lambda_n, const Vec2& slip_rate, const Vec2& lambda_t);

/// Linearized normal condition for the next iterate:
/// inactive -> lambda = 0; active -> lambda = pressure + slope * (gap_next - gap).
struct NormalUpdate {
  bool active = false;
  double gap = 0.0;
  double pressure = 0.0;
  double slope = 0.0;

  double evaluate(double gap_next) const { return active ? pressure + slope * (gap_next - gap) : 0.0; }
};

NormalUpdate snc_newton_update(const NormalLaw& law, double gap);
NormalUpdate inc_newton_update(const NormalLaw& law, double gap, double gap_prev);

/// Linearized tangential condition: stick -> c_tau v_next; slip -> mu lambda_n_next * direction.
struct FrictionUpdate {
  ContactStatus status = ContactStatus::Stick;
  double c_tau = 0.0;
  double mu = 0.0;
  Vec2 direction = Vec2::Zero();

  Vec2 evaluate(double lambda_n_next, const Vec2& slip_rate_next) const {
    return status == ContactStatus::Stick ? Vec2(c_tau * slip_rate_next) : Vec2(mu * lambda_n_next * direction);
  }
};

/// Slip with a vanishing slip rate falls back to stick unless mu = 0.
FrictionUpdate friction_newton_update(const FrictionParams& fp, bool stick, const Vec2& slip_rate);

}  // namespace impact
