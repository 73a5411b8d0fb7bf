#include "impact/contact_law.hpp"

#include <algorithm>
#include <cmath>

namespace impact {

namespace {

// Series about gap_curr is used when both gaps are positive and
// |curr - prev| * alpha <= kSeriesWindow * curr.
constexpr double kSeriesWindow = 1e-2;
constexpr int kSeriesTerms = 10;

// Slip rates at or below this are treated as zero (m/s).
constexpr double kZeroSlipRate = 1e-14;

double pow_plus(double x, double p) {
  if (x <= 0.0) return 0.0;
  return p == 0.0 ? 1.0 : std::pow(x, p);
}

bool use_series(double alpha, double prev, double curr) {
  return prev > 0.0 && curr > 0.0 && std::abs(curr - prev) * std::max(alpha, 1.0) <= kSeriesWindow * curr;
}

// sum_{k>=first} (-1)^(k+first) t^(k-first) a(a-1)...(a-k+1) / k!
double falling_series(double alpha, double t, int first) {
  double coeff = 1.0;  // a(a-1)...(a-k+1)/k!, built incrementally
  for (int k = 1; k < first; ++k) coeff *= (alpha - k + 1) / k;
  double sum = 0.0;
  double power = 1.0;
  for (int k = first; k < first + kSeriesTerms; ++k) {
    coeff *= (alpha - k + 1) / k;
    sum += power * coeff;
    power *= -t;
  }
  return sum;
}

}  // namespace

const char* to_string(ContactStatus status) {
  switch (status) {
    case ContactStatus::Gap: return "gap";
    case ContactStatus::Stick: return "stick";
    case ContactStatus::Slip: return "slip";
  }
  return "?";
}

double inc_degeneracy_threshold(double gap_prev, double gap_curr) {
  return 1e-12 * std::max({1.0, std::abs(gap_curr), std::abs(gap_prev)});
}

double snc_pressure(const NormalLaw& law, double gap) {
  return law.c_nu * 0.5 * law.alpha * pow_plus(gap, law.alpha - 1.0);
}

double snc_pressure_derivative(const NormalLaw& law, double gap) {
  return law.c_nu * 0.5 * law.alpha * (law.alpha - 1.0) * pow_plus(gap, law.alpha - 2.0);
}

double inc_effective_gap(double alpha, double gap_prev, double gap_curr) {
  const double h = gap_curr - gap_prev;
  if (use_series(alpha, gap_prev, gap_curr)) {
    // ((x)^a - (x-h)^a) / (a h) expanded about x.
    return std::pow(gap_curr, alpha - 1.0) * falling_series(alpha, h / gap_curr, 1) / alpha;
  }
  if (std::abs(h) <= inc_degeneracy_threshold(gap_prev, gap_curr)) return pow_plus(gap_curr, alpha - 1.0);
  return (pow_plus(gap_curr, alpha) - pow_plus(gap_prev, alpha)) / (alpha * h);
}

double inc_pressure(const NormalLaw& law, double gap_prev, double gap_curr) {
  return law.c_nu * 0.5 * law.alpha * inc_effective_gap(law.alpha, gap_prev, gap_curr);
}

double inc_pressure_gap_derivative(const NormalLaw& law, double gap_prev, double gap_curr) {
  const double a = law.alpha;
  const double h = gap_curr - gap_prev;
  if (use_series(a, gap_prev, gap_curr)) {
    return 0.5 * law.c_nu * std::pow(gap_curr, a - 2.0) * falling_series(a, h / gap_curr, 2);
  }
  if (std::abs(h) <= inc_degeneracy_threshold(gap_prev, gap_curr)) {
    // Limit of the divided-difference derivative: c a (a-1) / 4 [gap]+^(a-2).
    return 0.25 * law.c_nu * a * (a - 1.0) * pow_plus(gap_curr, a - 2.0);
  }
  const double eff = inc_effective_gap(a, gap_prev, gap_curr);
  return law.c_nu * a * (pow_plus(gap_curr, a - 1.0) - eff) / (2.0 * h);
}

double normal_pressure(const NormalLaw& law, double gap_prev, double gap_curr) {
  return law.kind == NormalLawKind::SNC ? snc_pressure(law, gap_curr) : inc_pressure(law, gap_prev, gap_curr);
}

double normal_complementarity(const NormalLaw& law, double lambda_n, double gap_prev, double gap_curr) {
  return lambda_n - normal_pressure(law, gap_prev, gap_curr);
}

Vec2 friction_complementarity(const FrictionParams& fp, double lambda_n, const Vec2& slip_rate,
                              const Vec2& lambda_t) {
  const Vec2 trial = fp.c_tau * slip_rate;
  const double bound = fp.mu * lambda_n;
  return std::max(bound, trial.norm()) * lambda_t - bound * trial;
}

NormalUpdate snc_newton_update(const NormalLaw& law, double gap) {
  NormalUpdate u;
  u.gap = gap;
  u.active = gap >= 0.0;
  if (u.active) {
    u.pressure = snc_pressure(law, gap);
    u.slope = snc_pressure_derivative(law, gap);
  }
  return u;
}

NormalUpdate inc_newton_update(const NormalLaw& law, double gap, double gap_prev) {
  NormalUpdate u;
  u.gap = gap;
  u.active = inc_effective_gap(law.alpha, gap_prev, gap) > 0.0;
  if (u.active) {
    u.pressure = inc_pressure(law, gap_prev, gap);
    u.slope = inc_pressure_gap_derivative(law, gap_prev, gap);
  }
  return u;
}

FrictionUpdate friction_newton_update(const FrictionParams& fp, bool stick, const Vec2& slip_rate) {
  FrictionUpdate u;
  u.c_tau = fp.c_tau;
  u.mu = fp.mu;
  const double speed = slip_rate.norm();
  if (!stick && fp.mu == 0.0) {
    u.status = ContactStatus::Slip;  // frictionless: zero traction whatever the direction
  } else if (stick || speed <= kZeroSlipRate) {
    u.status = ContactStatus::Stick;
  } else {
    u.status = ContactStatus::Slip;
    u.direction = slip_rate / speed;
  }
  return u;
}

}  // namespace impact
