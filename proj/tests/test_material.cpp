#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "impact/material.hpp"

using namespace impact;
using testing::random_admissible_F;

namespace {

const MaterialModel kSvk = SvkParams{200.0, 0.3};
const MaterialModel kOgden = OgdenParams{0.5, 5e-3, 0.35};

// Central difference of W along the symmetric direction E_ab.
Mat2 fd_stress(const MaterialModel& m, const Mat2& C, double h = 1e-6) {
  Mat2 S;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Mat2 d = Mat2::Zero();
      d(a, b) += 0.5 * h;
      d(b, a) += 0.5 * h;
      S(a, b) = 2.0 * (energy_density(m, C + d) - energy_density(m, C - d)) / (2.0 * h);
    }
  return S;
}

Mat2 random_C(std::mt19937_64& rng) {
  const Mat2 F = random_admissible_F(rng);
  return F.transpose() * F;
}

}  // namespace

TEST_CASE("standard Lame constants") {
  const SvkParams p{100e9, 0.35};
  CHECK(p.mu() == doctest::Approx(100e9 / 2.7));
  CHECK(p.lambda() == doctest::Approx(100e9 * 0.35 / (1.35 * 0.3)));
  CHECK(p.lame_star() == doctest::Approx(2 * p.lambda() * p.mu() / (p.lambda() + 2 * p.mu())));
}

TEST_CASE("stress-free reference state") {
  for (const auto& m : {kSvk, kOgden}) {
    CHECK(energy_density(m, Mat2::Identity()) == doctest::Approx(0.0));
    CHECK(pk2_stress(m, Mat2::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("second Piola stress matches the energy gradient") {
  std::mt19937_64 rng(7);
  for (const auto& m : {kSvk, kOgden})
    for (int k = 0; k < 50; ++k) {
      const Mat2 C = random_C(rng);
      const Mat2 S = pk2_stress(m, C);
      const Mat2 Sfd = fd_stress(m, C);
      CHECK((S - Sfd).norm() <= 1e-6 * std::max(1.0, S.norm()));
    }
}

TEST_CASE("stress derivative matches finite differences of the stress") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& m : {kSvk, kOgden})
    for (int k = 0; k < 20; ++k) {
      const Mat2 C = random_C(rng);
      Mat2 dC;
      dC << u(rng), u(rng), 0, u(rng);
      dC(1, 0) = dC(0, 1);
      const double h = 1e-6;
      const Mat2 fd = (pk2_stress(m, C + h * dC) - pk2_stress(m, C - h * dC)) / (2 * h);
      CHECK((pk2_stress_derivative(m, C, dC) - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
    }
}

TEST_CASE("Gonzalez stress conserves energy on random steps") {
  std::mt19937_64 rng(3);
  for (const auto& m : {kSvk, kOgden})
    for (int k = 0; k < 200; ++k) {
      const Mat2 Fp = random_admissible_F(rng), Fc = random_admissible_F(rng);
      const double W = energy_density(m, Fc.transpose() * Fc);
      CHECK(std::abs(conservation_residual(m, Fp, Fc)) <= 1e-10 * std::max(1.0, std::abs(W)));
    }
}

TEST_CASE("Gonzalez stress degenerates to the midpoint stress") {
  const Mat2 F = (Mat2() << 1.1, 0.1, -0.05, 0.95).finished();
  const GonzalezStress g = gonzalez_stress(kOgden, F, F);
  CHECK(g.degenerate);
  CHECK(g.correction.norm() == 0.0);
  const Mat2 C = F.transpose() * F;
  CHECK((g.first_pk - F * pk2_stress(kOgden, C)).norm() < 1e-14);
}

TEST_CASE("SVK correction vanishes: the quadratic energy is exact at the midpoint") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const GonzalezStress g = gonzalez_stress(kSvk, random_admissible_F(rng), random_admissible_F(rng));
    CHECK(g.correction.norm() <= 1e-10 * std::max(1.0, g.algo_pk2.norm()));
  }
}

TEST_CASE("consistent tangent matches finite differences of the algorithmic stress") {
  std::mt19937_64 rng(17);
  for (const auto& m : {kSvk, kOgden})
    for (int k = 0; k < 20; ++k) {
      const Mat2 Fp = random_admissible_F(rng), Fc = random_admissible_F(rng);
      const Mat4 D = consistent_tangent(m, Fp, Fc);
      const double h = 1e-6;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Mat2 dF = Mat2::Zero();
          dF(a, b) = h;
          const Mat2 fd =
              (gonzalez_stress(m, Fp, Fc + dF).first_pk - gonzalez_stress(m, Fp, Fc - dF).first_pk) / (2 * h);
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              CHECK(std::abs(D(voigt_index(i, j), voigt_index(a, b)) - fd(i, j)) <= 1e-5 * std::max(1.0, D.norm()));
        }
    }
}

TEST_CASE("frozen correction tangent differs from the full one for a nonlinear law") {
  const Mat2 Fp = (Mat2() << 1.0, 0.1, 0.0, 1.0).finished();
  const Mat2 Fc = (Mat2() << 1.2, 0.0, 0.1, 0.9).finished();
  const Mat4 full = consistent_tangent(kOgden, Fp, Fc);
  const Mat4 frozen = consistent_tangent(kOgden, Fp, Fc, TangentMode::FrozenCorrection);
  CHECK((full - frozen).norm() > 1e-8);
}

TEST_CASE("inadmissible input is rejected") {
  const Mat2 flip = (Mat2() << -1.0, 0.0, 0.0, 1.0).finished();
  CHECK_THROWS_AS(gonzalez_stress(kSvk, Mat2::Identity(), flip), DomainError);
  CHECK_THROWS_AS(energy_density(kOgden, -Mat2::Identity()), DomainError);
  CHECK_THROWS_AS(check_material(SvkParams{1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(check_material(OgdenParams{0.0, 1.0, 1.0}), std::invalid_argument);
}
