#include "qclone/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qclone {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

QubitDensity::QubitDensity(double z0, Complex z1, double z3, double tol)
    : z0_(z0), z1_(z1), z3_(z3) {
  if (!(std::isfinite(z0) && std::isfinite(z3)) || !std::isfinite(z1.real()) ||
      !std::isfinite(z1.imag())) {
    throw std::invalid_argument("QubitDensity: non-finite entry");
  }
  if (z0 < -tol || z0 > 1.0 + tol || z3 < -tol || z3 > 1.0 + tol) {
    throw std::invalid_argument("QubitDensity: diagonal entry outside [0,1]");
  }
  if (std::abs(z0 + z3 - 1.0) > tol) {
    throw std::invalid_argument("QubitDensity: trace differs from 1");
  }
  if (determinant() < -tol) {
    throw std::invalid_argument("QubitDensity: not positive semidefinite");
  }
}

QubitDensity QubitDensity::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw std::invalid_argument("QubitDensity: matrix is not Hermitian");
  }
  return QubitDensity(m(0, 0).real(), m(0, 1), m(1, 1).real(), tol);
}

Eigen::Matrix2cd QubitDensity::matrix() const {
  Eigen::Matrix2cd m;
  m << Complex(z0_), z1_, std::conj(z1_), Complex(z3_);
  return m;
}

double QubitDensity::purity() const {
  return z0_ * z0_ + z3_ * z3_ + 2.0 * std::norm(z1_);
}

QubitDensity density_from_bloch(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-12) {
    throw std::invalid_argument("density_from_bloch: |bloch| > 1");
  }
  return QubitDensity((1.0 + b.z) / 2.0, Complex(b.x, -b.y) / 2.0,
                      (1.0 - b.z) / 2.0,
                      /*tol=*/1e-10);
}

BlochVector bloch_from_density(const QubitDensity& rho) {
  return BlochVector{2.0 * rho.z1().real(), -2.0 * rho.z1().imag(),
                     rho.z0() - rho.z3()};
}

BlochVector bloch_from_matrix(const Eigen::Matrix2cd& m) {
  const Eigen::Matrix2cd h = (m + m.adjoint()) / 2.0;
  return BlochVector{2.0 * h(0, 1).real(), -2.0 * h(0, 1).imag(),
                     h(0, 0).real() - h(1, 1).real()};
}

namespace {

double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

QubitDensity random_mixed(std::mt19937_64& rng, double ball_radius) {
  if (ball_radius < 0.0 || ball_radius > 1.0) {
    throw std::invalid_argument("random_mixed: ball_radius outside [0,1]");
  }
  const double phi = 2.0 * std::numbers::pi * canonical_uniform(rng);
  const double cos_theta = 2.0 * canonical_uniform(rng) - 1.0;
  const double r = ball_radius * std::cbrt(canonical_uniform(rng));
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return density_from_bloch(BlochVector{r * sin_theta * std::cos(phi),
                                        r * sin_theta * std::sin(phi),
                                        r * cos_theta});
}

QubitDensity random_mixed(std::uint64_t seed, double ball_radius) {
  std::mt19937_64 rng(seed);
  return random_mixed(rng, ball_radius);
}

TwoCopyExpansion two_copy_expand(const QubitDensity& rho) {
  const double z0 = rho.z0();
  const Complex z1 = rho.z1();
  const Complex z2 = rho.z2();
  const double z3 = rho.z3();
  const double rt2 = std::numbers::sqrt2;

  TwoCopyExpansion e;
  e.coeff.setZero();
  e.coeff(0, 0) = z0 * z0;
  e.coeff(0, 1) = rt2 * z0 * z1;
  e.coeff(0, 2) = z1 * z1;
  e.coeff(1, 0) = rt2 * z0 * z2;
  e.coeff(1, 1) = z0 * z3 + z1 * z2;
  e.coeff(1, 2) = rt2 * z1 * z3;
  e.coeff(2, 0) = z2 * z2;
  e.coeff(2, 1) = rt2 * z2 * z3;
  e.coeff(2, 2) = z3 * z3;
  e.coeff(3, 3) = z0 * z3 - z1 * z2;
  return e;
}

}  // namespace qclone
