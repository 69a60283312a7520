#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "qclone/linalg.hpp"

namespace qclone {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

// Single mixed qubit stored by its matrix entries
//   [ z0  z1 ]
//   [ z2  z3 ]
// with z2 = conj(z1) held structurally. Construction enforces unit trace and
// positivity within `tol`.
class QubitDensity {
 public:
  QubitDensity(double z0, Complex z1, double z3, double tol = 1e-9);

  static QubitDensity from_matrix(const Eigen::Matrix2cd& m,
                                  double tol = 1e-9);

  double z0() const { return z0_; }
  Complex z1() const { return z1_; }
  Complex z2() const { return std::conj(z1_); }
  double z3() const { return z3_; }

  Eigen::Matrix2cd matrix() const;

  // det ρ = z0 z3 − |z1|²; zero iff pure.
  double determinant() const { return z0_ * z3_ - std::norm(z1_); }

  double purity() const;

 private:
  double z0_;
  Complex z1_;
  double z3_;
};

QubitDensity density_from_bloch(const BlochVector& b);
BlochVector bloch_from_density(const QubitDensity& rho);

// Bloch vector of an (approximately) Hermitian 2x2 matrix; the Hermitian part
// is used, so channel-output roundoff does not leak into the components.
BlochVector bloch_from_matrix(const Eigen::Matrix2cd& m);

// State with Bloch vector drawn uniformly from the solid ball of the given
// radius. The draw is fully pinned down for reproducibility: three canonical
// uniforms u = (x >> 11) * 2^-53 from std::mt19937_64 give, in order,
// azimuth 2*pi*u1, cos(polar) = 2*u2 - 1, and radius = ball_radius * u3^(1/3).
QubitDensity random_mixed(std::mt19937_64& rng, double ball_radius);
QubitDensity random_mixed(std::uint64_t seed, double ball_radius);

// Coefficients of ρ⊗ρ on the basis operators A_ij = χ_i χ_j†. The cross
// blocks coeff(i,3) and coeff(3,i), i < 3, are structural zeros: ρ⊗ρ is
// swap-symmetric and χ_3 is the lone antisymmetric basis vector.
struct TwoCopyExpansion {
  Eigen::Matrix4cd coeff;
};

TwoCopyExpansion two_copy_expand(const QubitDensity& rho);

}  // namespace qclone
