#include "qclone/dicke.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qclone {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

DickeSpec::DickeSpec(int up, int down, bool with_phases)
    : n_up(up), n_down(down), phased(with_phases) {
  if (n_up < 0 || n_down < 0 || total() < 1) {
    throw std::invalid_argument("DickeSpec: need n_up, n_down >= 0 and M >= 1");
  }
  if (total() > 20) {
    throw dimension_limit_error("DickeSpec: dense vector beyond 20 qubits");
  }
  if (phased && term_count() < 2) {
    throw std::invalid_argument(
        "DickeSpec: a single-term sector has no orthogonal phased partner");
  }
}

namespace {

Eigen::VectorXcd sector_vector(const DickeSpec& spec, bool with_phases) {
  const int m = spec.total();
  const Index dim = Index{1} << m;
  const auto d = static_cast<double>(spec.term_count());
  const double amp = 1.0 / std::sqrt(d);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  std::uint64_t r = 0;
  for (Index label = 0; label < dim; ++label) {
    if (std::popcount(static_cast<std::uint64_t>(label)) != spec.n_down) {
      continue;
    }
    if (with_phases) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / d;
      v[label] = amp * Complex(std::cos(angle), std::sin(angle));
      ++r;
    } else {
      v[label] = amp;
    }
  }
  return v;
}

}  // namespace

Eigen::VectorXcd dicke_vector(const DickeSpec& spec) {
  if (spec.phased) {
    throw std::invalid_argument("dicke_vector: spec is phased");
  }
  return sector_vector(spec, false);
}

Eigen::VectorXcd twiddle_vector(const DickeSpec& spec) {
  if (!spec.phased) {
    throw std::invalid_argument("twiddle_vector: spec is not phased");
  }
  return sector_vector(spec, true);
}

std::array<Eigen::Vector4cd, 4> chi_basis() {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd chi0, chi1, chi2, chi3;
  chi0 << 1, 0, 0, 0;
  chi1 << 0, s, s, 0;
  chi2 << 0, 0, 0, 1;
  chi3 << 0, s, -s, 0;
  return {chi0, chi1, chi2, chi3};
}

Eigen::Matrix4cd chi_matrix() {
  const auto basis = chi_basis();
  Eigen::Matrix4cd x;
  for (int j = 0; j < 4; ++j) x.col(j) = basis[static_cast<std::size_t>(j)];
  return x;
}

Eigen::Matrix2cd dicke_single_qubit_marginal(const DickeSpec& spec) {
  const auto m = static_cast<double>(spec.total());
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  out(0, 0) = spec.n_up / m;
  out(1, 1) = spec.n_down / m;
  return out;
}

}  // namespace qclone
