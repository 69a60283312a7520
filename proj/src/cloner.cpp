#include "qclone/cloner.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qclone/dicke.hpp"

namespace qclone {

namespace {

void check_alpha_args(int m_copies, int j, int k) {
  if (m_copies < 2) {
    throw std::invalid_argument("alpha: need M >= 2");
  }
  if (j < 0 || j > 2) {
    throw std::invalid_argument("alpha: j must be 0, 1 or 2");
  }
  if (k < 0 || k > m_copies - 2) {
    throw std::invalid_argument("alpha: k must be in 0..M-2");
  }
}

double alpha_squared(double m, double j, double k) {
  const double p = (m + 1.0) * m * (m - 1.0);
  if (j == 0.0) return 3.0 * (m - k) * (m - k - 1.0) / p;
  if (j == 1.0) return 6.0 * (m - 1.0 - k) * (k + 1.0) / p;
  return 3.0 * (k + 1.0) * (k + 2.0) / p;
}

}  // namespace

double alpha(int m_copies, int j, int k) {
  check_alpha_args(m_copies, j, k);
  return std::sqrt(alpha_squared(m_copies, j, k));
}

double alpha_normalization_defect(int m_copies, int j) {
  check_alpha_args(m_copies, j, 0);
  const auto m = static_cast<double>(m_copies);
  double sum = 0.0, comp = 0.0;
  for (int k = 0; k <= m_copies - 2; ++k) {
    const double term = alpha_squared(m, j, k) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return std::abs(sum - 1.0);
}

CloneCoefficients clone_coefficients(int m_copies) {
  check_alpha_args(m_copies, 0, 0);
  CloneCoefficients c;
  c.m_copies = m_copies;
  c.a.resize(3, m_copies - 1);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k <= m_copies - 2; ++k) {
      c.a(j, k) = alpha(m_copies, j, k);
    }
  }
  return c;
}

Eigen::MatrixXcd CloningIsometry::ancilla_block(int k) const {
  const Index dim = qubit_dimension();
  const Index anc = ancilla_dimension();
  if (k < 0 || k >= anc) {
    throw std::invalid_argument("ancilla_block: index out of range");
  }
  return matrix(Eigen::seqN(k, dim, anc), Eigen::all);
}

CloningIsometry build_isometry(int m_copies, int max_dense_qubits) {
  if (m_copies < 2) {
    throw std::invalid_argument("build_isometry: need M >= 2");
  }
  if (m_copies > max_dense_qubits) {
    std::ostringstream msg;
    msg << "build_isometry: M=" << m_copies << " exceeds the dense cap "
        << max_dense_qubits << "; use analytic_reduced for large M";
    throw dimension_limit_error(msg.str());
  }

  const Index dim = Index{1} << m_copies;
  const Index anc = m_copies - 1;
  const CloneCoefficients coeff = clone_coefficients(m_copies);

  CloningIsometry iso;
  iso.m_copies = m_copies;
  iso.matrix = Eigen::MatrixXcd::Zero(dim * anc, 4);
  for (int k = 0; k < anc; ++k) {
    for (int col = 0; col < 4; ++col) {
      const int j = (col == 3) ? 1 : col;
      const int n_down = j + k;
      const DickeSpec spec(m_copies - n_down, n_down, /*with_phases=*/col == 3);
      const Eigen::VectorXcd v =
          col == 3 ? twiddle_vector(spec) : dicke_vector(spec);
      const double a = coeff.a(j, k);
      for (Index label = 0; label < dim; ++label) {
        if (v[label] != Complex(0.0)) {
          iso.matrix(label * anc + k, col) = a * v[label];
        }
      }
    }
  }
  return iso;
}

const CloningIsometry& cached_isometry(int m_copies, int max_dense_qubits) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const CloningIsometry>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m_copies);
  if (it == cache.end()) {
    it = cache
             .emplace(m_copies, std::make_unique<const CloningIsometry>(
                                    build_isometry(m_copies, max_dense_qubits)))
             .first;
  }
  return *it->second;
}

Eigen::MatrixXcd apply_channel(const Eigen::Matrix4cd& chi_coefficients,
                               const CloningIsometry& isometry) {
  const Index dim = isometry.qubit_dimension();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < isometry.ancilla_dimension(); ++k) {
    const Eigen::MatrixXcd block = isometry.ancilla_block(k);
    out.noalias() += block * chi_coefficients * block.adjoint();
  }
  return out;
}

MultipartiteDensity clone_channel(const QubitDensity& rho, int m_copies,
                                  int max_dense_qubits) {
  const CloningIsometry& iso = cached_isometry(m_copies, max_dense_qubits);
  Eigen::MatrixXcd out = apply_channel(two_copy_expand(rho).coeff, iso);
  return MultipartiteDensity(std::move(out),
                             std::vector<Index>(m_copies, Index{2}));
}

Eigen::Matrix2cd reduced_single_qubit(const MultipartiteDensity& out,
                                      Index which) {
  if (which < 0 || which >= static_cast<Index>(out.dims.size())) {
    throw std::invalid_argument("reduced_single_qubit: qubit index out of range");
  }
  return partial_trace(out, {which}).matrix;
}

Eigen::Matrix2cd analytic_reduced(const QubitDensity& rho, int m_copies) {
  if (m_copies < 2) {
    throw std::invalid_argument("analytic_reduced: need M >= 2");
  }
  const auto m = static_cast<double>(m_copies);
  const double up = (3.0 * m + 2.0) / (4.0 * m);
  const double down = (m - 2.0) / (4.0 * m);
  const double off = std::numbers::sqrt2 * (m + 2.0) / (4.0 * m);

  const Eigen::Matrix4cd c = two_copy_expand(rho).coeff;
  Eigen::Matrix2cd r;
  r(0, 0) = c(0, 0) * up + (c(1, 1) + c(3, 3)) * 0.5 + c(2, 2) * down;
  r(1, 1) = c(0, 0) * down + (c(1, 1) + c(3, 3)) * 0.5 + c(2, 2) * up;
  r(0, 1) = (c(0, 1) + c(1, 2)) * off;
  r(1, 0) = (c(1, 0) + c(2, 1)) * off;
  return r;
}

namespace {

ShrinkReport fit_impl(const QubitDensity& input,
                      const Eigen::Matrix2cd& output_marginal) {
  const BlochVector in = bloch_from_density(input);
  const double in_norm2 = in.x * in.x + in.y * in.y + in.z * in.z;
  if (std::sqrt(in_norm2) < 1e-12) {
    throw std::invalid_argument(
        "shrink_fit: input Bloch vector too small to identify f; "
        "probe with a non-maximally-mixed state");
  }
  const BlochVector out = bloch_from_matrix(output_marginal);

  ShrinkReport report;
  report.f = (out.x * in.x + out.y * in.y + out.z * in.z) / in_norm2;
  const double ox = out.x - report.f * in.x;
  const double oy = out.y - report.f * in.y;
  const double oz = out.z - report.f * in.z;
  const double trace_dev = std::abs(output_marginal.trace() - Complex(1.0));
  report.residual = std::sqrt(ox * ox + oy * oy + oz * oz) + trace_dev;
  report.predicted = std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace

ShrinkReport shrink_fit(const QubitDensity& input,
                        const Eigen::Matrix2cd& output_marginal) {
  return fit_impl(input, output_marginal);
}

ShrinkReport shrink_fit(const QubitDensity& input,
                        const Eigen::Matrix2cd& output_marginal, int m_copies) {
  ShrinkReport report = fit_impl(input, output_marginal);
  report.predicted = predicted_f(m_copies);
  return report;
}

double predicted_f(int m_copies) {
  if (m_copies < 2) {
    throw std::invalid_argument("predicted_f: need M >= 2");
  }
  const auto m = static_cast<double>(m_copies);
  return (m + 2.0) / (2.0 * m);
}

}  // namespace qclone
