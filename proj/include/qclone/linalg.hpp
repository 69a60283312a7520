#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qclone {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Position of a factor in a dims list.
using SubsystemIndex = Index;

// Dense-path refusal threshold: total Hilbert-space dimension of any
// materialized operator.
inline constexpr Index kDenseDimensionCap = Index{1} << 14;

struct DensityTolerances {
  double herm = 1e-10;
  double trace = 1e-10;
  double psd = 1e-9;
};

// Thrown when a requested dense object would exceed the dimension cap.
class dimension_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Index dims_product(const std::vector<Index>& dims) {
  Index p = 1;
  for (Index d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

// Strides of a mixed-radix index: factor i advances by stride[i] basis labels.
inline std::vector<Index> dims_strides(const std::vector<Index>& dims) {
  std::vector<Index> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

}  // namespace detail

// Kronecker product a ⊗ b. Factor order matches the global convention:
// the left factor owns the most significant part of the basis label.
template <typename DerivedA, typename DerivedB>
Eigen::MatrixXcd tensor_product(const Eigen::MatrixBase<DerivedA>& a,
                                const Eigen::MatrixBase<DerivedB>& b,
                                Index dim_cap = kDenseDimensionCap) {
  if (a.rows() * b.rows() > dim_cap || a.cols() * b.cols() > dim_cap) {
    std::ostringstream msg;
    msg << "tensor_product: result dimension " << a.rows() * b.rows() << "x"
        << a.cols() * b.cols() << " exceeds the dense cap " << dim_cap;
    throw dimension_limit_error(msg.str());
  }
  return Eigen::kroneckerProduct(a.template cast<Complex>(),
                                 b.template cast<Complex>());
}

// Partial trace of an arbitrary square matrix over the factors NOT in `keep`.
// `keep` holds positions into `dims`; the reduced matrix carries the kept
// factors in their original order.
template <typename Derived>
Eigen::MatrixXcd partial_trace_matrix(const Eigen::MatrixBase<Derived>& m,
                                      const std::vector<Index>& dims,
                                      std::vector<SubsystemIndex> keep) {
  const Index total = detail::dims_product(dims);
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("partial_trace: matrix must be square");
  }
  if (m.rows() != total) {
    throw std::invalid_argument(
        "partial_trace: matrix side does not match the product of dims");
  }
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  }
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("partial_trace: duplicate subsystem index");
  }
  if (keep.front() < 0 || keep.back() >= static_cast<Index>(dims.size())) {
    throw std::invalid_argument("partial_trace: subsystem index out of range");
  }

  std::vector<Index> traced;
  for (Index i = 0; i < static_cast<Index>(dims.size()); ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
  }

  const auto strides = detail::dims_strides(dims);
  Index keep_dim = 1, traced_dim = 1;
  for (Index i : keep) keep_dim *= dims[i];
  for (Index i : traced) traced_dim *= dims[i];

  // Base label of the r-th kept (resp. t-th traced) configuration, with all
  // other factors at 0.
  const auto base_labels = [&](const std::vector<Index>& subs, Index count) {
    std::vector<Index> labels(count);
    for (Index v = 0; v < count; ++v) {
      Index rem = v, label = 0;
      for (std::size_t i = subs.size(); i-- > 0;) {
        const Index d = dims[subs[i]];
        label += (rem % d) * strides[subs[i]];
        rem /= d;
      }
      labels[v] = label;
    }
    return labels;
  };
  const std::vector<Index> keep_labels = base_labels(keep, keep_dim);
  const std::vector<Index> traced_labels = base_labels(traced, traced_dim);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
  for (Index r = 0; r < keep_dim; ++r) {
    for (Index c = 0; c < keep_dim; ++c) {
      Complex acc = 0.0;
      for (Index t = 0; t < traced_dim; ++t) {
        acc += m(keep_labels[r] + traced_labels[t],
                 keep_labels[c] + traced_labels[t]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

// Dense density operator over an ordered list of subsystem dimensions.
// Construction enforces shape, finiteness, Hermiticity and unit trace;
// positivity is checked on the validate_density path (it needs a full
// eigendecomposition) and is preserved by every map this library applies.
struct MultipartiteDensity {
  Eigen::MatrixXcd matrix;
  std::vector<Index> dims;

  MultipartiteDensity(Eigen::MatrixXcd m, std::vector<Index> d,
                      const DensityTolerances& tol = {})
      : matrix(std::move(m)), dims(std::move(d)) {
    const Index total = detail::dims_product(dims);
    if (matrix.rows() != matrix.cols()) {
      throw std::invalid_argument("density matrix must be square");
    }
    if (matrix.rows() != total) {
      throw std::invalid_argument(
          "density matrix side does not match the product of dims");
    }
    if (matrix.rows() > kDenseDimensionCap) {
      throw dimension_limit_error("density dimension exceeds the dense cap");
    }
    if (!matrix.allFinite()) {
      throw std::invalid_argument("density matrix has non-finite entries");
    }
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.herm) {
      throw std::invalid_argument("density matrix is not Hermitian (defect " +
                                  std::to_string(herm) + ")");
    }
    const double tr_dev = std::abs(matrix.trace() - Complex(1.0));
    if (tr_dev > tol.trace) {
      throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                  std::to_string(tr_dev));
    }
  }

  Index dimension() const { return matrix.rows(); }
};

struct DensityViolation {
  std::string invariant;
  double magnitude = 0.0;
};

struct DensityReport {
  std::vector<DensityViolation> violations;

  bool valid() const { return violations.empty(); }

  std::string to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) {
      os << v.invariant << " (magnitude " << v.magnitude << ")\n";
    }
    return os.str();
  }
};

// Full density check: Hermiticity, trace, and positivity via a Hermitian
// eigendecomposition. Returns the validated density or a report naming each
// violated invariant with its measured magnitude.
inline std::variant<MultipartiteDensity, DensityReport> validate_density(
    const Eigen::MatrixXcd& m, const std::vector<Index>& dims,
    const DensityTolerances& tol = {}) {
  const Index total = detail::dims_product(dims);
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("validate_density: matrix must be square");
  }
  if (m.rows() != total) {
    throw std::invalid_argument(
        "validate_density: matrix side does not match the product of dims");
  }

  DensityReport report;
  if (!m.allFinite()) {
    report.violations.push_back({"finite entries", 0.0});
    return report;
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.herm) {
    report.violations.push_back({"Hermiticity", herm});
  }
  const double tr_dev = std::abs(m.trace() - Complex(1.0));
  if (tr_dev > tol.trace) {
    report.violations.push_back({"unit trace", tr_dev});
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      ((m + m.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    report.violations.push_back({"positivity", -min_eig});
  }
  if (!report.valid()) return report;
  return MultipartiteDensity(m, dims, tol);
}

// Partial trace keeping the listed subsystems; trace and Hermiticity carry
// over, so the result is again a density.
inline MultipartiteDensity partial_trace(const MultipartiteDensity& state,
                                         std::vector<SubsystemIndex> keep) {
  Eigen::MatrixXcd reduced =
      partial_trace_matrix(state.matrix, state.dims, keep);
  std::sort(keep.begin(), keep.end());
  std::vector<Index> kept_dims;
  kept_dims.reserve(keep.size());
  for (Index i : keep) kept_dims.push_back(state.dims[i]);
  return MultipartiteDensity(std::move(reduced), std::move(kept_dims));
}

// (1/2) Σ |eigenvalues(a − b)| for Hermitian a, b.
inline double trace_distance_matrix(const Eigen::MatrixXcd& a,
                                    const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: shape mismatch");
  }
  Eigen::MatrixXcd diff = a - b;
  diff = ((diff + diff.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const MultipartiteDensity& a,
                             const MultipartiteDensity& b) {
  if (a.dims != b.dims) {
    throw std::invalid_argument("trace_distance: dims mismatch");
  }
  return trace_distance_matrix(a.matrix, b.matrix);
}

}  // namespace qclone
