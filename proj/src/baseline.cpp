#include "qclone/baseline.hpp"

#include "qclone/dicke.hpp"
#include "qclone/linalg.hpp"

namespace qclone {

Eigen::Matrix4cd symmetric_projector() {
  const Eigen::Vector4cd singlet = chi_basis()[3];
  return Eigen::Matrix4cd::Identity() - singlet * singlet.adjoint();
}

WernerOutput werner_2to2(const QubitDensity& rho) {
  const Eigen::Matrix4cd two_copies =
      tensor_product(rho.matrix(), rho.matrix());
  const Eigen::Matrix4cd projector = symmetric_projector();
  const Eigen::Matrix4cd projected = projector * two_copies * projector;

  WernerOutput out;
  out.probability = projected.trace().real();
  const MultipartiteDensity conditional((projected / out.probability).eval(),
                                        {2, 2});
  out.marginal = partial_trace(conditional, {0}).matrix;
  return out;
}

double nonuniversality_gap(const QubitDensity& rho) {
  return trace_distance_matrix(werner_2to2(rho).marginal, rho.matrix());
}

}  // namespace qclone
