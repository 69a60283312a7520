#pragma once

#include <Eigen/Dense>

#include "qclone/states.hpp"

namespace qclone {

// Projector onto the two-qubit symmetric subspace span(χ_0, χ_1, χ_2),
// i.e. I₄ − χ_3 χ_3†.
Eigen::Matrix4cd symmetric_projector();

struct WernerOutput {
  Eigen::Matrix2cd marginal;  // conditional (renormalized) single-qubit output
  double probability = 0.0;   // Tr[P (ρ⊗ρ) P] = 1 − det ρ
};

// Symmetric-projection 2→2 cloning: project ρ⊗ρ onto the symmetric subspace,
// renormalize, reduce to one qubit. The singlet component is deleted, which
// is what breaks universality on mixed inputs.
WernerOutput werner_2to2(const QubitDensity& rho);

// Trace distance between the projected output marginal and the input; zero
// iff ρ is pure or maximally mixed.
double nonuniversality_gap(const QubitDensity& rho);

}  // namespace qclone
