#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>

#include "qclone/linalg.hpp"

namespace qclone {

std::uint64_t binomial(int n, int k);

// A symmetric sector of n_up + n_down qubits. `phased` selects the variant
// whose r-th term carries the r-th power of a D-th root of unity, D being the
// number of terms; it is orthogonal to the plain equal-phase state and only
// exists for D >= 2.
struct DickeSpec {
  int n_up = 0;
  int n_down = 0;
  bool phased = false;

  DickeSpec(int up, int down, bool with_phases = false);

  int total() const { return n_up + n_down; }
  std::uint64_t term_count() const { return binomial(total(), n_down); }
};

// Equal superposition, amplitude 1/sqrt(D), of every basis string with
// exactly n_down down-spins. Basis labels follow the global convention:
// qubit q sits at bit position (M-1-q), down-spin = set bit.
Eigen::VectorXcd dicke_vector(const DickeSpec& spec);

// Phased variant: the r-th qualifying bitstring in ascending label order gets
// amplitude omega^r / sqrt(D), omega = exp(2*pi*i/D). Ascending labels list
// the terms up-spins-first, i.e. in the order |↑↑↓⟩, |↑↓↑⟩, |↓↑↑⟩ for three
// qubits, so the phases there are 1, omega, omega^2.
Eigen::VectorXcd twiddle_vector(const DickeSpec& spec);

// Two-qubit basis (χ_0, χ_1, χ_2, χ_3): the symmetric triplet followed by the
// singlet (|↑↓⟩ − |↓↑⟩)/√2.
std::array<Eigen::Vector4cd, 4> chi_basis();

// Columns are χ_0..χ_3; unitary change of basis between product and χ
// coordinates.
Eigen::Matrix4cd chi_matrix();

// Single-qubit reduction diag(n_up/M, n_down/M); the phases of the twiddle
// variant drop out, so both flavors share it.
Eigen::Matrix2cd dicke_single_qubit_marginal(const DickeSpec& spec);

}  // namespace qclone
