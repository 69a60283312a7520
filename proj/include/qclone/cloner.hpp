#pragma once

#include <Eigen/Dense>

#include "qclone/linalg.hpp"
#include "qclone/states.hpp"

namespace qclone {

// Largest M the dense isometry/channel path accepts by default. Larger M is
// served by analytic_reduced, which is closed-form in M.
inline constexpr int kDefaultMaxDenseQubits = 12;

// Machine coefficient α_{jk}, j in {0,1,2}, k in 0..M-2. The factorial ratio
// defining it collapses to
//   α_0k² = 3 (M-k)(M-k-1) / P
//   α_1k² = 6 (M-1-k)(k+1) / P      with P = (M+1) M (M-1),
//   α_2k² = 3 (k+1)(k+2)  / P
// which stays finite and accurate to a few ulps for M far beyond 10^6.
double alpha(int m_copies, int j, int k);

// |Σ_k α_{jk}² − 1| with deterministic ascending-k compensated summation.
double alpha_normalization_defect(int m_copies, int j);

// All α for one M, laid out as a(j, k).
struct CloneCoefficients {
  int m_copies = 0;
  Eigen::Matrix<double, 3, Eigen::Dynamic> a;
};

CloneCoefficients clone_coefficients(int m_copies);

// Matrix of the machine restricted to span(χ_0..χ_3) ⊗ blank/ancilla:
// (2^M (M-1)) x 4, columns indexed by χ_0..χ_3, ancilla as the last
// (M-1)-dimensional factor. Column 3 reuses the α_{1k} weights on the phased
// sectors; V†V = I₄.
struct CloningIsometry {
  int m_copies = 0;
  Eigen::MatrixXcd matrix;

  Index qubit_dimension() const { return Index{1} << m_copies; }
  Index ancilla_dimension() const { return m_copies - 1; }

  // Rows of the k-th ancilla block: a 2^M x 4 slice of `matrix`.
  Eigen::MatrixXcd ancilla_block(int k) const;
};

CloningIsometry build_isometry(int m_copies,
                               int max_dense_qubits = kDefaultMaxDenseQubits);

// Immutable per-M cache (single writer, shared readers).
const CloningIsometry& cached_isometry(
    int m_copies, int max_dense_qubits = kDefaultMaxDenseQubits);

// Tr_ancilla V C V† for an arbitrary coefficient matrix C on the χ basis,
// evaluated one ancilla block at a time so the (2^M (M-1))-dimensional square
// intermediate is never formed. Linear in C; accepts non-Hermitian C so
// single basis blocks A_ij can be pushed through.
Eigen::MatrixXcd apply_channel(const Eigen::Matrix4cd& chi_coefficients,
                               const CloningIsometry& isometry);

// The 2→M machine on ρ⊗ρ: expand in the χ basis, conjugate by the isometry,
// trace out the ancilla. Output is an M-qubit density.
MultipartiteDensity clone_channel(
    const QubitDensity& rho, int m_copies,
    int max_dense_qubits = kDefaultMaxDenseQubits);

Eigen::Matrix2cd reduced_single_qubit(const MultipartiteDensity& out,
                                      Index which);

// Single-qubit reduction of the machine output assembled from the closed-form
// per-block marginals:
//   Tr ρ_00 = diag((3M+2)/4M, (M-2)/4M)     Tr ρ_22 = the ↑↓ mirror
//   Tr ρ_11 = Tr ρ_33 = I/2
//   Tr ρ_01 = Tr ρ_12 = √2(M+2)/4M |↑⟩⟨↓|   (adjoints for ρ_10, ρ_21)
//   Tr ρ_02 = 0                              (sectors two spins apart)
// Pure arithmetic in M; valid for arbitrarily large M.
Eigen::Matrix2cd analytic_reduced(const QubitDensity& rho, int m_copies);

struct ShrinkReport {
  double f = 0.0;
  double residual = 0.0;
  double predicted = 0.0;  // NaN when M was not supplied
};

// Projects the output Bloch vector onto the input's direction: f is the
// parallel gain, residual the orthogonal leakage plus any trace deviation.
// A universal channel output leaves residual at roundoff level.
ShrinkReport shrink_fit(const QubitDensity& input,
                        const Eigen::Matrix2cd& output_marginal);
ShrinkReport shrink_fit(const QubitDensity& input,
                        const Eigen::Matrix2cd& output_marginal, int m_copies);

// (M+2)/(2M): 1 at M=2, strictly decreasing, limit 1/2.
double predicted_f(int m_copies);

}  // namespace qclone
