#pragma once

#include "rotforge/gates.hpp"
#include "rotforge/linalg.hpp"
#include "rotforge/pauli.hpp"

namespace rotforge {

/// Subnormalized density operator on n qubits. A trace below 1 records the
/// acceptance probability of earlier postselections.
struct DensityOperator {
    Matrix matrix;
    int n_qubits = 0;

    DensityOperator() = default;
    DensityOperator(Matrix m, int n);

    static DensityOperator from_ket(const Vector& psi);
    static DensityOperator product(const std::vector<Matrix>& one_qubit_states);

    double trace() const { return matrix.trace().real(); }
    /// Hermitian to 1e-12, eigenvalues >= -1e-12, 0 < trace <= 1 + 1e-12.
    bool is_valid(double tol = 1e-12) const;
};

DensityOperator apply_gate(const DensityOperator& rho, const Gate& g);
DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& full_u);

/// Projects onto the `outcome` (+1/-1) eigenspace of the single-qubit
/// observable. The result is NOT renormalized; its trace carries the
/// acceptance probability.
DensityOperator postselect(const DensityOperator& rho, int qubit, Pauli observable, int outcome);

DensityOperator partial_trace(const DensityOperator& rho, int drop_qubit);

/// 1/2 * Schatten-1 distance. Both operators must be normalized.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// 1 - <psi|rho|psi>; matches the trace distance for noise diagonal in a
/// basis containing |psi>.
double diagonal_error(const DensityOperator& rho, const Vector& psi);
double diagonal_error(const Matrix& rho, const Vector& psi);

}  // namespace rotforge
