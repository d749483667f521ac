#pragma once

#include <vector>

#include "rotforge/linalg.hpp"
#include "rotforge/pauli.hpp"

namespace rotforge {

/// Rotation angle of the level-l axial rotation, pi / 2^l.
double theta_level(int level);

/// exp(i theta Y) as a 2x2 unitary.
Matrix rot_y(double theta);

/// The Hermitian reflection H_l = R_{l-1} X = exp(i theta_{l-1} Y) X.
/// H_3 is the Hadamard.
Matrix h_level(int level);

/// Magic-state kets: |M_l> = R_l|+>, its orthogonal partner |Mbar_l> = R_l|->.
Vector magic_ket(int level);
Vector magic_bar_ket(int level);

/// Diagonal noisy magic state (1-eps)|M_l><M_l| + eps|Mbar_l><Mbar_l|.
Matrix noisy_magic_state(int level, double eps);

Vector ket_plus();
Vector ket_minus();
Vector ket0();
Vector ket1();

const Matrix& gate_x();
const Matrix& gate_y();
const Matrix& gate_z();
const Matrix& gate_h();
const Matrix& gate_cx();  // control = first qubit
const Matrix& gate_cz();

/// A dense unitary together with the ordered qubit indices it acts on.
struct Gate {
    Matrix unitary;
    std::vector<int> support;

    Gate(Matrix u, std::vector<int> s);
    Matrix embedded(int n_qubits) const;
};

/// Y-flip noise attached to a y-axis rotation: applies exp(i theta Y), then Y
/// with probability eta. For this Pauli channel the diamond distance to the
/// ideal rotation equals eta.
struct NoisyRotationChannel {
    double theta = 0.0;
    double eta = 0.0;

    NoisyRotationChannel(double theta_, double eta_);
    Matrix apply(const Matrix& rho) const;
    double diamond_distance_to_ideal() const { return eta; }
};

}  // namespace rotforge
