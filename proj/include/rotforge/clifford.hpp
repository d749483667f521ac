#pragma once

#include <utility>
#include <vector>

#include "rotforge/pauli.hpp"

namespace rotforge {

/// Conjugation table of an n-qubit Clifford: images of the generators
/// Z_0..Z_{n-1}, X_0..X_{n-1} under U P U^dag.
struct CliffordSpec {
    int n_qubits = 0;
    std::vector<PauliString> z_images;
    std::vector<PauliString> x_images;

    /// Images must preserve all pairwise (anti)commutation relations.
    bool preserves_commutation() const;

    /// Image of an arbitrary PauliString under the table.
    PauliString image(const PauliString& p) const;
};

/// Conjugation action of the four-qubit encoder used by the distillation
/// circuits. Qubits are numbered 0..3 here (circuit qubits 1..4).
CliffordSpec encoder_spec();

/// Dense unitary realizing a conjugation table, built by mapping the
/// stabilizer state fixed by the Z images. Unique up to global phase.
Matrix clifford_unitary(const CliffordSpec& spec);

/// The encoder as spec + matrix; the matrix satisfies E P E^dag = spec.image(P).
struct Encoder {
    CliffordSpec spec;
    Matrix unitary;  // 16 x 16
};

const Encoder& build_encoder();

/// Conjugation table of an explicit unitary, recovered numerically.
/// Throws if some image fails to be a Pauli string.
CliffordSpec spec_of_unitary(const Matrix& u, int n_qubits);

}  // namespace rotforge
