#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace rotforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kTol = 1e-10;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Embeds a gate acting on `support` (ordered qubit indices) into an n-qubit
/// operator. Qubit 0 is the most significant bit of the basis index.
Matrix embed(const Matrix& gate, std::span<const int> support, int n_qubits);

inline Matrix embed(const Matrix& gate, std::initializer_list<int> support, int n_qubits) {
    std::vector<int> s(support);
    return embed(gate, std::span<const int>(s), n_qubits);
}

bool is_unitary(const Matrix& u, double tol = 1e-12);
bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// Largest |entry| of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Deviation between u and v ignoring global phase: align v by the phase of
/// tr(u^dag v) and return the largest entrywise difference.
double phase_aligned_deviation(const Matrix& u, const Matrix& v);

inline bool equal_up_to_phase(const Matrix& u, const Matrix& v, double tol = kTol) {
    return phase_aligned_deviation(u, v) <= tol;
}

}  // namespace rotforge
