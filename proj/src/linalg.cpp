#include "rotforge/linalg.hpp"

namespace rotforge {

Matrix embed(const Matrix& gate, std::span<const int> support, int n_qubits) {
    const int k = static_cast<int>(support.size());
    const Eigen::Index gdim = Eigen::Index(1) << k;
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    if (gate.rows() != gdim || gate.cols() != gdim)
        throw std::invalid_argument("embed: gate dimension does not match support size");
    for (int q : support)
        if (q < 0 || q >= n_qubits) throw std::out_of_range("embed: support qubit out of range");

    // bit position of qubit q in the basis index (qubit 0 = MSB)
    std::vector<int> shift(k);
    for (int i = 0; i < k; ++i) shift[i] = n_qubits - 1 - support[i];

    Eigen::Index rest_mask = dim - 1;
    for (int s : shift) rest_mask &= ~(Eigen::Index(1) << s);

    Matrix out = Matrix::Zero(dim, dim);
    // enumerate assignments of the non-support bits
    for (Eigen::Index rest = 0;; rest = (rest - rest_mask) & rest_mask) {
        for (Eigen::Index a = 0; a < gdim; ++a) {
            Eigen::Index row = rest;
            for (int i = 0; i < k; ++i)
                if ((a >> (k - 1 - i)) & 1) row |= Eigen::Index(1) << shift[i];
            for (Eigen::Index b = 0; b < gdim; ++b) {
                if (gate(a, b) == Complex(0.0, 0.0)) continue;
                Eigen::Index col = rest;
                for (int i = 0; i < k; ++i)
                    if ((b >> (k - 1 - i)) & 1) col |= Eigen::Index(1) << shift[i];
                out(row, col) = gate(a, b);
            }
        }
        if (rest == rest_mask) break;
    }
    return out;
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    Matrix id = Matrix::Identity(u.rows(), u.cols());
    return max_abs_diff(u.adjoint() * u, id) <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs_diff(m, m.adjoint()) <= tol;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double phase_aligned_deviation(const Matrix& u, const Matrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw std::invalid_argument("phase_aligned_deviation: dimension mismatch");
    Complex t = (u.adjoint() * v).trace();
    Complex phase = std::abs(t) > 1e-14 ? t / std::abs(t) : Complex(1.0, 0.0);
    return max_abs_diff(u * phase, v);
}

}  // namespace rotforge
