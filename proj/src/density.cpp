#include "rotforge/density.hpp"

#include <stdexcept>

namespace rotforge {

DensityOperator::DensityOperator(Matrix m, int n) : matrix(std::move(m)), n_qubits(n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw std::invalid_argument("DensityOperator: dimension mismatch");
}

DensityOperator DensityOperator::from_ket(const Vector& psi) {
    int n = 0;
    while ((Eigen::Index(1) << n) < psi.size()) ++n;
    if ((Eigen::Index(1) << n) != psi.size())
        throw std::invalid_argument("from_ket: length must be a power of two");
    return DensityOperator(psi * psi.adjoint(), n);
}

DensityOperator DensityOperator::product(const std::vector<Matrix>& one_qubit_states) {
    if (one_qubit_states.empty()) throw std::invalid_argument("product: empty state list");
    Matrix m = one_qubit_states[0];
    for (size_t i = 1; i < one_qubit_states.size(); ++i) m = kron(m, one_qubit_states[i]);
    return DensityOperator(std::move(m), static_cast<int>(one_qubit_states.size()));
}

bool DensityOperator::is_valid(double tol) const {
    if (!is_hermitian(matrix, tol)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) return false;
    double t = trace();
    return t > 0.0 && t <= 1.0 + tol;
}

DensityOperator apply_gate(const DensityOperator& rho, const Gate& g) {
    Matrix u = g.embedded(rho.n_qubits);
    return DensityOperator(u * rho.matrix * u.adjoint(), rho.n_qubits);
}

DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& full_u) {
    if (full_u.rows() != rho.matrix.rows())
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    return DensityOperator(full_u * rho.matrix * full_u.adjoint(), rho.n_qubits);
}

DensityOperator postselect(const DensityOperator& rho, int qubit, Pauli observable, int outcome) {
    if (observable == Pauli::I) throw std::invalid_argument("postselect: observable must be X, Y or Z");
    if (outcome != 1 && outcome != -1) throw std::invalid_argument("postselect: outcome must be +-1");
    Matrix proj1q = 0.5 * (Matrix::Identity(2, 2) + double(outcome) * pauli_matrix_1q(observable));
    Matrix p = embed(proj1q, {qubit}, rho.n_qubits);
    return DensityOperator(p * rho.matrix * p, rho.n_qubits);
}

DensityOperator partial_trace(const DensityOperator& rho, int drop_qubit) {
    if (rho.n_qubits < 2) throw std::invalid_argument("partial_trace: width must be >= 2");
    if (drop_qubit < 0 || drop_qubit >= rho.n_qubits)
        throw std::out_of_range("partial_trace: qubit out of range");
    const int n = rho.n_qubits;
    const int shift = n - 1 - drop_qubit;
    const Eigen::Index out_dim = Eigen::Index(1) << (n - 1);
    const Eigen::Index low_mask = (Eigen::Index(1) << shift) - 1;

    auto expand = [&](Eigen::Index idx, Eigen::Index bit) {
        return ((idx & ~low_mask) << 1) | (bit << shift) | (idx & low_mask);
    };

    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (Eigen::Index r = 0; r < out_dim; ++r)
        for (Eigen::Index c = 0; c < out_dim; ++c)
            for (Eigen::Index b = 0; b < 2; ++b) out(r, c) += rho.matrix(expand(r, b), expand(c, b));
    return DensityOperator(std::move(out), n - 1);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Matrix diff = rho - sigma;
    // the difference of Hermitian operators is Hermitian; 1-norm = sum |eigenvalues|
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    return trace_distance(rho.matrix, sigma.matrix);
}

double diagonal_error(const Matrix& rho, const Vector& psi) {
    if (rho.rows() != psi.size()) throw std::invalid_argument("diagonal_error: dimension mismatch");
    return 1.0 - (psi.adjoint() * rho * psi)(0, 0).real();
}

double diagonal_error(const DensityOperator& rho, const Vector& psi) {
    return diagonal_error(rho.matrix, psi);
}

}  // namespace rotforge
