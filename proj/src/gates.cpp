#include "rotforge/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotforge {

double theta_level(int level) {
    if (level < 0 || level > 62) throw std::invalid_argument("theta_level: level out of range");
    return std::numbers::pi / std::pow(2.0, level);
}

Matrix rot_y(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("rot_y: theta must be finite");
    Matrix m(2, 2);
    double c = std::cos(theta), s = std::sin(theta);
    m << c, s, -s, c;
    return m;
}

Matrix h_level(int level) {
    if (level < 1) throw std::invalid_argument("h_level: level must be >= 1");
    return rot_y(theta_level(level - 1)) * gate_x();
}

Vector ket_plus() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

Vector ket_minus() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return v;
}

Vector ket0() {
    Vector v(2);
    v << 1.0, 0.0;
    return v;
}

Vector ket1() {
    Vector v(2);
    v << 0.0, 1.0;
    return v;
}

Vector magic_ket(int level) {
    if (level < 1) throw std::invalid_argument("magic_ket: level must be >= 1");
    return rot_y(theta_level(level)) * ket_plus();
}

Vector magic_bar_ket(int level) {
    if (level < 1) throw std::invalid_argument("magic_bar_ket: level must be >= 1");
    return rot_y(theta_level(level)) * ket_minus();
}

Matrix noisy_magic_state(int level, double eps) {
    if (eps < 0.0 || eps >= 0.5)
        throw std::invalid_argument("noisy_magic_state: eps must be in [0, 1/2)");
    Vector m = magic_ket(level), mb = magic_bar_ket(level);
    return (1.0 - eps) * (m * m.adjoint()) + eps * (mb * mb.adjoint());
}

const Matrix& gate_x() { return pauli_matrix_1q(Pauli::X); }
const Matrix& gate_y() { return pauli_matrix_1q(Pauli::Y); }
const Matrix& gate_z() { return pauli_matrix_1q(Pauli::Z); }

const Matrix& gate_h() {
    static const Matrix h = [] {
        Matrix m(2, 2);
        double s = 1.0 / std::sqrt(2.0);
        m << s, s, s, -s;
        return m;
    }();
    return h;
}

const Matrix& gate_cx() {
    static const Matrix m = [] {
        Matrix g = Matrix::Zero(4, 4);
        g(0, 0) = 1;
        g(1, 1) = 1;
        g(2, 3) = 1;
        g(3, 2) = 1;
        return g;
    }();
    return m;
}

const Matrix& gate_cz() {
    static const Matrix m = [] {
        Matrix g = Matrix::Identity(4, 4);
        g(3, 3) = -1;
        return g;
    }();
    return m;
}

Gate::Gate(Matrix u, std::vector<int> s) : unitary(std::move(u)), support(std::move(s)) {
    const Eigen::Index dim = Eigen::Index(1) << support.size();
    if (unitary.rows() != dim || unitary.cols() != dim)
        throw std::invalid_argument("Gate: matrix dimension does not match support");
    if (!is_unitary(unitary)) throw std::invalid_argument("Gate: matrix is not unitary");
}

Matrix Gate::embedded(int n_qubits) const {
    return embed(unitary, std::span<const int>(support), n_qubits);
}

NoisyRotationChannel::NoisyRotationChannel(double theta_, double eta_) : theta(theta_), eta(eta_) {
    if (eta < 0.0 || eta > 0.5)
        throw std::invalid_argument("NoisyRotationChannel: eta must be in [0, 1/2]");
}

Matrix NoisyRotationChannel::apply(const Matrix& rho) const {
    Matrix u = rot_y(theta);
    Matrix ideal = u * rho * u.adjoint();
    return (1.0 - eta) * ideal + eta * gate_y() * ideal * gate_y().adjoint();
}

}  // namespace rotforge
