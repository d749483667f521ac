#include "rotforge/circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace rotforge {

namespace {

constexpr int kN = 5;  // c,1,2,3,4

CircuitOp clifford_op(Matrix u, std::string label) {
    CircuitOp op;
    op.kind = OpKind::Clifford;
    op.unitary = std::move(u);
    op.label = std::move(label);
    return op;
}

CircuitOp noisy_site(const Matrix& u, int qubit, std::string label) {
    CircuitOp op;
    op.kind = OpKind::NoisySite;
    op.unitary = u;
    op.error_unitary = embed(gate_y(), {qubit}, kN) * u;
    op.label = std::move(label);
    return op;
}

// pivotal rotation exp(i angle axis) with the site's error Pauli applied after
CircuitOp pivotal_site(const Matrix& axis, double angle, const Matrix& error_pauli,
                       std::string label) {
    CircuitOp op;
    op.kind = OpKind::PivotalSite;
    op.axis = axis;
    op.angle = angle;
    const Eigen::Index dim = axis.rows();
    op.unitary = std::cos(angle) * Matrix::Identity(dim, dim) + Complex(0, 1) * std::sin(angle) * axis;
    op.error_unitary = error_pauli * op.unitary;
    op.label = std::move(label);
    return op;
}

// cH_{c,j} decomposed for injection: R3^dag(j), CX(c,j), R3(j); two noisy sites
void push_controlled_hadamard(std::vector<CircuitOp>& ops, int j) {
    Matrix r3 = embed(rot_y(theta_level(3)), {j}, kN);
    Matrix r3d = embed(rot_y(-theta_level(3)), {j}, kN);
    ops.push_back(noisy_site(r3d, j, "R3dag q" + std::to_string(j)));
    ops.push_back(clifford_op(embed(gate_cx(), {0, j}, kN), "CX c," + std::to_string(j)));
    ops.push_back(noisy_site(r3, j, "R3 q" + std::to_string(j)));
}

Matrix encoder_embedded() {
    static const Matrix e = embed(build_encoder().unitary, {1, 2, 3, 4}, kN);
    return e;
}

void finish(Circuit& c) {
    c.postselections = {{0, Pauli::X, +1}, {1, Pauli::Z, +1}, {2, Pauli::Z, +1}};
    c.output_qubits = {3, 4};
}

}  // namespace

int Circuit::noisy_site_count() const {
    int k = 0;
    for (const auto& op : ops)
        if (op.kind == OpKind::NoisySite) ++k;
    return k;
}

int Circuit::pivotal_site_count() const {
    int k = 0;
    for (const auto& op : ops)
        if (op.kind == OpKind::PivotalSite) ++k;
    return k;
}

Matrix Circuit::pivotal_unitary(double alpha) const {
    for (const auto& op : ops)
        if (op.kind == OpKind::PivotalSite) {
            const Eigen::Index dim = op.axis.rows();
            return std::cos(op.angle + alpha) * Matrix::Identity(dim, dim) +
                   Complex(0, 1) * std::sin(op.angle + alpha) * op.axis;
        }
    throw std::logic_error("Circuit: no pivotal site");
}

Circuit build_dpl_circuit(int level) {
    if (level < 3) throw std::invalid_argument("build_dpl_circuit: level must be >= 3");
    Circuit c;
    c.protocol = Protocol::Dp;
    c.level = level;

    Matrix e = encoder_embedded();
    Matrix ed = e.adjoint();

    c.ops.push_back(clifford_op(e, "E"));
    for (int j = 1; j <= 4; ++j) push_controlled_hadamard(c.ops, j);
    c.ops.push_back(clifford_op(ed, "Edag"));
    // pivot on the bare qubit: H_l = R_{l-1} X on qubit 4
    c.ops.push_back(clifford_op(embed(gate_x(), {4}, kN), "X q4"));
    c.ops.push_back(pivotal_site(PauliString::parse("IIIIY").matrix(), theta_level(level - 1),
                                 PauliString::parse("IIIIY").matrix(), "pivot R q4"));
    c.ops.push_back(clifford_op(e, "E"));
    for (int j = 1; j <= 4; ++j) push_controlled_hadamard(c.ops, j);
    c.ops.push_back(clifford_op(ed, "Edag"));

    finish(c);
    return c;
}

Circuit build_mekl_circuit(int level) {
    if (level < 3) throw std::invalid_argument("build_mekl_circuit: level must be >= 3");
    Circuit c;
    c.protocol = Protocol::Mek;
    c.level = level;

    Matrix e = encoder_embedded();
    Matrix cx01 = embed(gate_cx(), {0, 1}, kN);
    Matrix r2 = embed(rot_y(theta_level(2)), {1}, kN);
    Matrix r2d = embed(rot_y(-theta_level(2)), {1}, kN);

    c.ops.push_back(clifford_op(e, "E"));
    push_controlled_hadamard(c.ops, 3);
    push_controlled_hadamard(c.ops, 4);
    c.ops.push_back(clifford_op(cx01, "CX c,1"));
    // V = exp(-i theta_{l-1} Y1 Z3 X4) Z1 Z3, with the site error on the rotation
    c.ops.push_back(clifford_op(PauliString::parse("IZIZI").matrix(), "Z1Z3"));
    c.ops.push_back(pivotal_site(-PauliString::parse("IYIZX").matrix(), theta_level(level - 1),
                                 PauliString::parse("IYIZX").matrix(), "pivot Y1Z3X4"));
    c.ops.push_back(clifford_op(r2d, "R2dag q1"));
    c.ops.push_back(clifford_op(cx01, "CX c,1"));
    c.ops.push_back(clifford_op(r2, "R2 q1"));
    push_controlled_hadamard(c.ops, 3);
    push_controlled_hadamard(c.ops, 4);
    c.ops.push_back(clifford_op(encoder_embedded().adjoint(), "Edag"));

    finish(c);
    return c;
}

Circuit build_circuit(Protocol p, int level) {
    return p == Protocol::Mek ? build_mekl_circuit(level) : build_dpl_circuit(level);
}

Matrix accepted_kraus(const Circuit& c, unsigned x, int y, double pivot_alpha) {
    const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    int site = 0;
    for (const auto& op : c.ops) {
        const Matrix* g = &op.unitary;
        Matrix pivot;
        if (op.kind == OpKind::NoisySite) {
            if ((x >> site) & 1u) g = &op.error_unitary;
            ++site;
        } else if (op.kind == OpKind::PivotalSite) {
            pivot = c.pivotal_unitary(pivot_alpha);
            if (y) pivot = op.error_unitary * op.unitary.adjoint() * pivot;
            g = &pivot;
        }
        u = (*g) * u;
    }

    // contract with <+00| ... |+00> on qubits c,1,2
    Vector bra = kron(kron(ket_plus(), ket0()), ket0());
    Matrix k(4, 4);
    for (Eigen::Index b = 0; b < 4; ++b) {
        Vector in = Vector::Zero(dim);
        for (Eigen::Index a = 0; a < 8; ++a) in(a * 4 + b) = bra(a);
        Vector out = u * in;
        for (Eigen::Index a2 = 0; a2 < 4; ++a2) {
            Complex amp = 0.0;
            for (Eigen::Index a = 0; a < 8; ++a) amp += std::conj(bra(a)) * out(a * 4 + a2);
            k(a2, b) = amp;
        }
    }
    return k;
}

Matrix parity_projector(int level) {
    Matrix h = h_level(level);
    return 0.5 * (Matrix::Identity(4, 4) + kron(h, h));
}

bool CompressionReport::all_pass(double tol) const {
    return v_form_dev <= tol && v_anticommute_dev <= tol && q_anticommute_dev <= tol &&
           d_equals_e_dev <= tol;
}

CompressionReport verify_compression_identities(int level) {
    if (level < 3) throw std::invalid_argument("verify_compression_identities: level must be >= 3");
    CompressionReport rep;
    const double th = theta_level(level - 1);

    // (i) E exp(i th Y4) X4 E^dag = exp(-i th Y1 Z3 X4) Z1 Z3  (on the 4 data qubits)
    const Matrix& e = build_encoder().unitary;
    Matrix lhs = e * embed(rot_y(th), {3}, 4) * embed(gate_x(), {3}, 4) * e.adjoint();
    Matrix axis = PauliString::parse("YIZX").matrix();
    Matrix rot = std::cos(th) * Matrix::Identity(16, 16) - Complex(0, 1) * std::sin(th) * axis;
    Matrix v = rot * PauliString::parse("ZIZI").matrix();
    rep.v_form_dev = max_abs_diff(lhs, v);

    // (ii) V anticommutes with Y1
    Matrix y1 = PauliString::parse("YIII").matrix();
    rep.v_anticommute_dev = max_abs_diff(v * y1, -(y1 * v));

    // (iii) Q = CX_{c,1} R2^dag(1) V CX_{c,1} anticommutes with Y1 (5 qubits)
    Matrix v5 = embed(v, {1, 2, 3, 4}, 5);
    Matrix cx01 = embed(gate_cx(), {0, 1}, 5);
    Matrix q = cx01 * embed(rot_y(-theta_level(2)), {1}, 5) * v5 * cx01;
    Matrix y1_5 = embed(gate_y(), {1}, 5);
    rep.q_anticommute_dev = max_abs_diff(q * y1_5, -(y1_5 * q));

    // (iv) compressed and uncompressed rounds implement the same accepted
    // branch operator at zero site noise, for both pivotal branches
    Circuit dp = build_dpl_circuit(level);
    Circuit mek = build_mekl_circuit(level);
    for (int y = 0; y <= 1; ++y) {
        double dev = phase_aligned_deviation(accepted_kraus(dp, 0, y), accepted_kraus(mek, 0, y));
        rep.d_equals_e_dev = std::max(rep.d_equals_e_dev, dev);
    }
    return rep;
}

double InjectionPlan::total() const {
    double t = 0.0;
    for (auto& [lvl, count] : expected_counts) t += count;
    return t;
}

InjectionPlan injection_plan(int level) {
    if (level < 3) throw std::invalid_argument("injection_plan: level must be >= 3");
    InjectionPlan plan;
    plan.level = level;
    for (int k = level; k >= 3; --k)
        plan.expected_counts.emplace_back(k, std::pow(2.0, k - level));
    return plan;
}

}  // namespace rotforge
