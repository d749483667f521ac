#include "rotforge/clifford.hpp"

#include <stdexcept>

namespace rotforge {

bool CliffordSpec::preserves_commutation() const {
    std::vector<PauliString> gens, imgs;
    for (int q = 0; q < n_qubits; ++q) {
        gens.push_back(PauliString::single(n_qubits, q, Pauli::Z));
        gens.push_back(PauliString::single(n_qubits, q, Pauli::X));
        imgs.push_back(z_images[q]);
        imgs.push_back(x_images[q]);
    }
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i].commutes_with(gens[j]) != imgs[i].commutes_with(imgs[j])) return false;
    return true;
}

PauliString CliffordSpec::image(const PauliString& p) const {
    if (p.width() != n_qubits) throw std::invalid_argument("CliffordSpec::image: width mismatch");
    // decompose into X^x Z^z with a phase correction of i per Y letter,
    // then conjugate factor by factor
    int phase = p.phase_power();
    PauliString img_x = PauliString::identity(n_qubits);
    PauliString img_z = PauliString::identity(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        Pauli l = p.letter(q);
        bool has_x = (l == Pauli::X || l == Pauli::Y);
        bool has_z = (l == Pauli::Z || l == Pauli::Y);
        if (l == Pauli::Y) phase += 1;  // Y = i X Z
        if (has_x) img_x = img_x * x_images[q];
        if (has_z) img_z = img_z * z_images[q];
    }
    PauliString out = img_x * img_z;
    return out.with_phase_power(out.phase_power() + phase);
}

CliffordSpec encoder_spec() {
    CliffordSpec s;
    s.n_qubits = 4;
    s.z_images = {
        PauliString::parse("ZZZZ"),
        PauliString::parse("XXXX"),
        PauliString::parse("ZIIZ"),
        PauliString::parse("XIIX"),
    };
    s.x_images = {
        PauliString::parse("XIXX"),
        PauliString::parse("IZII"),
        PauliString::parse("XIXI"),
        PauliString::parse("ZIZI"),
    };
    return s;
}

Matrix clifford_unitary(const CliffordSpec& spec) {
    const int n = spec.n_qubits;
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (!spec.preserves_commutation())
        throw std::invalid_argument("clifford_unitary: table breaks commutation relations");

    // |psi0> = image of |0..0>, the joint +1 eigenstate of the Z images
    Matrix proj = Matrix::Identity(dim, dim);
    for (int q = 0; q < n; ++q)
        proj = proj * 0.5 * (Matrix::Identity(dim, dim) + spec.z_images[q].matrix());
    Vector psi0;
    double best = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c) {
        double norm = proj.col(c).norm();
        if (norm > best) {
            best = norm;
            psi0 = proj.col(c) / norm;
        }
    }
    if (best < 1e-8) throw std::runtime_error("clifford_unitary: stabilized state not found");
    // fix the free phase: largest amplitude real positive
    Eigen::Index imax = 0;
    psi0.cwiseAbs().maxCoeff(&imax);
    psi0 *= std::conj(psi0(imax)) / std::abs(psi0(imax));

    // column b is (image of X^b) |psi0>
    Matrix u(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Vector col = psi0;
        for (int q = 0; q < n; ++q)
            if ((b >> (n - 1 - q)) & 1) col = spec.x_images[q].matrix() * col;
        u.col(b) = col;
    }
    if (!is_unitary(u)) throw std::runtime_error("clifford_unitary: construction not unitary");
    return u;
}

const Encoder& build_encoder() {
    static const Encoder enc = [] {
        Encoder e;
        e.spec = encoder_spec();
        e.unitary = clifford_unitary(e.spec);
        return e;
    }();
    return enc;
}

CliffordSpec spec_of_unitary(const Matrix& u, int n_qubits) {
    CliffordSpec s;
    s.n_qubits = n_qubits;
    for (int q = 0; q < n_qubits; ++q) {
        for (Pauli p : {Pauli::Z, Pauli::X}) {
            Matrix img = u * PauliString::single(n_qubits, q, p).matrix() * u.adjoint();
            auto ps = PauliString::from_matrix(img);
            if (!ps) throw std::runtime_error("spec_of_unitary: image is not a Pauli string");
            (p == Pauli::Z ? s.z_images : s.x_images).push_back(*ps);
        }
    }
    return s;
}

}  // namespace rotforge
