#include "rotforge/pauli.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rotforge {

namespace {

// product table: PROD[a][b] = (letter, phase power of i) for a*b
struct Prod {
    Pauli letter;
    int phase;
};

constexpr Prod prod_table[4][4] = {
    /* I */ {{Pauli::I, 0}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 0}},
    /* X */ {{Pauli::X, 0}, {Pauli::I, 0}, {Pauli::Z, 1}, {Pauli::Y, 3}},
    /* Y */ {{Pauli::Y, 0}, {Pauli::Z, 3}, {Pauli::I, 0}, {Pauli::X, 1}},
    /* Z */ {{Pauli::Z, 0}, {Pauli::Y, 1}, {Pauli::X, 3}, {Pauli::I, 0}},
};

Matrix make_1q(Pauli p) {
    Matrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -i, i, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw std::invalid_argument("not a Pauli letter");
    }
}

const Matrix& pauli_matrix_1q(Pauli p) {
    static const std::array<Matrix, 4> mats = {make_1q(Pauli::I), make_1q(Pauli::X),
                                               make_1q(Pauli::Y), make_1q(Pauli::Z)};
    return mats[static_cast<size_t>(p)];
}

PauliString::PauliString(std::vector<Pauli> letters, int phase_power)
    : letters_(std::move(letters)), phase_(((phase_power % 4) + 4) % 4) {
    if (letters_.empty()) throw std::invalid_argument("PauliString: width must be >= 1");
}

PauliString PauliString::parse(const std::string& text) {
    size_t i = 0;
    int phase = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') phase = 2;
        ++i;
    }
    if (i < text.size() && text[i] == 'i') {
        phase += 1;
        ++i;
    }
    std::vector<Pauli> ls;
    for (; i < text.size(); ++i) ls.push_back(pauli_from_char(text[i]));
    return PauliString(std::move(ls), phase);
}

PauliString PauliString::single(int width, int qubit, Pauli p) {
    std::vector<Pauli> ls(width, Pauli::I);
    ls.at(qubit) = p;
    return PauliString(std::move(ls));
}

PauliString PauliString::identity(int width) {
    return PauliString(std::vector<Pauli>(width, Pauli::I));
}

Complex PauliString::phase() const {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_];
}

bool PauliString::is_identity_letters() const {
    for (Pauli p : letters_)
        if (p != Pauli::I) return false;
    return true;
}

int PauliString::weight() const {
    int w = 0;
    for (Pauli p : letters_)
        if (p != Pauli::I) ++w;
    return w;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
    if (width() != rhs.width()) throw std::invalid_argument("PauliString: width mismatch");
    std::vector<Pauli> ls(letters_.size());
    int phase = phase_ + rhs.phase_;
    for (size_t q = 0; q < letters_.size(); ++q) {
        Prod pr = prod_table[static_cast<int>(letters_[q])][static_cast<int>(rhs.letters_[q])];
        ls[q] = pr.letter;
        phase += pr.phase;
    }
    return PauliString(std::move(ls), phase);
}

bool PauliString::commutes_with(const PauliString& rhs) const {
    if (width() != rhs.width()) throw std::invalid_argument("PauliString: width mismatch");
    int anti = 0;
    for (size_t q = 0; q < letters_.size(); ++q) {
        Pauli a = letters_[q], b = rhs.letters_[q];
        if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
    }
    return anti % 2 == 0;
}

int PauliString::square_sign() const {
    PauliString sq = (*this) * (*this);
    return sq.phase_power() == 0 ? 1 : -1;
}

PauliString PauliString::with_phase_power(int k) const {
    return PauliString(letters_, k);
}

Matrix PauliString::matrix() const {
    Matrix m = pauli_matrix_1q(letters_[0]);
    for (size_t q = 1; q < letters_.size(); ++q) m = kron(m, pauli_matrix_1q(letters_[q]));
    return phase() * m;
}

std::string PauliString::str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[phase_];
    for (Pauli p : letters_) out += pauli_char(p);
    return out;
}

std::optional<PauliString> PauliString::from_matrix(const Matrix& m, double tol) {
    const Eigen::Index dim = m.rows();
    if (dim != m.cols() || dim == 0 || (dim & (dim - 1)) != 0) return std::nullopt;
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;

    // a Pauli maps |0..0> to a single basis state; that fixes the X pattern
    Eigen::Index xpat = -1;
    for (Eigen::Index r = 0; r < dim; ++r) {
        if (std::abs(m(r, 0)) > 0.5) {
            if (xpat >= 0) return std::nullopt;
            xpat = r;
        } else if (std::abs(m(r, 0)) > tol) {
            return std::nullopt;
        }
    }
    if (xpat < 0) return std::nullopt;

    for (Eigen::Index zpat = 0; zpat < dim; ++zpat) {
        std::vector<Pauli> ls(n);
        for (int q = 0; q < n; ++q) {
            bool x = (xpat >> (n - 1 - q)) & 1;
            bool z = (zpat >> (n - 1 - q)) & 1;
            ls[q] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
        }
        PauliString cand(ls);
        Matrix cm = cand.matrix();
        Complex ratio = m(xpat, 0) / cm(xpat, 0);
        // phase must be a power of i
        int k = -1;
        for (int j = 0; j < 4; ++j) {
            Complex ph = Complex(j == 0 ? 1 : (j == 2 ? -1 : 0), j == 1 ? 1 : (j == 3 ? -1 : 0));
            if (std::abs(ratio - ph) < 1e-6) k = j;
        }
        if (k < 0) continue;
        PauliString withk(ls, k);
        if (max_abs_diff(withk.matrix(), m) <= tol) return withk;
    }
    return std::nullopt;
}

}  // namespace rotforge
