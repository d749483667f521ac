#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotforge/linalg.hpp"

namespace rotforge {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
const Matrix& pauli_matrix_1q(Pauli p);

/// Signed n-qubit tensor product of single-qubit Pauli operators.
/// The phase is i^k, k in {0,1,2,3}.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> letters, int phase_power = 0);

    /// Parses e.g. "+XIZY", "-iZZ", "YY". Phase prefix is optional.
    static PauliString parse(const std::string& text);

    /// Single nontrivial letter at `qubit` of an otherwise-identity string.
    static PauliString single(int width, int qubit, Pauli p);
    static PauliString identity(int width);

    int width() const { return static_cast<int>(letters_.size()); }
    Pauli letter(int q) const { return letters_.at(q); }
    const std::vector<Pauli>& letters() const { return letters_; }
    int phase_power() const { return phase_; }
    Complex phase() const;

    bool is_identity_letters() const;
    int weight() const;  // number of non-identity letters

    PauliString operator*(const PauliString& rhs) const;
    bool commutes_with(const PauliString& rhs) const;
    /// P^2 is +I or -I; returns the sign.
    int square_sign() const;

    PauliString with_phase_power(int k) const;

    Matrix matrix() const;
    std::string str() const;

    bool operator==(const PauliString& rhs) const = default;

    /// Recognizes a matrix as phase * PauliString (phase any i^k), if it is one.
    static std::optional<PauliString> from_matrix(const Matrix& m, double tol = kTol);

private:
    std::vector<Pauli> letters_;
    int phase_ = 0;  // phase is i^phase_
};

}  // namespace rotforge
