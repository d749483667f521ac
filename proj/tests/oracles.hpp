#pragma once

// Test-side reference implementations, kept independent of the library's
// density-operator evolution: explicit enumeration of every error
// configuration using pure-state branches, with the output error taken from
// the diagonal overlap rather than the 1-norm.

#include "rotforge/circuit.hpp"
#include "rotforge/noise.hpp"

namespace rotforge::testing {

inline Vector branch_state(const Circuit& c, unsigned x, int y, const Vector& in3,
                           const Vector& in4) {
    Vector psi = kron(kron(kron(kron(ket_plus(), ket0()), ket0()), in3), in4);
    int site = 0;
    for (const auto& op : c.ops) {
        const Matrix* g = &op.unitary;
        if (op.kind == OpKind::NoisySite) {
            if ((x >> site) & 1u) g = &op.error_unitary;
            ++site;
        } else if (op.kind == OpKind::PivotalSite) {
            if (y) g = &op.error_unitary;
        }
        psi = (*g) * psi;
    }
    return psi;
}

inline RoundOutcome enumerate_round(const Circuit& c, const NoiseSpec& noise) {
    const int sites = c.noisy_site_count();
    Vector bra = kron(kron(ket_plus(), ket0()), ket0());
    Vector m = magic_ket(c.level), mb = magic_bar_ket(c.level);

    Matrix accepted = Matrix::Zero(4, 4);
    for (int b3 = 0; b3 < 2; ++b3)
        for (int b4 = 0; b4 < 2; ++b4) {
            double p_in = (b3 ? noise.epsl : 1 - noise.epsl) * (b4 ? noise.epsl : 1 - noise.epsl);
            if (p_in == 0.0) continue;
            for (unsigned x = 0; x < (1u << sites); ++x) {
                int w = __builtin_popcount(x);
                double p_x = std::pow(noise.eps3, w) * std::pow(1 - noise.eps3, sites - w);
                if (p_x == 0.0) continue;
                for (int y = 0; y < 2; ++y) {
                    double p = p_in * p_x * (y ? noise.eta : 1 - noise.eta);
                    if (p == 0.0) continue;
                    Vector psi = branch_state(c, x, y, b3 ? mb : m, b4 ? mb : m);
                    Vector v(4);
                    for (int k = 0; k < 4; ++k) {
                        Complex amp = 0.0;
                        for (int a = 0; a < 8; ++a) amp += std::conj(bra(a)) * psi(a * 4 + k);
                        v(k) = amp;
                    }
                    accepted += p * (v * v.adjoint());
                }
            }
        }

    double p_suc = accepted.trace().real();
    // reduce onto qubit 3 by summing out the partner
    Matrix red = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) red(i, j) += accepted(2 * i + k, 2 * j + k);
    red /= p_suc;
    double delta = 1.0 - (m.adjoint() * red * m)(0, 0).real();
    return {delta, p_suc};
}

}  // namespace rotforge::testing
