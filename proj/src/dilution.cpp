#include "rotforge/dilution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rotforge/density.hpp"
#include "rotforge/gates.hpp"

namespace rotforge {

DilutionResult dilute(int level, double eps_in) {
    if (level < 2) throw std::invalid_argument("dilute: level must be >= 2");
    if (!(eps_in >= 0.0 && eps_in < 0.5))
        throw std::invalid_argument("dilute: eps_in must be in [0, 1/2)");
    DilutionResult r;
    r.lambda = 1.0 / (2.0 * (1.0 - eps_in));
    r.eps_out = 0.5 * (1.0 - (1.0 - 2.0 * eps_in) * std::cos(theta_level(level)) / (1.0 - eps_in));
    r.cost_factor = r.lambda;
    return r;
}

double critical_level(double eps) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("critical_level: eps must be in (0, 1/2)");
    return std::log2(std::numbers::pi / std::sqrt(2.0 * eps));
}

double plus_substitute_error(int level) {
    if (level < 2) throw std::invalid_argument("plus_substitute_error: level must be >= 2");
    return std::abs(std::sin(theta_level(level)));
}

double verify_dilution_identity(int level, double eps) {
    DilutionResult r = dilute(level, eps);
    Matrix plus = ket_plus() * ket_plus().adjoint();
    Matrix mixed = r.lambda * noisy_magic_state(level, eps) + (1.0 - r.lambda) * plus;
    Matrix target = noisy_magic_state(level + 1, r.eps_out);
    return trace_distance(mixed, target);
}

}  // namespace rotforge
