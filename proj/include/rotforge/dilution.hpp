#pragma once

namespace rotforge {

/// Mixing a level-l magic state with |+> to synthesize a level-(l+1) state.
/// lambda is both the mixing weight on the magic state and the cost factor;
/// the |+> ingredient is a free stabilizer resource.
struct DilutionResult {
    double lambda = 0.5;
    double eps_out = 0.0;
    double cost_factor = 0.5;  // equals lambda
};

/// lambda = 1/(2(1-eps)), eps_out = (1 - (1-2 eps) cos(theta_l)/(1-eps)) / 2.
DilutionResult dilute(int level, double eps_in);

/// Level beyond which dilution reduces error at rate eps:
/// l_c = log2(pi / sqrt(2 eps)).
double critical_level(double eps);

/// Error of using bare |+> in place of |M_l>: |sin(pi / 2^l)|.
double plus_substitute_error(int level);

/// Trace distance between the mixed state lambda rho_{l,eps} + (1-lambda)|+><+|
/// and the level-(l+1) state at the predicted error. Contract: < 1e-12.
double verify_dilution_identity(int level, double eps);

}  // namespace rotforge
