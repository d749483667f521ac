#pragma once

#include <cstdint>
#include <vector>

#include "rotforge/circuit.hpp"

namespace rotforge {

/// Diagonal Y-flip rates attached to the round's non-Clifford sites:
/// eps3 per injected R3, epsl per input magic state, eta on the pivot.
struct NoiseSpec {
    double eps3 = 0.0;
    double epsl = 0.0;
    double eta = 0.0;

    NoiseSpec() = default;
    NoiseSpec(double e3, double el, double et);
};

struct RoundOutcome {
    double delta = 0.0;   // error of one output qubit, after tracing its partner
    double p_suc = 1.0;
    double p_fail() const { return 1.0 - p_suc; }
};

/// Exact round evaluation: evolves the 5-qubit density operator through the
/// circuit, mixing in each site's error branch, then postselects. Equivalent
/// to summing all 2^k * 2 * 4 error configurations.
RoundOutcome simulate_round(const Circuit& c, const NoiseSpec& noise);

/// Generalized inputs for generic-noise runs: arbitrary input states on
/// qubits 3 and 4 and a coherent offset on the pivotal rotation. delta is
/// taken as the worse of the two output reductions.
struct GeneralRoundInputs {
    Matrix rho3, rho4;        // 2x2 density matrices
    double eps3 = 0.0;        // Y-flip rate per R3 site
    double eta_flip = 0.0;    // pivotal Y-flip probability
    double pivot_alpha = 0.0; // pivotal coherent over-rotation
};

RoundOutcome simulate_round_general(const Circuit& c, const GeneralRoundInputs& in);

/// Accepted (subnormalized) two-qubit output for one fixed error
/// configuration x on the noisy sites and y on the pivot.
struct ConfigurationResult {
    Matrix accepted;     // 4x4, trace = acceptance probability
    double acceptance;
};

ConfigurationResult run_configuration(const Circuit& c, unsigned x, int y, const Matrix& rho3,
                                      const Matrix& rho4);

/// First-order model: delta ~ 8 eps3^2 + epsl^2 + eta/4,
/// p_suc ~ 1 - 8 eps3 - 2 epsl - eta/2, both clipped to [0,1].
RoundOutcome leading_order(const NoiseSpec& noise);

/// Published closed-form round expressions evaluated verbatim, next to a
/// corrected reading, with flags where the verbatim text disagrees with the
/// exact simulation. Neither reading replaces the simulator.
struct ReferenceFormulaReport {
    double numerator_verbatim = 0.0;
    double p_verbatim = 0.0;       // evaluates to the failure probability
    double delta_verbatim = 0.0;   // numerator over verbatim p (NaN at 0/0)
    double p_corrected = 0.0;      // 1 - p_verbatim
    double delta_corrected = 0.0;  // deduplicated numerator over corrected p
    bool p_expression_behaves_as_pfail = false;
    bool epsl_sq_term_duplicated = false;
    double measured_epsl_sq_coeff = 0.0;  // extracted from the simulator
    double corrected_vs_sim_dev = 0.0;
};

ReferenceFormulaReport reference_formulas(const NoiseSpec& noise, int level = 5);

/// Worst-case output error bound under generic (possibly coherent) input and
/// pivot noise; valid for eps3 <= 0.01.
struct GenericNoiseBound {
    double p_g = 1.0;  // probability of zero R3 faults, (1-eps3)^8
    double p_b = 0.0;  // probability of an even nonzero fault pattern
    double bound = 0.0;
};

GenericNoiseBound generic_bound(const NoiseSpec& noise);

struct MonteCarloReport {
    int trials = 0;
    int violations = 0;
    double max_observed_error = 0.0;
    double max_bound_ratio = 0.0;  // worst observed error / bound
};

/// Seeded random search for violations of generic_bound: random coherent
/// input perturbations with half-1-norm up to caps.epsl (uniform on the
/// (a,b) disk, uniform coherence phase), random pivot noise of diamond
/// weight up to caps.eta split between a Y-flip and an over-rotation.
MonteCarloReport monte_carlo_generic(uint64_t seed, int trials, const NoiseSpec& caps, int level);

/// One generic-noise trial against the bound; used by the Monte Carlo loop
/// and by directed cases such as the bare |+> input.
struct GenericTrialResult {
    double observed_error = 0.0;
    double bound = 0.0;
    bool violated = false;
};

GenericTrialResult generic_noise_trial(const Circuit& c, const Matrix& rho_in, double eps_eff,
                                       double eps3, double eta_flip, double pivot_alpha,
                                       double eta_weight);

}  // namespace rotforge
