#include "rotforge/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rotforge {

namespace {

void check_rate(double r, const char* name) {
    if (!(r >= 0.0 && r < 0.5)) throw std::invalid_argument(std::string(name) + " must be in [0, 1/2)");
}

Matrix postselection_projector(const Circuit& c) {
    const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
    Matrix p = Matrix::Identity(dim, dim);
    for (const auto& ps : c.postselections) {
        Matrix p1q = 0.5 * (Matrix::Identity(2, 2) +
                            double(ps.outcome) * pauli_matrix_1q(ps.observable));
        p = embed(p1q, {ps.qubit}, c.n_qubits) * p;
    }
    return p;
}

Matrix initial_state(const Circuit& c, const Matrix& rho3, const Matrix& rho4) {
    Matrix plus = ket_plus() * ket_plus().adjoint();
    Matrix zero = ket0() * ket0().adjoint();
    return kron(kron(kron(kron(plus, zero), zero), rho3), rho4);
}

// accepted two-qubit state after evolving the full density operator
Matrix evolve_accepted(const Circuit& c, const GeneralRoundInputs& in) {
    Matrix rho = initial_state(c, in.rho3, in.rho4);
    for (const auto& op : c.ops) {
        switch (op.kind) {
            case OpKind::Clifford:
                rho = op.unitary * rho * op.unitary.adjoint();
                break;
            case OpKind::NoisySite: {
                Matrix ideal = op.unitary * rho * op.unitary.adjoint();
                Matrix flipped = op.error_unitary * rho * op.error_unitary.adjoint();
                rho = (1.0 - in.eps3) * ideal + in.eps3 * flipped;
                break;
            }
            case OpKind::PivotalSite: {
                Matrix u = c.pivotal_unitary(in.pivot_alpha);
                Matrix err = op.error_unitary * op.unitary.adjoint() * u;
                Matrix ideal = u * rho * u.adjoint();
                Matrix flipped = err * rho * err.adjoint();
                rho = (1.0 - in.eta_flip) * ideal + in.eta_flip * flipped;
                break;
            }
        }
    }
    Matrix proj = postselection_projector(c);
    rho = proj * rho * proj;
    DensityOperator full(rho, c.n_qubits);
    // trace out c, 1, 2
    DensityOperator out = partial_trace(partial_trace(partial_trace(full, 0), 0), 0);
    return out.matrix;
}

struct Reductions {
    double delta_a;  // keep qubit 3
    double delta_b;  // keep qubit 4
    double p;
};

Reductions reduce_outputs(const Matrix& accepted, int level) {
    Reductions r{};
    r.p = accepted.trace().real();
    if (r.p <= 0.0) {
        r.delta_a = r.delta_b = 0.0;
        return r;
    }
    DensityOperator pair(accepted / r.p, 2);
    Vector m = magic_ket(level);
    Matrix target = m * m.adjoint();
    r.delta_a = trace_distance(partial_trace(pair, 1).matrix, target);
    r.delta_b = trace_distance(partial_trace(pair, 0).matrix, target);
    return r;
}

}  // namespace

NoiseSpec::NoiseSpec(double e3, double el, double et) : eps3(e3), epsl(el), eta(et) {
    check_rate(eps3, "eps3");
    check_rate(epsl, "epsl");
    check_rate(eta, "eta");
}

RoundOutcome simulate_round(const Circuit& c, const NoiseSpec& noise) {
    check_rate(noise.eps3, "eps3");
    check_rate(noise.epsl, "epsl");
    check_rate(noise.eta, "eta");
    GeneralRoundInputs in;
    in.rho3 = noisy_magic_state(c.level, noise.epsl);
    in.rho4 = in.rho3;
    in.eps3 = noise.eps3;
    in.eta_flip = noise.eta;
    Matrix accepted = evolve_accepted(c, in);
    Reductions r = reduce_outputs(accepted, c.level);
    if (std::abs(r.delta_a - r.delta_b) > 1e-12)
        throw std::logic_error("simulate_round: output qubits disagree");
    return {r.delta_a, r.p};
}

RoundOutcome simulate_round_general(const Circuit& c, const GeneralRoundInputs& in) {
    Matrix accepted = evolve_accepted(c, in);
    Reductions r = reduce_outputs(accepted, c.level);
    return {std::max(r.delta_a, r.delta_b), r.p};
}

ConfigurationResult run_configuration(const Circuit& c, unsigned x, int y, const Matrix& rho3,
                                      const Matrix& rho4) {
    Matrix rho = initial_state(c, rho3, rho4);
    int site = 0;
    for (const auto& op : c.ops) {
        const Matrix* g = &op.unitary;
        if (op.kind == OpKind::NoisySite) {
            if ((x >> site) & 1u) g = &op.error_unitary;
            ++site;
        } else if (op.kind == OpKind::PivotalSite) {
            if (y) g = &op.error_unitary;
        }
        rho = (*g) * rho * g->adjoint();
    }
    Matrix proj = postselection_projector(c);
    rho = proj * rho * proj;
    DensityOperator full(rho, c.n_qubits);
    DensityOperator out = partial_trace(partial_trace(partial_trace(full, 0), 0), 0);
    return {out.matrix, out.trace()};
}

RoundOutcome leading_order(const NoiseSpec& noise) {
    double d = 8.0 * noise.eps3 * noise.eps3 + noise.epsl * noise.epsl + 0.25 * noise.eta;
    double p = 1.0 - 8.0 * noise.eps3 - 2.0 * noise.epsl - 0.5 * noise.eta;
    return {std::clamp(d, 0.0, 1.0), std::clamp(p, 0.0, 1.0)};
}

namespace {

double verbatim_numerator(double e3, double el, double eta) {
    double e3_2 = e3 * e3, e3_3 = e3_2 * e3, e3_4 = e3_3 * e3;
    double e3_5 = e3_4 * e3, e3_6 = e3_5 * e3, e3_7 = e3_6 * e3, e3_8 = e3_7 * e3;
    double el2 = el * el;
    return 8 * e3_2 + el2 + 0.25 * eta - 2 * eta * e3 + 6 * eta * e3_2 - 48 * e3_3 -
           8 * eta * e3_3 + 136 * e3_4 + 4 * eta * e3_4 - 224 * e3_5 + 224 * e3_6 - 128 * e3_7 +
           32 * e3_8 + el2 - eta * el2 - 8 * e3 * el2 + 8 * eta * e3 * el2 + 24 * e3_2 * el2 -
           24 * eta * e3_2 * el2 - 32 * e3_3 * el2 + 32 * eta * e3_3 * el2 + 16 * e3_4 * el2 -
           16 * eta * e3_4 * el2;
}

double verbatim_p(double e3, double el, double eta) {
    double e3_2 = e3 * e3, e3_3 = e3_2 * e3, e3_4 = e3_3 * e3;
    double e3_5 = e3_4 * e3, e3_6 = e3_5 * e3, e3_7 = e3_6 * e3, e3_8 = e3_7 * e3;
    double el2 = el * el;
    double one_m2e3 = 1 - 2 * e3, one_m2el = 1 - 2 * el;
    return 448 * e3_5 - 448 * e3_6 + 256 * e3_7 - 64 * e3_8 +
           0.5 * eta * std::pow(one_m2e3, 4) * one_m2el * one_m2el + 2 * el - 2 * el2 +
           64 * e3_3 * (2 - el + el2) - 32 * e3_4 * (9 - el + el2) +
           8 * e3 * (1 - 2 * el + 2 * el2) - 8 * e3_2 * (5 - 6 * el + 6 * el2);
}

}  // namespace

ReferenceFormulaReport reference_formulas(const NoiseSpec& noise, int level) {
    ReferenceFormulaReport rep;
    rep.numerator_verbatim = verbatim_numerator(noise.eps3, noise.epsl, noise.eta);
    rep.p_verbatim = verbatim_p(noise.eps3, noise.epsl, noise.eta);
    rep.delta_verbatim = rep.numerator_verbatim / rep.p_verbatim;
    rep.p_corrected = 1.0 - rep.p_verbatim;
    // the verbatim numerator lists epsl^2 twice; keep a single copy
    double numerator_corrected = rep.numerator_verbatim - noise.epsl * noise.epsl;
    rep.delta_corrected = numerator_corrected / rep.p_corrected;

    Circuit mek = build_mekl_circuit(level);

    // verbatim p-expression vanishes at zero noise while the round succeeds
    double p_zero = verbatim_p(0, 0, 0);
    double sim_zero = simulate_round(mek, NoiseSpec(0, 0, 0)).p_suc;
    rep.p_expression_behaves_as_pfail = std::abs(p_zero) < 1e-12 && std::abs(sim_zero - 1.0) < 1e-12;

    // coefficient of epsl^2 in the accepted error mass, from the simulator
    const double probe = 1e-4;
    RoundOutcome probe_out = simulate_round(mek, NoiseSpec(0, probe, 0));
    rep.measured_epsl_sq_coeff = probe_out.delta * probe_out.p_suc / (probe * probe);
    rep.epsl_sq_term_duplicated = std::abs(rep.measured_epsl_sq_coeff - 2.0) > 0.5;

    RoundOutcome sim = simulate_round(mek, noise);
    rep.corrected_vs_sim_dev = std::abs(rep.delta_corrected - sim.delta);
    return rep;
}

GenericNoiseBound generic_bound(const NoiseSpec& noise) {
    if (noise.eps3 > 0.01)
        throw std::invalid_argument("generic_bound: valid only for eps3 <= 0.01");
    GenericNoiseBound b;
    double e3 = noise.eps3, el = noise.epsl, eta = noise.eta;
    b.p_g = std::pow(1.0 - e3, 8);
    b.p_b = 0.0;
    static const double binom[4] = {28, 70, 28, 1};  // C(8,2), C(8,4), C(8,6), C(8,8)
    int w = 2;
    for (int i = 0; i < 4; ++i, w += 2)
        b.p_b += binom[i] * std::pow(e3, w) * std::pow(1.0 - e3, 8 - w);
    double denom = (1.0 - 8.0 * e3) * (1.0 - 2.0 * el + 2.0 * el * el) - 2.0 * eta;
    if (denom <= 0.0) throw std::domain_error("generic_bound: denominator not positive");
    b.bound = (el * el + 28.0 * e3 * e3 + 2.0 * eta) / denom;
    return b;
}

GenericTrialResult generic_noise_trial(const Circuit& c, const Matrix& rho_in, double eps_eff,
                                       double eps3, double eta_flip, double pivot_alpha,
                                       double eta_weight) {
    GeneralRoundInputs in;
    in.rho3 = rho_in;
    in.rho4 = rho_in;
    in.eps3 = eps3;
    in.eta_flip = eta_flip;
    in.pivot_alpha = pivot_alpha;
    RoundOutcome out = simulate_round_general(c, in);
    GenericTrialResult res;
    res.observed_error = out.delta;
    res.bound = generic_bound(NoiseSpec(eps3, eps_eff, eta_weight)).bound;
    res.violated = res.observed_error > res.bound + 1e-12;
    return res;
}

MonteCarloReport monte_carlo_generic(uint64_t seed, int trials, const NoiseSpec& caps, int level) {
    if (trials < 0) throw std::invalid_argument("monte_carlo_generic: trials must be >= 0");
    MonteCarloReport rep;
    rep.trials = trials;
    Circuit mek = build_mekl_circuit(level);
    Vector m = magic_ket(level), mb = magic_bar_ket(level);
    Matrix basis(2, 2);
    basis.col(0) = m;
    basis.col(1) = mb;
    Matrix pure = m * m.adjoint();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int t = 0; t < trials; ++t) {
        double eps3 = unit(rng) * caps.eps3;
        double scale = unit(rng) * caps.epsl;

        double a, rb;
        Matrix rho_in;
        double eps_eff;
        for (int attempt = 0;; ++attempt) {
            a = unit(rng);
            rb = unit(rng);
            if (a * a + rb * rb > 1.0) continue;
            double phase = unit(rng) * 2.0 * std::numbers::pi;
            Complex bb = rb * Complex(std::cos(phase), std::sin(phase));
            Matrix delta_m(2, 2);
            delta_m << -a, bb, std::conj(bb), a;
            Matrix delta = scale * (basis * delta_m * basis.adjoint());
            rho_in = pure + delta;
            Eigen::SelfAdjointEigenSolver<Matrix> es(rho_in, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() >= -1e-12) {
                eps_eff = scale * std::sqrt(a * a + rb * rb);
                break;
            }
            if (attempt > 200) {  // fall back to diagonal noise
                rho_in = noisy_magic_state(level, scale * 0.5);
                eps_eff = scale * 0.5;
                break;
            }
        }

        double eta_t = unit(rng) * caps.eta;
        double split = unit(rng);
        double flip = split * eta_t;
        double alpha = std::asin((1.0 - split) * eta_t);

        GenericTrialResult res =
            generic_noise_trial(mek, rho_in, eps_eff, eps3, flip, alpha, eta_t);
        rep.max_observed_error = std::max(rep.max_observed_error, res.observed_error);
        if (res.bound > 0.0)
            rep.max_bound_ratio = std::max(rep.max_bound_ratio, res.observed_error / res.bound);
        if (res.violated) ++rep.violations;
    }
    return rep;
}

}  // namespace rotforge
