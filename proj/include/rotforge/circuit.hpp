#pragma once

#include <array>
#include <string>
#include <vector>

#include "rotforge/clifford.hpp"
#include "rotforge/density.hpp"
#include "rotforge/gates.hpp"

namespace rotforge {

enum class Protocol { Mek, Dp };

enum class OpKind { Clifford, NoisySite, PivotalSite };

/// One time step of a distillation circuit, pre-embedded on all 5 qubits.
/// Noisy sites carry the unitary followed by the site's Y-type error.
struct CircuitOp {
    OpKind kind = OpKind::Clifford;
    Matrix unitary;
    Matrix error_unitary;  // error Pauli * unitary, for noisy/pivotal sites
    // pivotal parameterization: unitary(angle) = cos(angle) I + i sin(angle) axis
    Matrix axis;
    double angle = 0.0;
    std::string label;
};

struct Postselection {
    int qubit;
    Pauli observable;
    int outcome;
};

/// Distillation round on qubits {c,1,2,3,4} (indices 0..4). Preparations are
/// |+>,|0>,|0> on c,1,2 and the two noisy magic states on 3,4; the round ends
/// with X postselection on c and Z postselection on 1 and 2, outputting 3,4.
struct Circuit {
    Protocol protocol = Protocol::Mek;
    int level = 3;
    int n_qubits = 5;
    std::vector<CircuitOp> ops;
    std::vector<Postselection> postselections;
    std::array<int, 2> output_qubits = {3, 4};

    int noisy_site_count() const;
    int pivotal_site_count() const;
    /// Replaces the pivotal rotation angle by angle + alpha (coherent offset).
    Matrix pivotal_unitary(double alpha) const;
};

/// Uncompressed round: two encoder-conjugated blocks of four controlled
/// Hadamards (16 injected R3 sites) around a decode/pivot/encode core.
Circuit build_dpl_circuit(int level);

/// Compressed round: the controlled Hadamards on qubits 1 and 2 are cancelled
/// and the pivot is realized in its conjugated three-qubit form, leaving
/// 8 injected R3 sites. Gate list (time order):
///   E; cH3; cH4; CX(c,1); Z1Z3; exp(-i theta_{l-1} Y1 Z3 X4);
///   R2^dag(1); CX(c,1); R2(1); cH3; cH4; E^dag
/// where cHj = R3(j) . CX(c,j) . R3(j)^dag.
Circuit build_mekl_circuit(int level);

Circuit build_circuit(Protocol p, int level);

/// Accepted-branch Kraus operator on the two output qubits for a fixed error
/// configuration: x selects which noisy sites fire, y the pivotal error.
Matrix accepted_kraus(const Circuit& c, unsigned x, int y, double pivot_alpha = 0.0);

/// 1/2 (I + H_l x H_l), the two-qubit parity projector the ideal round applies.
Matrix parity_projector(int level);

struct CompressionReport {
    double v_form_dev = 0.0;        // conjugated pivot equals its closed form
    double v_anticommute_dev = 0.0; // V Y1 = -Y1 V
    double q_anticommute_dev = 0.0; // Q Y1 = -Y1 Q
    double d_equals_e_dev = 0.0;    // uncompressed and compressed branch Kraus agree
    bool all_pass(double tol = kTol) const;
};

CompressionReport verify_compression_identities(int level);

/// Expected magic-state consumption of injecting one R_l rotation: one state
/// at level l, then a halving correction chain that stops at level 3.
struct InjectionPlan {
    int level;
    std::vector<std::pair<int, double>> expected_counts;  // (level k, 2^{k-l})
    double total() const;
};

InjectionPlan injection_plan(int level);

}  // namespace rotforge
