#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotforge/cost.hpp"

namespace rotforge {

enum class SynthesisKind { Pqf, SrTable, SrAnalytic };

struct SrRecord {
    double epsilon = 0.0;
    double tcount = 0.0;
    std::optional<double> angle;
};

/// T-count model for compiling one axial rotation from level-3 magic states.
struct SynthesisModel {
    SynthesisKind kind = SynthesisKind::Pqf;
    double sr_coefficient = 3.0;          // analytic fallback, configuration not ground truth
    std::vector<SrRecord> table;          // sorted by epsilon ascending

    double tcount(double eps) const;

    static SynthesisModel pqf();
    static SynthesisModel sr_analytic(double coefficient = 3.0);
    static SynthesisModel sr_table(std::vector<SrRecord> records);
};

/// Ancilla-assisted synthesis count: log2(sqrt(2)/eps) + 4 log2(log2(sqrt(2)/eps)) + 1.187.
/// The sqrt(2) converts the model's native precision metric to diamond distance.
double pqf_tcount(double eps_gs);

double sr_tcount(double eps, const SynthesisModel& model);

/// CSV `epsilon,tcount[,angle]` with a header line.
std::vector<SrRecord> load_sr_table_csv(const std::string& path);

enum class PrecisionMetric { Diamond, Spectral, Pqf, Angle };

struct PrecisionValue {
    double value = 0.0;
    PrecisionMetric metric = PrecisionMetric::Diamond;
};

/// Conversions between synthesis precision metrics, all through the rotation
/// angle phi: spectral = 2 sin(phi/2), diamond = spectral in the small-angle
/// limit, pqf = sqrt(2) sin(phi/2). Valid for phi <= 0.1 rad.
PrecisionValue convert_precision(const PrecisionValue& p, PrecisionMetric to);

struct AngleApproximation {
    int level = 0;
    long long n = 0;
    double achieved_error = 0.0;
};

/// Nearest multiple of theta_l = pi/2^l to phi, with l chosen so the worst
/// case over all phi meets tol: smallest l with pi/2^l <= tol. The achieved
/// error is at most pi/2^(l+1).
AngleApproximation approximate_angle(double phi, double tol);

/// Cheapest synthesized rotation of error at most target: minimizes
/// tcount(eps_gs) * cost(M3, eps3) over splits eps_gs + tcount * eps3 <= target.
CostEntry gs_rotation_cost(const SynthesisModel& model, const std::vector<CostEntry>& m3_frontier,
                           double target);

}  // namespace rotforge
