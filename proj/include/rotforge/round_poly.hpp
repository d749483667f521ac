#pragma once

#include <vector>

#include "rotforge/noise.hpp"

namespace rotforge {

/// Fast closed form of a round's exact (delta, p_suc) as a function of the
/// three rates. The accepted trace and accepted error mass are polynomials
/// (degree = site count in eps3, 2 in epsl, 1 in eta), so tensor-product
/// Lagrange interpolation of the simulator on Chebyshev nodes reproduces
/// them exactly up to rounding. Built once per (protocol, level), then each
/// evaluation costs a few hundred flops instead of a circuit simulation.
class RoundFunction {
public:
    RoundFunction(Protocol protocol, int level);

    RoundOutcome eval(double eps3, double epsl, double eta) const;
    int level() const { return level_; }

private:
    int level_;
    std::vector<double> n3_, nl_, ne_;  // nodes per axis
    std::vector<double> w3_, wl_, we_;  // barycentric weights
    std::vector<double> p_;             // accepted trace at nodes
    std::vector<double> m_;             // accepted error mass (delta * p) at nodes
    size_t idx(size_t i, size_t j, size_t k) const {
        return (i * nl_.size() + j) * ne_.size() + k;
    }
};

}  // namespace rotforge
