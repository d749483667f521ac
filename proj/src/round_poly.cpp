#include "rotforge/round_poly.hpp"

#include <cmath>
#include <numbers>

namespace rotforge {

namespace {

// Chebyshev-Lobatto nodes on [0, hi], endpoint 0 included exactly
std::vector<double> lobatto_nodes(int n, double hi) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = 0.5 * hi * (1.0 - std::cos(std::numbers::pi * i / (n - 1)));
    x[0] = 0.0;
    x[n - 1] = hi;
    return x;
}

std::vector<double> barycentric_weights(const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) w[i] /= (x[i] - x[j]);
    double scale = 0.0;
    for (double v : w) scale = std::max(scale, std::abs(v));
    for (double& v : w) v /= scale;
    return w;
}

// Lagrange basis values at point t
std::vector<double> basis(const std::vector<double>& x, const std::vector<double>& w, double t) {
    const size_t n = x.size();
    std::vector<double> l(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (t == x[i]) {
            l[i] = 1.0;
            return l;
        }
    }
    double denom = 0.0;
    for (size_t i = 0; i < n; ++i) {
        l[i] = w[i] / (t - x[i]);
        denom += l[i];
    }
    for (double& v : l) v /= denom;
    return l;
}

}  // namespace

RoundFunction::RoundFunction(Protocol protocol, int level) : level_(level) {
    Circuit c = build_circuit(protocol, level);
    const int n3 = c.noisy_site_count() + 1;  // exact degree in eps3
    n3_ = lobatto_nodes(n3, 0.49);
    nl_ = {0.0, 0.25, 0.49};
    ne_ = {0.0, 0.49};
    w3_ = barycentric_weights(n3_);
    wl_ = barycentric_weights(nl_);
    we_ = barycentric_weights(ne_);

    p_.resize(n3_.size() * nl_.size() * ne_.size());
    m_.resize(p_.size());
    for (size_t i = 0; i < n3_.size(); ++i)
        for (size_t j = 0; j < nl_.size(); ++j)
            for (size_t k = 0; k < ne_.size(); ++k) {
                RoundOutcome out = simulate_round(c, NoiseSpec(n3_[i], nl_[j], ne_[k]));
                p_[idx(i, j, k)] = out.p_suc;
                m_[idx(i, j, k)] = out.delta * out.p_suc;
            }
}

RoundOutcome RoundFunction::eval(double eps3, double epsl, double eta) const {
    auto l3 = basis(n3_, w3_, eps3);
    auto ll = basis(nl_, wl_, epsl);
    auto le = basis(ne_, we_, eta);
    double p = 0.0, m = 0.0;
    for (size_t i = 0; i < n3_.size(); ++i) {
        if (l3[i] == 0.0) continue;
        for (size_t j = 0; j < nl_.size(); ++j) {
            double lij = l3[i] * ll[j];
            if (lij == 0.0) continue;
            for (size_t k = 0; k < ne_.size(); ++k) {
                double w = lij * le[k];
                p += w * p_[idx(i, j, k)];
                m += w * m_[idx(i, j, k)];
            }
        }
    }
    RoundOutcome out;
    out.p_suc = p;
    out.delta = p > 0.0 ? std::max(m, 0.0) / p : 0.0;
    return out;
}

}  // namespace rotforge
