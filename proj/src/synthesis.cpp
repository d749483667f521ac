#include "rotforge/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rotforge {

double pqf_tcount(double eps_gs) {
    if (!(eps_gs > 0.0 && eps_gs < 1.0))
        throw std::invalid_argument("pqf_tcount: eps must be in (0, 1)");
    double x = std::log2(std::numbers::sqrt2 / eps_gs);
    return x + 4.0 * std::log2(x) + 1.187;
}

double sr_tcount(double eps, const SynthesisModel& model) {
    switch (model.kind) {
        case SynthesisKind::SrAnalytic:
            if (!(eps > 0.0 && eps < 1.0))
                throw std::invalid_argument("sr_tcount: eps must be in (0, 1)");
            return model.sr_coefficient * std::log2(1.0 / eps);
        case SynthesisKind::SrTable: {
            if (model.table.empty()) throw std::runtime_error("sr_tcount: empty table");
            // step to the stricter record: largest record epsilon <= eps
            const SrRecord* pick = nullptr;
            for (const auto& r : model.table) {
                if (r.epsilon <= eps && (!pick || r.epsilon > pick->epsilon)) pick = &r;
            }
            if (!pick) throw std::out_of_range("sr_tcount: eps below table range");
            return pick->tcount;
        }
        case SynthesisKind::Pqf:
            return pqf_tcount(eps);
    }
    throw std::logic_error("sr_tcount: bad model");
}

double SynthesisModel::tcount(double eps) const { return sr_tcount(eps, *this); }

SynthesisModel SynthesisModel::pqf() { return {SynthesisKind::Pqf, 3.0, {}}; }

SynthesisModel SynthesisModel::sr_analytic(double coefficient) {
    return {SynthesisKind::SrAnalytic, coefficient, {}};
}

SynthesisModel SynthesisModel::sr_table(std::vector<SrRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const SrRecord& a, const SrRecord& b) { return a.epsilon < b.epsilon; });
    return {SynthesisKind::SrTable, 3.0, std::move(records)};
}

std::vector<SrRecord> load_sr_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open SR table: " + path);
    std::vector<SrRecord> out;
    std::string line;
    bool header = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            if (line.rfind("epsilon", 0) != 0)
                throw std::runtime_error("SR table: expected header 'epsilon,tcount[,angle]'");
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        SrRecord rec;
        if (!std::getline(ss, field, ',')) continue;
        rec.epsilon = std::stod(field);
        if (!std::getline(ss, field, ','))
            throw std::runtime_error("SR table line " + std::to_string(lineno) + ": missing tcount");
        rec.tcount = std::stod(field);
        if (std::getline(ss, field, ',') && !field.empty()) rec.angle = std::stod(field);
        if (!(rec.epsilon > 0.0) || rec.tcount < 0.0)
            throw std::runtime_error("SR table line " + std::to_string(lineno) + ": bad values");
        out.push_back(rec);
    }
    return out;
}

namespace {

double angle_of(const PrecisionValue& p) {
    switch (p.metric) {
        case PrecisionMetric::Angle:
            return p.value;
        case PrecisionMetric::Spectral:
        case PrecisionMetric::Diamond:
            return 2.0 * std::asin(p.value / 2.0);
        case PrecisionMetric::Pqf:
            return 2.0 * std::asin(p.value / std::numbers::sqrt2);
    }
    throw std::logic_error("angle_of: bad metric");
}

}  // namespace

PrecisionValue convert_precision(const PrecisionValue& p, PrecisionMetric to) {
    if (p.value < 0.0) throw std::invalid_argument("convert_precision: value must be >= 0");
    double phi = angle_of(p);
    if (!(phi >= 0.0 && phi <= 0.1))
        throw std::out_of_range("convert_precision: outside small-angle validity (phi <= 0.1)");
    PrecisionValue out;
    out.metric = to;
    switch (to) {
        case PrecisionMetric::Angle: out.value = phi; break;
        case PrecisionMetric::Spectral:
        case PrecisionMetric::Diamond: out.value = 2.0 * std::abs(std::sin(phi / 2.0)); break;
        case PrecisionMetric::Pqf:
            out.value = std::numbers::sqrt2 * std::abs(std::sin(phi / 2.0));
            break;
    }
    return out;
}

AngleApproximation approximate_angle(double phi, double tol) {
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw std::invalid_argument("approximate_angle: phi must be in [0, 2 pi)");
    if (!(tol > 0.0)) throw std::invalid_argument("approximate_angle: tol must be positive");
    int level = 1;
    while (theta_level(level) > tol) {
        ++level;
        if (level > 60) throw std::invalid_argument("approximate_angle: tol too small");
    }
    AngleApproximation out;
    out.level = level;
    double theta = theta_level(level);
    out.n = std::llround(phi / theta);
    out.achieved_error = std::abs(phi - double(out.n) * theta);
    return out;
}

CostEntry gs_rotation_cost(const SynthesisModel& model, const std::vector<CostEntry>& m3_frontier,
                           double target) {
    if (m3_frontier.empty()) throw std::invalid_argument("gs_rotation_cost: empty frontier");
    if (!(target > 0.0)) throw std::invalid_argument("gs_rotation_cost: target must be positive");

    std::optional<CostEntry> best;
    auto consider = [&](double eps_gs) {
        if (!(eps_gs > 0.0 && eps_gs < target)) return;
        double t;
        try {
            t = model.tcount(eps_gs);
        } catch (const std::out_of_range&) {
            return;
        }
        if (t <= 0.0) t = 1.0;
        double eps3_budget = (target - eps_gs) / t;
        auto m3 = cheapest(m3_frontier, eps3_budget);
        if (!m3) return;
        CostEntry e;
        e.level = 0;
        e.cost = t * m3->cost;
        e.error = eps_gs + t * m3->error;
        e.recipe = make_recipe(RecipeKind::GateSynthesis, {*m3}, {}, t);
        if (e.error <= target && (!best || e.cost < best->cost)) best = e;
    };

    // log grid of splits plus the equal-split heuristic
    const int kPoints = 160;
    for (int i = 0; i < kPoints; ++i) {
        double f = std::pow(10.0, -8.0 * (kPoints - 1 - i) / (kPoints - 1));  // 1e-8 .. 1
        consider(target * f * 0.999999);
    }
    consider(0.5 * target);

    if (!best) throw std::runtime_error("gs_rotation_cost: target unreachable from frontier");
    return *best;
}

}  // namespace rotforge
