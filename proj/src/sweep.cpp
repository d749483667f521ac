#include "rotforge/sweep.hpp"

#include <cstdio>
#include <sstream>

namespace rotforge {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Distill: return "distill";
        case Regime::Mixed: return "mixed";
        case Regime::Dilute: return "dilute";
    }
    return "?";
}

namespace {

bool is_dilution_supply(const RecipePtr& r) {
    if (!r) return false;
    return r->kind == RecipeKind::Dilute || r->kind == RecipeKind::PlusSubstitute;
}

}  // namespace

Regime classify_regime(const CostEntry& rotation_entry) {
    const RecipePtr& rot = rotation_entry.recipe;
    if (!rot || rot->kind != RecipeKind::Inject) return Regime::Distill;
    const CostEntry& magic = rot->inputs.at(0);
    if (is_dilution_supply(magic.recipe)) return Regime::Dilute;
    if (magic.recipe && magic.recipe->kind == RecipeKind::MeklRound) {
        const CostEntry& round_input = magic.recipe->inputs.at(0);
        if (is_dilution_supply(round_input.recipe)) return Regime::Mixed;
    }
    return Regime::Distill;
}

std::vector<SweepRow> sweep_levels(const CostTable& table, double target,
                                   const SynthesisModel& pqf_model,
                                   const SynthesisModel& sr_model) {
    std::vector<SweepRow> rows;
    const auto& m3 = table.magic_frontier(3);

    std::optional<double> pqf_cost, sr_cost;
    try {
        pqf_cost = gs_rotation_cost(pqf_model, m3, target).cost;
    } catch (const std::exception&) {
    }
    try {
        sr_cost = gs_rotation_cost(sr_model, m3, target).cost;
    } catch (const std::exception&) {
    }

    for (int level = 3; level <= table.l_max; ++level) {
        SweepRow row;
        row.level = level;
        row.cost_pqf = pqf_cost;
        row.cost_sr = sr_cost;
        auto e = cheapest_rotation(table, level, target);
        if (e) {
            row.cost_mekl = e->cost;
            row.regime = classify_regime(*e);
        } else {
            row.reachable = false;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    auto num = [](std::optional<double> v) {
        if (!v) return std::string();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.10g", *v);
        return std::string(buf);
    };
    out << "level,cost_mekl,cost_pqf,cost_sr,regime,status\n";
    for (const auto& r : rows) {
        out << r.level << ',' << num(r.cost_mekl) << ',' << num(r.cost_pqf) << ','
            << num(r.cost_sr) << ',' << regime_name(r.regime) << ','
            << (r.reachable ? "ok" : "unreachable") << '\n';
    }
    return out.str();
}

}  // namespace rotforge
