#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotforge/cost.hpp"
#include "rotforge/synthesis.hpp"

namespace rotforge {

/// How the selected rotation recipe sources its magic state at this level.
enum class Regime { Distill, Mixed, Dilute };

const char* regime_name(Regime r);

struct SweepRow {
    int level = 0;
    std::optional<double> cost_mekl;
    std::optional<double> cost_pqf;
    std::optional<double> cost_sr;
    Regime regime = Regime::Distill;
    bool reachable = true;
};

/// Classifies the magic-state recipe feeding a rotation entry:
/// dilution-only supply, one distillation round fed by diluted inputs, or
/// plain distillation.
Regime classify_regime(const CostEntry& rotation_entry);

std::vector<SweepRow> sweep_levels(const CostTable& table, double target,
                                   const SynthesisModel& pqf_model,
                                   const SynthesisModel& sr_model);

/// CSV with header level,cost_mekl,cost_pqf,cost_sr,regime,status.
/// Unreachable targets leave the cost field empty and set status=unreachable.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace rotforge
