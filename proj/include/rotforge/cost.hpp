#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rotforge/round_poly.hpp"

namespace rotforge {

struct Recipe;
using RecipePtr = std::shared_ptr<const Recipe>;

/// One achievable (error, expected raw-state cost) point with its provenance.
struct CostEntry {
    int level = 0;
    double error = 0.0;
    double cost = 0.0;
    RecipePtr recipe;
};

enum class RecipeKind {
    Raw,            // unit-cost state at the raw error rate
    PlusSubstitute, // free |+> standing in for |M_l>
    Level3Base,     // one round of a registered level-3 protocol
    MeklRound,      // one compressed distillation round
    Dilute,         // level l-1 state mixed down with |+>
    Inject,         // rotation from a magic state plus a halving correction chain
    CliffordFree,   // R_2 and below
    GateSynthesis,  // rotation compiled from T-count * level-3 states
};

struct Recipe {
    RecipeKind kind = RecipeKind::Raw;
    std::vector<CostEntry> inputs;
    std::string protocol_id;  // Level3Base
    double factor = 0.0;      // Dilute: lambda; GateSynthesis: T-count
    int node_count() const;
};

RecipePtr make_recipe(RecipeKind kind, std::vector<CostEntry> inputs = {},
                      std::string protocol_id = {}, double factor = 0.0);

/// Expected raw-state multiset of one attempt, keyed by level. Free
/// ingredients contribute nothing.
std::map<int, double> expand_per_attempt(const CostEntry& entry);

/// Error rate of an injected rotation fed by a state of error epsl with a
/// correction chain of error eta_prev.
double injection_error(double epsl, double eta_prev);

/// Leading-order level-3 distillation protocol registered as data.
struct Level3Protocol {
    std::string id;
    int n_in = 0;
    int n_out = 1;
    std::vector<double> delta_poly;  // coefficients, ascending powers of eps
    std::vector<double> psuc_poly;

    double delta(double eps) const;
    double p_suc(double eps) const;
};

std::vector<Level3Protocol> default_level3_protocols();
std::vector<Level3Protocol> load_level3_protocols(const std::string& path);
std::string level3_protocols_json(const std::vector<Level3Protocol>& protos);

struct GridSpec {
    double pts_per_decade = 20.0;
    double floor_error = 1e-25;
    int round_iterations = 5;   // fixpoint passes of the distillation closure
    int candidate_cap = 44;     // frontier subsample width in the closure
    double min_p_suc = 0.05;
};

struct CostTable {
    double eps_raw = 1e-3;
    int l_max = 3;
    GridSpec grid;
    std::map<int, std::vector<CostEntry>> magic;     // per level, sorted by error ascending
    std::map<int, std::vector<CostEntry>> rotation;  // per level, same order

    const std::vector<CostEntry>& magic_frontier(int level) const;
    const std::vector<CostEntry>& rotation_frontier(int level) const;
};

/// Cheapest entry achieving error <= target, if any.
std::optional<CostEntry> cheapest(const std::vector<CostEntry>& frontier, double target);

/// Pareto frontier pruning on a logarithmic error grid: one cheapest entry
/// per grid cell, strictly increasing cost toward stricter error.
std::vector<CostEntry> prune_frontier(std::vector<CostEntry> candidates, const GridSpec& grid);

CostEntry rotation_cost(const CostEntry& magic_state, const CostEntry& lower_rotation);

/// One distillation round: two magic inputs of one quality, eight level-3
/// states, one pivotal rotation; cost divided by 2 p_suc per output.
std::optional<CostEntry> mekl_round_cost(const RoundFunction& fn, const CostEntry& magic_input,
                                         const CostEntry& level3_input, const CostEntry& pivot,
                                         double min_p_suc = 0.0);

CostTable build_cost_table(int l_max, double eps_raw, const GridSpec& grid,
                           const std::vector<Level3Protocol>& protocols);

/// Level-3 supply only: cheapest plan reaching the target from raw states.
CostEntry level3_base(double eps_raw, double target, const GridSpec& grid,
                      const std::vector<Level3Protocol>& protocols);

std::optional<CostEntry> cheapest_magic(const CostTable& table, int level, double target);
std::optional<CostEntry> cheapest_rotation(const CostTable& table, int level, double target);

std::string cost_table_json(const CostTable& table);
CostTable cost_table_from_json(const std::string& text);

}  // namespace rotforge
