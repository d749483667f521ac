#include "rotforge/cost.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rotforge/dilution.hpp"
#include "rotforge/parallel.hpp"

namespace rotforge {

using nlohmann::json;

int Recipe::node_count() const {
    int n = 1;
    for (const auto& in : inputs)
        if (in.recipe) n += in.recipe->node_count();
    return n;
}

RecipePtr make_recipe(RecipeKind kind, std::vector<CostEntry> inputs, std::string protocol_id,
                      double factor) {
    auto r = std::make_shared<Recipe>();
    r->kind = kind;
    r->inputs = std::move(inputs);
    r->protocol_id = std::move(protocol_id);
    r->factor = factor;
    return r;
}

namespace {

void expand_rec(const CostEntry& entry, double mult, std::map<int, double>& out) {
    if (!entry.recipe) return;
    const Recipe& r = *entry.recipe;
    switch (r.kind) {
        case RecipeKind::Raw:
            out[entry.level] += mult;
            break;
        case RecipeKind::PlusSubstitute:
        case RecipeKind::CliffordFree:
            break;
        case RecipeKind::Level3Base: {
            expand_rec(r.inputs.at(0), mult * r.factor, out);
            break;
        }
        case RecipeKind::MeklRound:
            expand_rec(r.inputs.at(0), 2.0 * mult, out);
            expand_rec(r.inputs.at(1), 8.0 * mult, out);
            expand_rec(r.inputs.at(2), mult, out);
            break;
        case RecipeKind::Dilute:
            expand_rec(r.inputs.at(0), mult * r.factor, out);
            break;
        case RecipeKind::Inject:
            expand_rec(r.inputs.at(0), mult, out);
            expand_rec(r.inputs.at(1), 0.5 * mult, out);
            break;
        case RecipeKind::GateSynthesis:
            expand_rec(r.inputs.at(0), mult * r.factor, out);
            break;
    }
}

}  // namespace

std::map<int, double> expand_per_attempt(const CostEntry& entry) {
    std::map<int, double> out;
    expand_rec(entry, 1.0, out);
    return out;
}

double injection_error(double epsl, double eta_prev) {
    return 0.5 * epsl + 0.5 * (epsl * (1.0 - eta_prev) + (1.0 - epsl) * eta_prev);
}

double Level3Protocol::delta(double eps) const {
    double v = 0.0, p = 1.0;
    for (double c : delta_poly) {
        v += c * p;
        p *= eps;
    }
    return v;
}

double Level3Protocol::p_suc(double eps) const {
    double v = 0.0, p = 1.0;
    for (double c : psuc_poly) {
        v += c * p;
        p *= eps;
    }
    return v;
}

std::vector<Level3Protocol> default_level3_protocols() {
    std::vector<Level3Protocol> out;
    out.push_back({"reed-muller-15-1", 15, 1, {0, 0, 0, 35}, {1, -15}});
    for (int k : {1, 2, 4}) {
        Level3Protocol p;
        p.id = "bravyi-haah-k" + std::to_string(k);
        p.n_in = 3 * k + 8;
        p.n_out = 2 * k;
        p.delta_poly = {0, 0, 1.0 + 3.0 * k};
        p.psuc_poly = {1, -(3.0 * k + 8.0)};
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Level3Protocol> load_level3_protocols(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open protocol file: " + path);
    json j = json::parse(in);
    std::vector<Level3Protocol> out;
    for (const auto& e : j.at("protocols")) {
        Level3Protocol p;
        p.id = e.at("id").get<std::string>();
        p.n_in = e.at("n_in").get<int>();
        p.n_out = e.at("n_out").get<int>();
        p.delta_poly = e.at("delta_poly").get<std::vector<double>>();
        p.psuc_poly = e.at("psuc_poly").get<std::vector<double>>();
        if (p.n_in <= 0 || p.n_out <= 0)
            throw std::runtime_error("protocol " + p.id + ": counts must be positive");
        if (std::abs(p.delta(0.0)) > 1e-12 || std::abs(p.p_suc(0.0) - 1.0) > 1e-12)
            throw std::runtime_error("protocol " + p.id + ": need delta(0)=0 and p_suc(0)=1");
        out.push_back(std::move(p));
    }
    return out;
}

std::string level3_protocols_json(const std::vector<Level3Protocol>& protos) {
    json j;
    j["protocols"] = json::array();
    for (const auto& p : protos) {
        j["protocols"].push_back({{"id", p.id},
                                  {"n_in", p.n_in},
                                  {"n_out", p.n_out},
                                  {"delta_poly", p.delta_poly},
                                  {"psuc_poly", p.psuc_poly}});
    }
    return j.dump(2);
}

namespace {

int grid_cell(double error, const GridSpec& grid) {
    double e = std::max(error, grid.floor_error);
    return static_cast<int>(std::floor(-std::log10(e) * grid.pts_per_decade + 1e-9));
}

int recipe_nodes(const CostEntry& e) { return e.recipe ? e.recipe->node_count() : 1; }

// deterministic preference among equal-cost candidates
bool better(const CostEntry& a, const CostEntry& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    int na = recipe_nodes(a), nb = recipe_nodes(b);
    if (na != nb) return na < nb;
    return a.error < b.error;
}

// The round outcomes do not depend on the level, so one interpolant serves
// every level; each new level is admitted after a few probe simulations
// against its own circuit, with a full per-level build as the fallback.
const RoundFunction& shared_round_function(int level) {
    static RoundFunction base(Protocol::Mek, 3);
    static std::map<int, std::unique_ptr<RoundFunction>> overrides;
    static std::map<int, bool> approved;
    if (level == 3) return base;
    auto it = approved.find(level);
    if (it == approved.end()) {
        Circuit c = build_mekl_circuit(level);
        bool match = true;
        for (NoiseSpec spec : {NoiseSpec(0.3, 0.2, 0.1), NoiseSpec(0.05, 0.0, 0.3),
                               NoiseSpec(0.02, 0.4, 0.0)}) {
            RoundOutcome sim = simulate_round(c, spec);
            RoundOutcome poly = base.eval(spec.eps3, spec.epsl, spec.eta);
            if (std::abs(sim.delta - poly.delta) > 1e-10 ||
                std::abs(sim.p_suc - poly.p_suc) > 1e-10) {
                match = false;
                break;
            }
        }
        if (!match) overrides[level] = std::make_unique<RoundFunction>(Protocol::Mek, level);
        it = approved.emplace(level, match).first;
    }
    return it->second ? base : *overrides.at(level);
}

std::vector<CostEntry> subsample(const std::vector<CostEntry>& frontier, int cap) {
    if (static_cast<int>(frontier.size()) <= cap) return frontier;
    std::vector<CostEntry> out;
    out.reserve(cap);
    const double stride = double(frontier.size() - 1) / double(cap - 1);
    int last = -1;
    for (int i = 0; i < cap; ++i) {
        int k = static_cast<int>(std::lround(i * stride));
        if (k != last) out.push_back(frontier[k]);
        last = k;
    }
    return out;
}

}  // namespace

std::vector<CostEntry> prune_frontier(std::vector<CostEntry> candidates, const GridSpec& grid) {
    std::map<int, CostEntry> cells;
    for (auto& c : candidates) {
        if (!(c.cost >= 0.0) || !std::isfinite(c.cost)) continue;
        if (!(c.error >= 0.0)) continue;
        int cell = grid_cell(c.error, grid);
        auto it = cells.find(cell);
        if (it == cells.end() || better(c, it->second)) cells[cell] = c;
    }
    // walk strictest error first; a looser entry survives only if it is
    // strictly cheaper than every stricter one
    std::vector<CostEntry> out;
    double best_cost = std::numeric_limits<double>::infinity();
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
        if (it->second.cost < best_cost) {
            best_cost = it->second.cost;
            out.push_back(it->second);
        }
    }
    // sort by error ascending (strictest first)
    std::sort(out.begin(), out.end(),
              [](const CostEntry& a, const CostEntry& b) { return a.error < b.error; });
    return out;
}

std::optional<CostEntry> cheapest(const std::vector<CostEntry>& frontier, double target) {
    // frontier sorted by error ascending with cost descending; the best entry
    // is the loosest one still meeting the target
    std::optional<CostEntry> best;
    for (const auto& e : frontier) {
        if (e.error <= target && (!best || e.cost < best->cost)) best = e;
    }
    return best;
}

CostEntry rotation_cost(const CostEntry& magic_state, const CostEntry& lower_rotation) {
    CostEntry out;
    out.level = magic_state.level;
    out.cost = magic_state.cost + 0.5 * lower_rotation.cost;
    out.error = injection_error(magic_state.error, lower_rotation.error);
    out.recipe = make_recipe(RecipeKind::Inject, {magic_state, lower_rotation});
    return out;
}

std::optional<CostEntry> mekl_round_cost(const RoundFunction& fn, const CostEntry& magic_input,
                                         const CostEntry& level3_input, const CostEntry& pivot,
                                         double min_p_suc) {
    RoundOutcome round = fn.eval(level3_input.error, magic_input.error, pivot.error);
    if (round.p_suc <= std::max(min_p_suc, 0.0)) return std::nullopt;
    CostEntry out;
    out.level = magic_input.level;
    out.error = round.delta;
    out.cost = (2.0 * magic_input.cost + 8.0 * level3_input.cost + pivot.cost) /
               (2.0 * round.p_suc);
    out.recipe = make_recipe(RecipeKind::MeklRound, {magic_input, level3_input, pivot});
    return out;
}

const std::vector<CostEntry>& CostTable::magic_frontier(int level) const {
    auto it = magic.find(level);
    if (it == magic.end()) throw std::out_of_range("cost table has no magic level " + std::to_string(level));
    return it->second;
}

const std::vector<CostEntry>& CostTable::rotation_frontier(int level) const {
    auto it = rotation.find(level);
    if (it == rotation.end())
        throw std::out_of_range("cost table has no rotation level " + std::to_string(level));
    return it->second;
}

CostTable build_cost_table(int l_max, double eps_raw, const GridSpec& grid,
                           const std::vector<Level3Protocol>& protocols) {
    if (l_max < 3) throw std::invalid_argument("build_cost_table: l_max must be >= 3");
    if (!(eps_raw > 0.0 && eps_raw < 0.5))
        throw std::invalid_argument("build_cost_table: eps_raw must be in (0, 1/2)");
    CostTable table;
    table.eps_raw = eps_raw;
    table.l_max = l_max;
    table.grid = grid;

    CostEntry r2{2, 0.0, 0.0, make_recipe(RecipeKind::CliffordFree)};
    table.rotation[2] = {r2};

    for (int level = 3; level <= l_max; ++level) {
        const RoundFunction& fn = shared_round_function(level);
        std::vector<CostEntry> cands;
        cands.push_back({level, eps_raw, 1.0, make_recipe(RecipeKind::Raw)});
        if (level > 3) {
            for (const auto& e : table.magic_frontier(level - 1)) {
                DilutionResult d = dilute(level - 1, e.error);
                cands.push_back({level, d.eps_out, d.cost_factor * e.cost,
                                 make_recipe(RecipeKind::Dilute, {e}, {}, d.cost_factor)});
            }
            cands.push_back(
                {level, plus_substitute_error(level), 0.0, make_recipe(RecipeKind::PlusSubstitute)});
        }

        std::vector<CostEntry> frontier = prune_frontier(cands, grid);
        const auto& pivots = table.rotation_frontier(level - 1);
        const auto& l3 = level == 3 ? frontier : table.magic_frontier(3);

        for (int iter = 0; iter < grid.round_iterations; ++iter) {
            auto magic_cands = subsample(frontier, grid.candidate_cap);
            auto l3_cands = subsample(level == 3 ? frontier : l3, grid.candidate_cap);
            auto pivot_cands = subsample(pivots, grid.candidate_cap);
            std::vector<std::vector<CostEntry>> buckets(magic_cands.size());
            parallel_for(magic_cands.size(), [&](size_t i) {
                const auto& m = magic_cands[i];
                for (const auto& s : l3_cands)
                    for (const auto& r : pivot_cands) {
                        auto e = mekl_round_cost(fn, m, s, r, grid.min_p_suc);
                        if (e) buckets[i].push_back(std::move(*e));
                    }
            });
            std::vector<CostEntry> fresh;
            for (auto& b : buckets)
                fresh.insert(fresh.end(), std::make_move_iterator(b.begin()),
                             std::make_move_iterator(b.end()));
            if (level == 3) {
                for (const auto& proto : protocols)
                    for (const auto& in : magic_cands) {
                        double p = proto.p_suc(in.error);
                        if (p <= grid.min_p_suc) continue;
                        double err = proto.delta(in.error);
                        if (err < 0.0) continue;
                        CostEntry e;
                        e.level = 3;
                        e.error = err;
                        e.cost = proto.n_in * in.cost / (proto.n_out * p);
                        e.recipe = make_recipe(RecipeKind::Level3Base, {in}, proto.id,
                                               double(proto.n_in) / (proto.n_out * p));
                        fresh.push_back(std::move(e));
                    }
            }
            if (fresh.empty()) break;
            std::vector<CostEntry> merged = frontier;
            merged.insert(merged.end(), fresh.begin(), fresh.end());
            std::vector<CostEntry> next = prune_frontier(std::move(merged), grid);
            bool changed = next.size() != frontier.size();
            if (!changed)
                for (size_t i = 0; i < next.size(); ++i)
                    if (next[i].cost < frontier[i].cost * (1.0 - 1e-9) ||
                        next[i].error != frontier[i].error) {
                        changed = true;
                        break;
                    }
            frontier = std::move(next);
            if (!changed) break;
        }
        table.magic[level] = frontier;

        std::vector<CostEntry> rot_cands;
        for (const auto& m : table.magic[level])
            for (const auto& r : pivots) rot_cands.push_back(rotation_cost(m, r));
        table.rotation[level] = prune_frontier(std::move(rot_cands), grid);
    }
    return table;
}

CostEntry level3_base(double eps_raw, double target, const GridSpec& grid,
                      const std::vector<Level3Protocol>& protocols) {
    CostTable t = build_cost_table(3, eps_raw, grid, protocols);
    auto e = cheapest_magic(t, 3, target);
    if (!e) throw std::runtime_error("level3_base: target error unreachable");
    return *e;
}

std::optional<CostEntry> cheapest_magic(const CostTable& table, int level, double target) {
    return cheapest(table.magic_frontier(level), target);
}

std::optional<CostEntry> cheapest_rotation(const CostTable& table, int level, double target) {
    if (level == 2) {
        if (target < 0.0) return std::nullopt;
        return table.rotation_frontier(2).front();
    }
    return cheapest(table.rotation_frontier(level), target);
}

namespace {

const char* kind_name(RecipeKind k) {
    switch (k) {
        case RecipeKind::Raw: return "raw";
        case RecipeKind::PlusSubstitute: return "plus_substitute";
        case RecipeKind::Level3Base: return "level3_base";
        case RecipeKind::MeklRound: return "mekl_round";
        case RecipeKind::Dilute: return "dilute";
        case RecipeKind::Inject: return "inject";
        case RecipeKind::CliffordFree: return "clifford_free";
        case RecipeKind::GateSynthesis: return "gate_synthesis";
    }
    return "?";
}

RecipeKind kind_from_name(const std::string& s) {
    for (RecipeKind k :
         {RecipeKind::Raw, RecipeKind::PlusSubstitute, RecipeKind::Level3Base,
          RecipeKind::MeklRound, RecipeKind::Dilute, RecipeKind::Inject, RecipeKind::CliffordFree,
          RecipeKind::GateSynthesis})
        if (s == kind_name(k)) return k;
    throw std::runtime_error("unknown recipe kind: " + s);
}

json entry_to_json(const CostEntry& e);

json recipe_to_json(const RecipePtr& r) {
    if (!r) return nullptr;
    json j;
    j["kind"] = kind_name(r->kind);
    if (!r->protocol_id.empty()) j["protocol"] = r->protocol_id;
    if (r->factor != 0.0) j["factor"] = r->factor;
    if (!r->inputs.empty()) {
        j["inputs"] = json::array();
        for (const auto& in : r->inputs) j["inputs"].push_back(entry_to_json(in));
    }
    return j;
}

json entry_to_json(const CostEntry& e) {
    json j;
    j["level"] = e.level;
    j["error"] = e.error;
    j["cost"] = e.cost;
    j["recipe"] = recipe_to_json(e.recipe);
    return j;
}

CostEntry entry_from_json(const json& j);

RecipePtr recipe_from_json(const json& j) {
    if (j.is_null()) return nullptr;
    auto r = std::make_shared<Recipe>();
    r->kind = kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("protocol")) r->protocol_id = j["protocol"].get<std::string>();
    if (j.contains("factor")) r->factor = j["factor"].get<double>();
    if (j.contains("inputs"))
        for (const auto& in : j["inputs"]) r->inputs.push_back(entry_from_json(in));
    return r;
}

CostEntry entry_from_json(const json& j) {
    CostEntry e;
    e.level = j.at("level").get<int>();
    e.error = j.at("error").get<double>();
    e.cost = j.at("cost").get<double>();
    e.recipe = recipe_from_json(j.at("recipe"));
    return e;
}

}  // namespace

std::string cost_table_json(const CostTable& table) {
    json j;
    j["eps_raw"] = table.eps_raw;
    j["l_max"] = table.l_max;
    j["grid"] = {{"pts_per_decade", table.grid.pts_per_decade},
                 {"floor_error", table.grid.floor_error},
                 {"round_iterations", table.grid.round_iterations},
                 {"candidate_cap", table.grid.candidate_cap},
                 {"min_p_suc", table.grid.min_p_suc}};
    j["levels"] = json::array();
    for (const auto& [level, entries] : table.magic) {
        json lv;
        lv["level"] = level;
        lv["magic"] = json::array();
        for (const auto& e : entries) lv["magic"].push_back(entry_to_json(e));
        lv["rotation"] = json::array();
        for (const auto& e : table.rotation_frontier(level)) lv["rotation"].push_back(entry_to_json(e));
        j["levels"].push_back(std::move(lv));
    }
    return j.dump(2);
}

CostTable cost_table_from_json(const std::string& text) {
    json j = json::parse(text);
    CostTable t;
    t.eps_raw = j.at("eps_raw").get<double>();
    t.l_max = j.at("l_max").get<int>();
    const auto& g = j.at("grid");
    t.grid.pts_per_decade = g.at("pts_per_decade").get<double>();
    t.grid.floor_error = g.at("floor_error").get<double>();
    t.grid.round_iterations = g.at("round_iterations").get<int>();
    t.grid.candidate_cap = g.at("candidate_cap").get<int>();
    t.grid.min_p_suc = g.at("min_p_suc").get<double>();
    t.rotation[2] = {CostEntry{2, 0.0, 0.0, make_recipe(RecipeKind::CliffordFree)}};
    for (const auto& lv : j.at("levels")) {
        int level = lv.at("level").get<int>();
        for (const auto& e : lv.at("magic")) t.magic[level].push_back(entry_from_json(e));
        for (const auto& e : lv.at("rotation")) t.rotation[level].push_back(entry_from_json(e));
    }
    return t;
}

}  // namespace rotforge
