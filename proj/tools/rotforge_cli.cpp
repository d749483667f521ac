// Command-line surface: exact round simulation, invariant verification,
// cost-table construction, level sweeps, synthesis comparators, angle
// approximation and dilution arithmetic. Data goes to stdout (or --out),
// diagnostics to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotforge/circuit.hpp"
#include "rotforge/cost.hpp"
#include "rotforge/dilution.hpp"
#include "rotforge/noise.hpp"
#include "rotforge/sweep.hpp"
#include "rotforge/synthesis.hpp"
#include "rotforge/verify.hpp"
#include "rotforge/version.hpp"

using nlohmann::json;
using namespace rotforge;

namespace {

struct RunConfig {
    double eps_raw = 1e-3;
    int l_max = 8;
    std::vector<double> targets = {1e-15};
    double pts_per_decade = 20.0;
    uint64_t seed = 0;
    std::string protocol_file;
    std::string sr_table_file;
    std::string format = "json";
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json j = json::parse(in);
    if (j.contains("eps_raw")) cfg.eps_raw = j["eps_raw"].get<double>();
    if (j.contains("l_max")) cfg.l_max = j["l_max"].get<int>();
    if (j.contains("targets")) cfg.targets = j["targets"].get<std::vector<double>>();
    if (j.contains("pts_per_decade")) cfg.pts_per_decade = j["pts_per_decade"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("protocol_file")) cfg.protocol_file = j["protocol_file"].get<std::string>();
    if (j.contains("sr_table_file")) cfg.sr_table_file = j["sr_table_file"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
}

json config_echo(const RunConfig& cfg) {
    return {{"eps_raw", cfg.eps_raw},
            {"l_max", cfg.l_max},
            {"targets", cfg.targets},
            {"pts_per_decade", cfg.pts_per_decade},
            {"seed", cfg.seed},
            {"protocol_file", cfg.protocol_file},
            {"sr_table_file", cfg.sr_table_file}};
}

std::vector<Level3Protocol> protocols_for(const RunConfig& cfg) {
    if (cfg.protocol_file.empty()) return default_level3_protocols();
    return load_level3_protocols(cfg.protocol_file);
}

SynthesisModel sr_model_for(const RunConfig& cfg, double sr_c) {
    if (cfg.sr_table_file.empty()) return SynthesisModel::sr_analytic(sr_c);
    return SynthesisModel::sr_table(load_sr_table_csv(cfg.sr_table_file));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

json synthesis_block(const RunConfig& cfg, const CostTable& table, double sr_c) {
    json s;
    const auto& m3 = table.magic_frontier(3);
    SynthesisModel pqf = SynthesisModel::pqf();
    SynthesisModel sr = sr_model_for(cfg, sr_c);
    for (double target : cfg.targets) {
        json row;
        char key[40];
        std::snprintf(key, sizeof key, "%.6g", target);
        try {
            auto e = gs_rotation_cost(pqf, m3, target);
            row["pqf"] = {{"cost", e.cost}, {"tcount", e.recipe->factor}, {"error", e.error}};
        } catch (const std::exception& ex) {
            row["pqf"] = {{"status", "unreachable"}};
        }
        try {
            auto e = gs_rotation_cost(sr, m3, target);
            row["sr"] = {{"cost", e.cost}, {"tcount", e.recipe->factor}, {"error", e.error}};
        } catch (const std::exception& ex) {
            row["sr"] = {{"status", "unreachable"}};
        }
        s[key] = row;
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotforge: small-angle magic-state distillation and rotation-cost toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("rotforge ") + kVersion);

    RunConfig cfg;
    std::string config_path;
    // config file is applied before parsing so explicit flags override it
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        try {
            apply_config_file(cfg, config_path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
    }
    app.add_option("--config", config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);

    // verify
    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    int mc_trials = 200;
    uint64_t verify_seed = 0;
    bool inject_bug = false;
    verify->add_option("--trials", mc_trials, "generic-noise Monte Carlo trials");
    verify->add_option("--seed", verify_seed, "Monte Carlo seed");
    verify->add_flag("--inject-sign-bug", inject_bug,
                     "test hook: negate the pivot reflection in the identity check");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "exact one-round simulation");
    int sim_l = 5;
    double sim_e3 = 0.0, sim_el = 0.0, sim_eta = 0.0;
    std::string sim_protocol = "mek";
    simulate->add_option("--l", sim_l, "hierarchy level (>= 3)")->required();
    simulate->add_option("--eps3", sim_e3, "error rate per injected R3 site");
    simulate->add_option("--epsl", sim_el, "input magic-state error rate");
    simulate->add_option("--eta", sim_eta, "pivotal rotation error rate");
    simulate->add_option("--protocol", sim_protocol, "mek or dp")
        ->check(CLI::IsMember({"mek", "dp"}));

    // cost
    auto* cost = app.add_subcommand("cost", "build the cost table and report targets");
    std::string cost_out;
    cost->add_option("--raw", cfg.eps_raw, "raw state error rate");
    cost->add_option("--l-max", cfg.l_max, "highest level to build");
    cost->add_option("--targets", cfg.targets, "target error rates");
    cost->add_option("--grid", cfg.pts_per_decade, "grid points per decade");
    cost->add_option("--protocols", cfg.protocol_file, "level-3 protocol definition JSON");
    cost->add_option("--sr-table", cfg.sr_table_file, "SR T-count table CSV");
    cost->add_option("--out", cost_out, "write the full cost table JSON here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "per-level rotation cost CSV");
    std::string sweep_range = "3:30";
    double sweep_target = 1e-15;
    std::string sweep_out, sweep_from_table;
    double sr_c = 3.0;
    sweep->add_option("--l-range", sweep_range, "levels as min:max");
    sweep->add_option("--target", sweep_target, "rotation error target")->required();
    sweep->add_option("--raw", cfg.eps_raw, "raw state error rate");
    sweep->add_option("--grid", cfg.pts_per_decade, "grid points per decade");
    sweep->add_option("--protocols", cfg.protocol_file, "level-3 protocol definition JSON");
    sweep->add_option("--sr-table", cfg.sr_table_file, "SR T-count table CSV");
    sweep->add_option("--sr-c", sr_c, "SR analytic coefficient");
    sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");
    sweep->add_option("--from-table", sweep_from_table, "reuse an exported cost table JSON")
        ->check(CLI::ExistingFile);

    // synth
    auto* synth = app.add_subcommand("synth", "T-count of one synthesized rotation");
    std::string synth_method = "pqf";
    double synth_eps = 1e-10;
    synth->add_option("--method", synth_method, "pqf, sr-analytic or sr-table")
        ->check(CLI::IsMember({"pqf", "sr-analytic", "sr-table"}));
    synth->add_option("--eps", synth_eps, "synthesis precision (diamond)")->required();
    synth->add_option("--sr-c", sr_c, "SR analytic coefficient");
    synth->add_option("--sr-table", cfg.sr_table_file, "SR T-count table CSV");

    // angle
    auto* angle = app.add_subcommand("angle", "approximate an arbitrary angle");
    double angle_phi = 0.0, angle_tol = 1e-10;
    angle->add_option("--phi", angle_phi, "target angle in radians")->required();
    angle->add_option("--tol", angle_tol, "worst-case angle tolerance")->required();

    // dilute
    auto* dil = app.add_subcommand("dilute", "one dilution step");
    int dil_l = 10;
    double dil_eps = 0.0;
    dil->add_option("--l", dil_l, "input state level")->required();
    dil->add_option("--eps", dil_eps, "input state error rate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*verify) {
            VerifyOptions opts;
            opts.seed = verify_seed;
            opts.mc_trials = mc_trials;
            opts.inject_sign_bug = inject_bug;
            auto results = run_verification(opts);
            for (const auto& r : results) {
                std::printf("%-42s %s  deviation=%.3e%s%s\n", r.name.c_str(),
                            r.pass ? "ok  " : "FAIL", r.deviation, r.detail.empty() ? "" : "  ",
                            r.detail.c_str());
            }
            bool ok = all_passed(results);
            std::printf("verify: %s\n", ok ? "all checks passed" : "FAILURES PRESENT");
            return ok ? 0 : 1;
        }

        if (*simulate) {
            Circuit c = build_circuit(sim_protocol == "dp" ? Protocol::Dp : Protocol::Mek, sim_l);
            RoundOutcome out = simulate_round(c, NoiseSpec(sim_e3, sim_el, sim_eta));
            RoundOutcome lo = leading_order(NoiseSpec(sim_e3, sim_el, sim_eta));
            json j = {{"version", kVersion},
                      {"protocol", sim_protocol},
                      {"l", sim_l},
                      {"eps3", sim_e3},
                      {"epsl", sim_el},
                      {"eta", sim_eta},
                      {"delta", out.delta},
                      {"p_suc", out.p_suc},
                      {"leading_order", {{"delta", lo.delta}, {"p_suc", lo.p_suc}}}};
            emit(j.dump(2), "");
            return 0;
        }

        if (*cost) {
            GridSpec grid;
            grid.pts_per_decade = cfg.pts_per_decade;
            CostTable table = build_cost_table(cfg.l_max, cfg.eps_raw, grid, protocols_for(cfg));
            json j = {{"version", kVersion}, {"config", config_echo(cfg)}};
            json results = json::array();
            for (double target : cfg.targets) {
                for (int level = 3; level <= cfg.l_max; ++level) {
                    json row = {{"level", level}, {"target", target}};
                    auto m = cheapest_magic(table, level, target);
                    auto r = cheapest_rotation(table, level, target);
                    if (m) {
                        row["magic_cost"] = m->cost;
                        row["magic_error"] = m->error;
                    } else {
                        row["magic_status"] = "unreachable";
                    }
                    if (r) {
                        row["rotation_cost"] = r->cost;
                        row["rotation_error"] = r->error;
                    } else {
                        row["rotation_status"] = "unreachable";
                    }
                    results.push_back(std::move(row));
                }
            }
            j["results"] = std::move(results);
            j["synthesis"] = synthesis_block(cfg, table, sr_c);
            emit(j.dump(2), "");
            if (!cost_out.empty()) {
                json full = json::parse(cost_table_json(table));
                full["version"] = kVersion;
                full["config"] = config_echo(cfg);
                full["synthesis"] = synthesis_block(cfg, table, sr_c);
                emit(full.dump(2), cost_out);
                std::fprintf(stderr, "cost table written to %s\n", cost_out.c_str());
            }
            return 0;
        }

        if (*sweep) {
            int lo = 3, hi = 0;
            if (std::sscanf(sweep_range.c_str(), "%d:%d", &lo, &hi) != 2 || lo < 3 || hi < lo)
                throw std::runtime_error("bad --l-range, expected min:max with min >= 3");
            CostTable table;
            if (!sweep_from_table.empty()) {
                std::ifstream in(sweep_from_table);
                std::stringstream ss;
                ss << in.rdbuf();
                table = cost_table_from_json(ss.str());
                if (table.l_max < hi)
                    throw std::runtime_error("imported table stops below requested range");
            } else {
                GridSpec grid;
                grid.pts_per_decade = cfg.pts_per_decade;
                table = build_cost_table(hi, cfg.eps_raw, grid, protocols_for(cfg));
            }
            table.l_max = hi;
            std::vector<SweepRow> rows =
                sweep_levels(table, sweep_target, SynthesisModel::pqf(), sr_model_for(cfg, sr_c));
            std::vector<SweepRow> window;
            for (const auto& r : rows)
                if (r.level >= lo && r.level <= hi) window.push_back(r);
            for (const auto& r : window)
                if (!r.reachable)
                    std::fprintf(stderr, "warning: target unreachable at level %d\n", r.level);
            emit(sweep_csv(window), sweep_out);
            return 0;
        }

        if (*synth) {
            SynthesisModel model = SynthesisModel::pqf();
            if (synth_method == "sr-analytic") model = SynthesisModel::sr_analytic(sr_c);
            if (synth_method == "sr-table")
                model = SynthesisModel::sr_table(load_sr_table_csv(cfg.sr_table_file));
            json j = {{"version", kVersion},
                      {"method", synth_method},
                      {"eps", synth_eps},
                      {"tcount", model.tcount(synth_eps)}};
            emit(j.dump(2), "");
            return 0;
        }

        if (*angle) {
            AngleApproximation a = approximate_angle(angle_phi, angle_tol);
            json j = {{"version", kVersion}, {"phi", angle_phi},  {"tol", angle_tol},
                      {"l", a.level},        {"n", a.n},          {"err", a.achieved_error}};
            emit(j.dump(2), "");
            return 0;
        }

        if (*dil) {
            DilutionResult r = dilute(dil_l, dil_eps);
            json j = {{"version", kVersion},
                      {"l", dil_l},
                      {"eps", dil_eps},
                      {"lambda", r.lambda},
                      {"eps_out", r.eps_out},
                      {"critical_level", critical_level(std::max(dil_eps, 1e-300))}};
            if (dil_eps <= 0.0) j.erase("critical_level");
            emit(j.dump(2), "");
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
