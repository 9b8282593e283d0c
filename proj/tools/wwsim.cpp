// wwsim: pseudospectral simulator and verification harness for 2-D
// infinite-depth gravity water waves between vertical walls, in flattened
// Riemann-mapping coordinates on [-1, 1].

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ww/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0, exit_runtime = 1, exit_usage = 2;

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::vector<std::string>& overrides, bool want_svg) {
    ww::json doc = config_path.empty() ? ww::json::object() : ww::load_json_file(config_path);
    for (const auto& kv : overrides) ww::apply_override(doc, kv);
    if (doc.value("svg", false)) want_svg = true;
    const ww::RunConfig cfg = ww::parse_run_config(doc);

    const fs::path out(out_dir);
    fs::create_directories(out / "snapshots");
    const ww::RunResult res = ww::run(cfg);

    ww::write_text_file(out / "energy.csv", ww::energy_csv(res.series));
    for (const auto& snap : res.snapshots) {
        std::ostringstream name;
        name << "t=" << snap.t << ".json";
        ww::write_text_file(out / "snapshots" / name.str(),
                            ww::snapshot_to_json(snap).dump(2) + "\n");
    }
    ww::json summary;
    summary["format_version"] = 1;
    summary["min_a1"] = res.summary.min_a1;
    summary["max_holo_drift"] = res.summary.max_holo_drift;
    summary["steps"] = res.summary.steps;
    summary["wall_time_s"] = res.summary.wall_time_s;
    summary["completed"] = res.summary.completed;
    if (std::isfinite(res.summary.measured_period))
        summary["measured_period"] = res.summary.measured_period;
    if (!res.summary.error.empty()) summary["error"] = res.summary.error;
    ww::write_text_file(out / "summary.json", summary.dump(2) + "\n");
    if (want_svg) ww::write_text_file(out / "energy.svg", ww::energy_svg(res.series));

    if (!res.summary.completed) {
        std::cerr << "run aborted: " << res.summary.error << "\n";
        return exit_runtime;
    }
    std::cout << "run complete: " << res.summary.steps << " steps, min A1 " << res.summary.min_a1
              << ", max holo drift " << res.summary.max_holo_drift << "\n";
    return exit_ok;
}

int cmd_verify(const std::string& suite, int trials, int n, std::uint64_t seed, int jobs) {
    std::vector<ww::VerifyReport> reports;
    auto run_suite = [&](const std::string& name) -> ww::VerifyReport {
        if (name == "identities") return ww::check_identities(n, trials, seed);
        if (name == "commutators") return ww::check_commutator_identities(trials, seed);
        if (name == "inequalities") return ww::check_inequalities(n, trials, seed);
        if (name == "taylor") {
            std::vector<ww::InterfaceState> states;
            const ww::PeriodicGrid g(n);
            ww::Rng rng(seed);
            for (int t = 0; t < trials; ++t)
                states.push_back(ww::random_holomorphic_state(g, rng, n / 4, 0.05));
            ww::VerifyReport rep = ww::check_taylor(states);
            const ww::VerifyReport crest = ww::check_taylor_crest(2.5, {128, 256, 512});
            rep.checks.insert(rep.checks.end(), crest.checks.begin(), crest.checks.end());
            return rep;
        }
        throw ww::ConfigError("unknown suite: " + name);
    };

    std::vector<std::string> names;
    if (suite == "all") names = {"identities", "commutators", "inequalities", "taylor"};
    else names = {suite};

    if (jobs > 1 && names.size() > 1) {
        std::vector<std::future<ww::VerifyReport>> futs;
        for (const auto& nm : names)
            futs.push_back(std::async(std::launch::async, run_suite, nm));
        for (auto& f : futs) reports.push_back(f.get());
    } else {
        for (const auto& nm : names) reports.push_back(run_suite(nm));
    }

    bool ok = true;
    for (const auto& rep : reports) {
        std::cout << ww::verify_report_text(rep);
        ok = ok && rep.all_pass();
    }
    return ok ? exit_ok : exit_runtime;
}

int cmd_scan(const std::string& r_spec, const std::string& n_spec, const std::string& out_dir,
             int jobs) {
    const std::vector<double> r_list = parse_double_list(r_spec);
    const std::vector<int> n_list = parse_int_list(n_spec);
    if (r_list.empty() || n_list.empty()) {
        std::cerr << "scan-angles: need nonempty --r and --n lists\n";
        return exit_usage;
    }
    std::vector<ww::ScanRow> table;
    if (jobs > 1) {
        std::vector<std::future<std::vector<ww::ScanRow>>> futs;
        for (double r : r_list)
            futs.push_back(std::async(std::launch::async, [r, &n_list] {
                return ww::crest_angle_scan({r}, n_list);
            }));
        for (auto& f : futs) {
            auto rows = f.get();
            table.insert(table.end(), rows.begin(), rows.end());
        }
    } else {
        table = ww::crest_angle_scan(r_list, n_list);
    }
    const std::string csv = ww::scan_csv(table);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        ww::write_text_file(fs::path(out_dir) / "scan.csv", csv);
    }
    std::cout << csv;
    return exit_ok;
}

int cmd_energy_report(const std::string& snapshot_path, double alpha0) {
    const ww::json j = ww::load_json_file(snapshot_path);
    const ww::Snapshot snap = ww::snapshot_from_json(j);
    ww::InterfaceState s = ww::state_from_snapshot(snap);
    s = ww::enforce_holomorphic(s).first;
    const ww::DerivedState d = ww::derive(s);
    const ww::EnergyReport e = ww::energy(s, d, alpha0);
    const ww::CharacterizationReport c = ww::characterization(s, d);
    ww::json out;
    out["format_version"] = 1;
    out["t"] = e.t;
    out["energy"] = {{"ea_1", e.ea_1}, {"ea_23", e.ea_23}, {"ea_4", e.ea_4},
                     {"eb_1", e.eb_1}, {"eb_2", e.eb_2},   {"eb_3", e.eb_3},
                     {"anchor", e.anchor}, {"total", e.total}};
    out["characterization"] = {{"zt_bar_a_l2", c.zt_bar_a_l2},
                               {"d2_zt_bar_l2", c.d2_zt_bar_l2},
                               {"d_zp_inv_l2", c.d_zp_inv_l2},
                               {"d2_zp_inv_l2", c.d2_zp_inv_l2},
                               {"d2_zt_bar_weighted_hhalf", c.d2_zt_bar_weighted_hhalf},
                               {"d_zt_bar_hhalf", c.d_zt_bar_hhalf},
                               {"zp_inv_linf", c.zp_inv_linf}};
    std::cout << out.dump(2) << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"water-wave simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", suite = "all", r_spec, n_spec = "128,256,512,1024,2048";
    std::string snapshot_path;
    std::vector<std::string> overrides;
    int trials = 100, n = 256, jobs = 1;
    std::uint64_t seed = 1;
    bool want_svg = false;
    double alpha0 = 0.0;

    auto* sim = app.add_subcommand("simulate", "integrate a configured run");
    sim->add_option("--config", config_path, "JSON run configuration");
    sim->add_option("--out", out_dir, "output directory");
    sim->add_option("--set", overrides, "dotted key=value override (repeatable)");
    sim->add_flag("--svg", want_svg, "emit energy.svg");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "identities|commutators|inequalities|taylor|all");
    ver->add_option("--trials", trials, "randomized trials per check");
    ver->add_option("--n", n, "grid size");
    ver->add_option("--seed", seed, "random seed");
    ver->add_option("--jobs", jobs, "max concurrent suites");

    auto* scan = app.add_subcommand("scan-angles", "crest-angle refinement scan");
    scan->add_option("--r", r_spec, "comma-separated crest exponents");
    scan->add_option("--n", n_spec, "comma-separated grid sizes");
    scan->add_option("--out", out_dir, "optional output directory for scan.csv")->default_val("");
    scan->add_option("--jobs", jobs, "max concurrent exponents");

    auto* erep = app.add_subcommand("energy-report", "energy of a stored snapshot");
    erep->add_option("--snapshot", snapshot_path, "snapshot JSON path")->required();
    erep->add_option("--anchor", alpha0, "anchor point");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, overrides, want_svg);
        if (ver->parsed()) return cmd_verify(suite, trials, n, seed, jobs);
        if (scan->parsed()) return cmd_scan(r_spec, n_spec, out_dir, jobs);
        if (erep->parsed()) return cmd_energy_report(snapshot_path, alpha0);
    } catch (const ww::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_usage;
}
