#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tpr/errors.hpp"
#include "tpr/fv.hpp"
#include "tpr/io.hpp"
#include "tpr/models.hpp"
#include "tpr/presets.hpp"

namespace fs = std::filesystem;
using namespace tpr;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_validation = 2;
constexpr int exit_numerics = 3;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::numerics:
        case ErrorKind::positivity:
        case ErrorKind::relaxation:
        case ErrorKind::state_decode:
            return exit_numerics;
        case ErrorKind::config:
            return exit_usage;
        default:
            return exit_validation;
    }
}

struct Common {
    std::string problem;
    std::string out_dir;
};

struct RunOptions {
    std::string model;
    int cells = 2000;
    bool paper_scale = false;
    double theta1 = relaxation_off;
    double theta2 = relaxation_off;
    std::string limiter = "minmod";
    double cfl = 0.0;
    double t_end = 0.0;
    std::string splitting = "strang";
    bool floored = false;
};

fs::path output_dir(const Common& c) {
    std::string dir = c.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("TPR_OUTPUT_DIR");
        dir = env && *env ? env : "tpr_output";
    }
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::config, "cannot write '" + path.string() + "'");
    out << text;
    std::cout << "  wrote " << path.string() << '\n';
}

void header(const Preset& p, const std::string& command) {
    std::cout << command << " " << p.name;
    if (!p.description.empty()) std::cout << ": " << p.description;
    std::cout << "\n  EOS: " << p.eos_note << '\n';
}

std::string slug(const std::string& name) {
    std::string s;
    for (char ch : name) s += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    return s;
}

bool has_construction(const Preset& p) { return !p.left_waves.empty() || !p.right_waves.empty(); }

SolverConfig make_config(const Preset& p, const RunOptions& o, Scheme scheme) {
    SolverConfig c;
    c.scheme = scheme;
    c.cfl = o.cfl > 0.0 ? o.cfl : p.cfl;
    c.t_end = o.t_end > 0.0 ? o.t_end : p.t_end;
    c.limiter = parse_limiter(o.limiter);
    c.theta1 = o.theta1;
    c.theta2 = o.theta2;
    if (o.splitting == "strang")
        c.splitting = Splitting::strang;
    else if (o.splitting == "godunov")
        c.splitting = Splitting::godunov;
    else
        fail(ErrorKind::config, "unknown splitting '" + o.splitting + "'");
    c.positivity = o.floored ? PositivityMode::floored : PositivityMode::strict;
    c.validate();
    return c;
}

Grid make_grid(const Preset& p, const RunOptions& o) {
    Grid g{p.x_min, p.x_max, o.paper_scale ? p.paper_cells : o.cells};
    g.validate();
    return g;
}

RiemannData riemann_data(const Preset& p) {
    if (has_construction(p)) {
        const auto [L, R] = consistent_initial_data(p);
        return {L, R, p.x0};
    }
    return {p.left, p.right, p.x0};
}

SimulationResult timed_run(const Preset& p, const Grid& g, const SolverConfig& c) {
    std::cout << "  running " << to_string(c.scheme) << " on " << g.n_cells << " cells to t = "
              << c.t_end;
    if (c.relaxing()) std::cout << " (theta1 = " << c.theta1 << ", theta2 = " << c.theta2 << ")";
    std::cout << std::flush;
    const auto t0 = std::chrono::steady_clock::now();
    SimulationResult r = run_simulation(riemann_data(p), g, c, p.eos);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << ": " << r.steps << " steps, " << std::setprecision(3) << secs << " s\n"
              << std::setprecision(6);
    for (const auto& line : r.log) std::cout << "  note: " << line << '\n';
    return r;
}

int cmd_exact(const Common& c, int samples) {
    const Preset p = resolve_problem(c.problem);
    header(p, "exact");
    if (!has_construction(p)) fail(ErrorKind::config, p.name + " has no wave construction");
    const ExactSolution sol = exact_solution(p);
    const ValidationReport report = validate_solution(sol);
    const fs::path dir = output_dir(c);
    const std::string base = slug(p.name);

    std::ostringstream csv;
    write_exact_csv(csv, sol, exact_sample_points(sol, samples));
    write_file(dir / (base + "_exact.csv"), csv.str());
    write_file(dir / (base + "_waves.json"), wave_summary_json(sol).dump(2) + "\n");
    write_file(dir / (base + "_waves.txt"), wave_summary_text(sol));
    write_file(dir / (base + "_validation.json"), validation_json(report).dump(2) + "\n");
    write_file(dir / (base + "_exact_plot.py"), plot_script(p.name + " exact", {base + "_exact.csv"}));
    std::cout << wave_summary_text(sol);
    if (!report.ok()) {
        std::cout << report.to_text();
        return exit_validation;
    }
    return exit_ok;
}

int cmd_simulate(const Common& c, const RunOptions& o) {
    const Preset p = resolve_problem(c.problem);
    header(p, "simulate");
    const Scheme scheme = o.model.empty() ? p.paper_scheme : parse_scheme(o.model);
    const Grid g = make_grid(p, o);
    const SolverConfig cfg = make_config(p, o, scheme);
    const SimulationResult r = timed_run(p, g, cfg);

    const fs::path dir = output_dir(c);
    const std::string base = slug(p.name) + "_" + to_string(scheme) + "_" + std::to_string(g.n_cells);
    std::ostringstream csv;
    write_snapshot_csv(csv, r, p.eos);
    write_file(dir / (base + ".csv"), csv.str());
    write_file(dir / (base + "_ledger.json"), ledger_json(r).dump(1) + "\n");
    const KapilaDiagnostics k = kapila_limit_diagnostics(r.cells, p.eos);
    write_file(dir / (base + "_kapila.json"), kapila_json(k).dump(2) + "\n");

    std::vector<std::string> files = {base + ".csv"};
    std::cout << "  ledger closure " << r.max_ledger_error << '\n'
              << "  kapila: max |p1-p2|/p " << k.pressure_max << ", max |w| " << k.slip_max
              << (k.kapila() ? " (relaxed)" : " (not relaxed)") << '\n';
    if (has_construction(p) && !cfg.relaxing() && cfg.t_end == p.t_end) {
        const ExactSolution sol = exact_solution(p);
        std::ostringstream ex;
        write_exact_csv(ex, sol, exact_sample_points(sol, 2001));
        write_file(dir / (slug(p.name) + "_exact.csv"), ex.str());
        files.push_back(slug(p.name) + "_exact.csv");
        for (Variable v : all_variables())
            std::cout << "  L1 error " << std::setw(6) << to_string(v) << "  "
                      << l1_error(r, sol, p.x0, v) << '\n';
    }
    write_file(dir / (base + "_plot.py"), plot_script(p.name, files, p.x0, cfg.t_end));
    return exit_ok;
}

std::vector<Scheme> parse_models(const std::string& text) {
    std::vector<Scheme> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(parse_scheme(item));
    if (out.size() < 2) fail(ErrorKind::config, "compare needs at least two models");
    return out;
}

int cmd_compare(const Common& c, const RunOptions& o, const std::string& models) {
    const Preset p = resolve_problem(c.problem);
    header(p, "compare");
    const std::vector<Scheme> schemes = parse_models(models);
    const Grid g = make_grid(p, o);

    std::vector<SimulationResult> runs;
    for (Scheme s : schemes) runs.push_back(timed_run(p, g, make_config(p, o, s)));

    nlohmann::json report = {{"problem", p.name}, {"cells", g.n_cells}, {"theta1", o.theta1},
                             {"theta2", o.theta2}};
    if (!std::isfinite(o.theta1)) report["theta1"] = "off";
    if (!std::isfinite(o.theta2)) report["theta2"] = "off";

    // Discretization tolerance: homogeneous first model against the exact solution.
    double reference = 0.0;
    if (has_construction(p)) {
        RunOptions h = o;
        h.theta1 = h.theta2 = relaxation_off;
        const bool same = !std::isfinite(o.theta1) && !std::isfinite(o.theta2);
        const SimulationResult base = same ? runs.front() : timed_run(p, g, make_config(p, h, schemes.front()));
        reference = l1_error(base, exact_solution(p), p.x0, Variable::rho);
        report["reference_l1_rho"] = reference;
        std::cout << "  reference: " << to_string(schemes.front()) << " vs exact L1(rho) = " << reference << '\n';
    }

    nlohmann::json pairs = nlohmann::json::array();
    for (size_t j = 1; j < runs.size(); ++j) {
        const std::string name = std::string(to_string(schemes.front())) + " vs " + to_string(schemes[j]);
        std::cout << "  " << name << "\n    " << std::left << std::setw(8) << "var" << std::setw(14)
                  << "L1" << "Linf\n" << std::right;
        nlohmann::json table;
        for (Variable v : all_variables()) {
            const double l1 = l1_difference(runs.front(), runs[j], v, p.eos);
            const double li = linf_difference(runs.front(), runs[j], v, p.eos);
            table[to_string(v)] = {{"l1", l1}, {"linf", li}};
            std::cout << "    " << std::left << std::setw(8) << to_string(v) << std::setw(14) << l1
                      << li << '\n' << std::right;
        }
        nlohmann::json entry = {{"pair", name}, {"differences", table}};
        if (reference > 0.0) {
            const double ratio = table["rho"]["l1"].get<double>() / reference;
            std::string verdict = ratio < 3.0    ? "models agree within discretization error"
                                  : ratio > 10.0 ? "models disagree beyond discretization error"
                                                 : "inconclusive at this resolution";
            entry["ratio_to_reference"] = ratio;
            entry["verdict"] = verdict;
            std::cout << "    L1(rho) difference / reference = " << ratio << ": " << verdict << '\n';
        }
        pairs.push_back(entry);
    }
    report["comparisons"] = pairs;
    nlohmann::json kap = nlohmann::json::array();
    for (size_t j = 0; j < runs.size(); ++j) {
        const auto k = kapila_limit_diagnostics(runs[j].cells, p.eos);
        nlohmann::json kj = kapila_json(k);
        kj["model"] = to_string(schemes[j]);
        kap.push_back(kj);
    }
    report["kapila"] = kap;

    const fs::path dir = output_dir(c);
    const std::string base = slug(p.name) + "_compare_" + std::to_string(g.n_cells);
    write_file(dir / (base + ".json"), report.dump(2) + "\n");
    std::vector<std::string> files;
    for (size_t j = 0; j < runs.size(); ++j) {
        const std::string f = base + "_" + to_string(schemes[j]) + ".csv";
        std::ostringstream csv;
        write_snapshot_csv(csv, runs[j], p.eos);
        write_file(dir / f, csv.str());
        files.push_back(f);
    }
    write_file(dir / (base + "_plot.py"), plot_script(p.name + " comparison", files, p.x0, p.t_end));
    return exit_ok;
}

int cmd_eigen(const Common& c, int samples) {
    const Preset p = resolve_problem(c.problem);
    header(p, "eigen");
    if (!has_construction(p)) fail(ErrorKind::config, p.name + " has no wave construction");
    const ExactSolution sol = exact_solution(p);
    std::ostringstream csv;
    write_eigen_csv(csv, sol, exact_sample_points(sol, samples));
    write_file(output_dir(c) / (slug(p.name) + "_eigen.csv"), csv.str());
    return exit_ok;
}

int cmd_validate(const Common& c) {
    const Preset p = resolve_problem(c.problem);
    header(p, "validate");
    if (!has_construction(p)) fail(ErrorKind::config, p.name + " has no wave construction");
    const ExactSolution sol = exact_solution(p);
    const ValidationReport report = validate_solution(sol);
    std::cout << report.to_text();
    bool ok = report.ok();
    if (!p.table.empty()) {
        std::cout << "  printed table, tolerance " << table_tol << '\n';
        for (const auto& e : compare_with_table(p, sol)) {
            if (e.error <= table_tol) continue;
            ok = false;
            std::cout << "    MISMATCH " << e.column << "." << e.variable << ": computed "
                      << format_number(e.computed) << ", printed " << format_number(e.printed)
                      << " (relative " << e.error << ")\n";
        }
    }
    nlohmann::json out = validation_json(report);
    out["ok"] = ok;
    write_file(output_dir(c) / (slug(p.name) + "_validation.json"), out.dump(2) + "\n");
    std::cout << (ok ? "  valid\n" : "  INVALID\n");
    return ok ? exit_ok : exit_validation;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("problem", c.problem, "preset RP1..RP6 or path to a problem file")->required();
    sub->add_option("-o,--out", c.out_dir, "output directory (default $TPR_OUTPUT_DIR or ./tpr_output)");
}

void add_run(CLI::App* sub, RunOptions& o) {
    sub->add_option("--cells", o.cells, "number of cells")->check(CLI::PositiveNumber);
    sub->add_flag("--paper-scale", o.paper_scale, "use the resolution of the original experiments");
    sub->add_option("--theta1", o.theta1, "pressure relaxation time (default off)");
    sub->add_option("--theta2", o.theta2, "velocity relaxation time (default off)");
    sub->add_option("--limiter", o.limiter, "minmod, barth or superbee");
    sub->add_option("--cfl", o.cfl, "Courant number (default from the problem)");
    sub->add_option("--t-end", o.t_end, "final time (default from the problem)");
    sub->add_option("--splitting", o.splitting, "strang or godunov");
    sub->add_flag("--floored", o.floored, "floor densities and volume fractions instead of failing");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase Riemann problems: exact solutions and finite-volume solvers"};
    app.require_subcommand(1);

    Common common;
    RunOptions run;
    int samples = 2001;
    std::string models = "shtc,bn";

    auto* exact = app.add_subcommand("exact", "build and sample the exact solution");
    add_common(exact, common);
    exact->add_option("-n,--samples", samples, "number of xi samples")->check(CLI::Range(2, 100000000));

    auto* simulate = app.add_subcommand("simulate", "run a finite-volume solver");
    add_common(simulate, common);
    add_run(simulate, run);
    simulate->add_option("--model,--scheme", run.model,
                         "shtc (muscl-rusanov), force (force-godunov) or bn (muscl-pathcons-bn)");

    auto* compare = app.add_subcommand("compare", "run several models on one grid and compare them");
    add_common(compare, common);
    add_run(compare, run);
    compare->add_option("--models", models, "comma separated list, first one is the baseline");

    auto* eigen = app.add_subcommand("eigen", "eigenvalues along the exact solution");
    add_common(eigen, common);
    eigen->add_option("-n,--samples", samples, "number of xi samples")->check(CLI::Range(2, 100000000));

    auto* validate = app.add_subcommand("validate", "validate the exact solution and printed tables");
    add_common(validate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        std::cout << std::setprecision(6);
        if (exact->parsed()) return cmd_exact(common, samples);
        if (simulate->parsed()) return cmd_simulate(common, run);
        if (compare->parsed()) return cmd_compare(common, run, models);
        if (eigen->parsed()) return cmd_eigen(common, samples);
        if (validate->parsed()) return cmd_validate(common);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerics;
    }
    return exit_usage;
}
