#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpr/exact.hpp"
#include "tpr/fv.hpp"
#include "tpr/models.hpp"
#include "tpr/presets.hpp"

namespace tpr {

// 17 significant digits, the round-trip precision of a double.
std::string format_number(double v);

// Evenly spaced xi samples covering every wave plus a margin on both sides.
// Two samples give exactly the outer states.
std::vector<double> exact_sample_points(const ExactSolution& sol, int count);

void write_exact_csv(std::ostream& os, const ExactSolution& sol, const std::vector<double>& xi);
void write_snapshot_csv(std::ostream& os, const SimulationResult& r, const EosPair& eos);
// Eigenvalues of the exact solution along xi, one column per family.
void write_eigen_csv(std::ostream& os, const ExactSolution& sol, const std::vector<double>& xi);

nlohmann::json ledger_json(const SimulationResult& r);
nlohmann::json wave_summary_json(const ExactSolution& sol);
std::string wave_summary_text(const ExactSolution& sol);
nlohmann::json validation_json(const ValidationReport& report);
nlohmann::json kapila_json(const KapilaDiagnostics& d);

// Flat key=value problem description. Lines starting with '#' are comments.
std::map<std::string, std::string> parse_key_values(std::istream& is);
Preset parse_problem(std::istream& is);
Preset load_problem(const std::string& path);
// Preset name or path to a problem file.
Preset resolve_problem(const std::string& name_or_path);
std::string problem_to_text(const Preset& p);

// Plotting script for the CSV files written by the CLI. Exact solution files
// (xi column) are drawn at x = x0 + t xi.
std::string plot_script(const std::string& title, const std::vector<std::string>& csv_files,
                        double x0 = 0.0, double t = 1.0);

}  // namespace tpr
