#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tpr/exact.hpp"
#include "tpr/presets.hpp"
#include "tpr/state.hpp"

namespace tpr {

struct Grid {
    double x_min = -1.0;
    double x_max = 1.0;
    int n_cells = 2000;

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }
    void validate() const;
};

enum class Limiter { minmod, barth, superbee };
enum class Splitting { strang, godunov };
enum class PositivityMode { strict, floored };

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& text);
const char* to_string(Limiter l);
Limiter parse_limiter(const std::string& text);

constexpr double relaxation_off = std::numeric_limits<double>::infinity();

struct SolverConfig {
    double cfl = 0.25;
    double t_end = 0.25;
    Scheme scheme = Scheme::muscl_rusanov;
    Limiter limiter = Limiter::minmod;
    double theta1 = relaxation_off;
    double theta2 = relaxation_off;
    Splitting splitting = Splitting::strang;
    PositivityMode positivity = PositivityMode::strict;
    int ledger_every = 1;
    long max_steps = 100000000;

    void validate() const;
    bool relaxing() const { return std::isfinite(theta1) || std::isfinite(theta2); }
};

double limit_slope(Limiter l, double a, double b);

// Largest |lambda| over the five fields.
double max_wave_speed(const Primitive& W, const EosPair& eos);

Vec5 rusanov_flux(const Vec5& UL, const Vec5& UR, const EosPair& eos);
Vec5 force_flux(const Vec5& UL, const Vec5& UR, double dx, double dt, const EosPair& eos);

// Baer-Nunziato block variables (alpha1, alpha1 rho1, alpha2 rho2, alpha1 rho1 u1, alpha2 rho2 u2).
Vec5 to_bn(const Primitive& W);
Primitive from_bn(const Vec5& V);
Vec5 bn_flux(const Vec5& V, const EosPair& eos);
// Path integral of the nonconservative product along the segment from VL to VR.
Vec5 bn_path_term(const Vec5& VL, const Vec5& VR, const EosPair& eos);

struct StepLog {
    std::vector<std::string> events;
};

using Cells = std::vector<Vec5>;

// One hyperbolic step on the interior cells with transmissive boundaries.
// boundary_flux receives dt * (F_left_boundary - F_right_boundary).
void muscl_hancock_step(Cells& U, double dt, double dx, const SolverConfig& cfg, const EosPair& eos,
                        Vec5* boundary_flux = nullptr, StepLog* log = nullptr);
void force_godunov_step(Cells& U, double dt, double dx, const SolverConfig& cfg, const EosPair& eos,
                        Vec5* boundary_flux = nullptr, StepLog* log = nullptr);
void path_conservative_step(Cells& V, double dt, double dx, const SolverConfig& cfg,
                            const EosPair& eos, Vec5* boundary_flux = nullptr,
                            StepLog* log = nullptr);

// Pressure and friction relaxation over dt; the cell vectors use the scheme's variables.
void relaxation_step(Cells& cells, bool bn_variables, double dt, double theta1, double theta2,
                     const EosPair& eos);
Vec5 relax_conserved(const Vec5& U, double dt, double theta1, double theta2, const EosPair& eos);
Vec5 relax_bn(const Vec5& V, double dt, double theta1, double theta2, const EosPair& eos);

// Equal-pressure volume fraction for fixed partial masses.
double equilibrium_alpha(double m1, double m2, const EosPair& eos);

struct LedgerEntry {
    double time = 0.0;
    Vec5 totals{};
    Vec5 boundary_flux_integrals{};
    Vec5 source_integrals{};
    Vec5 magnitudes{};  // sum of |U| dx, the scale for closure errors
};

struct SimulationResult {
    Grid grid;
    SolverConfig config;
    double time = 0.0;
    long steps = 0;
    std::vector<Primitive> cells;
    std::vector<LedgerEntry> ledger;
    std::vector<std::string> log;
    double max_ledger_error = 0.0;  // worst closure error over the run
};

struct RiemannData {
    Primitive left;
    Primitive right;
    double x0 = 0.0;
};

SimulationResult run_simulation(const RiemannData& data, const Grid& grid, const SolverConfig& cfg,
                                const EosPair& eos);

// Relative closure error of a ledger entry against the first one.
Vec5 ledger_closure(const LedgerEntry& start, const LedgerEntry& now);

enum class Variable { alpha1, rho1, rho2, u1, u2, rho, u, w, p };
const char* to_string(Variable v);
Variable parse_variable(const std::string& text);
const std::vector<Variable>& all_variables();
double value_of(const Primitive& W, Variable v, const EosPair& eos);

// Cell averages of the exact solution from `points` equally spaced sub-cell samples.
std::vector<double> exact_cell_averages(const ExactSolution& sol, const Grid& grid, double x0,
                                        double t, Variable v, int points = 5);

// L1 norm of (numeric - exact) over [a, b] (whole domain when a >= b).
double l1_error(const SimulationResult& r, const ExactSolution& sol, double x0, Variable v,
                double a = 0.0, double b = 0.0);
double l1_difference(const SimulationResult& a, const SimulationResult& b, Variable v,
                     const EosPair& eos);
double linf_difference(const SimulationResult& a, const SimulationResult& b, Variable v,
                       const EosPair& eos);

}  // namespace tpr
