#pragma once

#include <string>
#include <vector>

#include "tpr/exact.hpp"

namespace tpr {

enum class Scheme { muscl_rusanov, force_godunov, muscl_pathcons_bn };

struct TableColumn {
    std::string name;
    Primitive state;
};

struct Preset {
    std::string name;
    std::string description;
    EosPair eos;
    std::string eos_note;
    Primitive left;
    Primitive right;
    double x_min = -1.0;
    double x_max = 1.0;
    double x0 = 0.0;
    double t_end = 0.25;
    double cfl = 0.25;
    int paper_cells = 10000;
    Scheme paper_scheme = Scheme::muscl_rusanov;
    // Inverse construction. For fitted presets these seed fit_to_initial_data.
    Primitive contact_left;
    double alpha1_right = 0.5;
    std::vector<WaveSpec> left_waves;
    std::vector<WaveSpec> right_waves;
    bool fitted = false;
    std::vector<TableColumn> table;  // printed states, empty when only plots exist
};

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
const Preset& preset(const std::string& name);

// Exact solution of a preset or of any problem carrying a wave construction.
ExactSolution exact_solution(const Preset& p);

// Riemann data consistent with the exact solution: its outermost states.
std::pair<Primitive, Primitive> consistent_initial_data(const Preset& p);

// Construction states in table order: reversed left chain followed by the right chain.
std::vector<Primitive> table_order_states(const ExactSolution& sol);

// One printed table entry against the construction.
struct TableEntryCheck {
    std::string column;
    std::string variable;
    double computed = 0.0;
    double printed = 0.0;
    double error = 0.0;  // relative; absolute against the table scale when printed == 0
};

constexpr double table_tol = 1e-4;

std::vector<TableEntryCheck> compare_with_table(const Preset& p, const ExactSolution& sol);

EosPair ideal_pair();
EosPair liquid_gas_pair(double B2);

}  // namespace tpr
