#include "tpr/presets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "tpr/errors.hpp"

namespace tpr {

EosPair ideal_pair() {
    EosPair e;
    e.phase1 = Eos{1.0, 1.4, 1.0, 0.0, Regime::isentropic};
    e.phase2 = Eos{1.0, 2.0, 1.0, 0.0, Regime::isentropic};
    return e;
}

EosPair liquid_gas_pair(double B2) {
    EosPair e;
    e.phase1 = Eos{1e5, 1.4, 1.0, 0.0, Regime::isentropic};
    e.phase2 = Eos{8.5e8, 2.8, 1e3, B2, Regime::isentropic};
    return e;
}

namespace {

using F = Family;
using WS = WaveSpec;

Primitive P(double a, double r1, double r2, double u1, double u2) { return {a, r1, r2, u1, u2}; }

std::map<std::string, Preset> make_presets() {
    std::map<std::string, Preset> m;
    {
        Preset p;
        p.name = "RP1";
        p.description = "shock in rarefaction: 2- fan inside the 1- fan, 2+ shock inside the 1+ fan";
        p.eos = ideal_pair();
        p.eos_note = "p_i = rho_i^gamma_i, gamma1 = 1.4, gamma2 = 2";
        p.t_end = 0.25;
        p.paper_cells = 40000;
        p.contact_left = P(0.7, 0.47883, 1.1064, -0.18865, -0.14351);
        p.alpha1_right = 0.3;
        p.left_waves = {WS::rarefaction(F::two_minus, -2.0), WS::rarefaction(F::one_minus, -2.5)};
        p.right_waves = {WS::shock_in_rarefaction(F::one_plus, 1.5, F::two_plus, 1.0)};
        p.table = {{"U_L", P(0.7, 1.2449, 1.2969, -1.2638, -0.38947)},
                   {"U*_L", P(0.7, 0.47883, 1.2969, -0.18865, -0.38947)},
                   {"U**_L", P(0.7, 0.47883, 1.1064, -0.18865, -0.14351)},
                   {"U**_R", P(0.3, 0.30577, 0.894, -0.24825, -0.15416)},
                   {"Ubar", P(0.3, 0.40186, 0.894, 0.01399, -0.15416)},
                   {"U*_R", P(0.3, 0.41275, 0.73436, 0.040001, -0.40507)},
                   {"U_R", P(0.3, 0.60312, 0.73436, 0.43059, -0.40507)}};
        m[p.name] = p;
    }
    {
        Preset p;
        p.name = "RP2";
        p.description = "no contact: overlapping 1-/2- fans, isolated 1+ and 2+ shocks";
        p.eos = ideal_pair();
        p.eos_note = "p_i = rho_i^gamma_i, gamma1 = 1.4, gamma2 = 2";
        p.t_end = 0.25;
        p.paper_cells = 40000;
        p.contact_left = P(0.5, 2.0, 1.0, 0.0, 0.0);
        p.alpha1_right = 0.5;
        p.left_waves = {WS::rarefaction(F::one_minus, -2.0), WS::rarefaction(F::two_minus, -2.5)};
        p.right_waves = {WS::shock(F::one_plus, 0.5), WS::shock(F::two_plus, 1.0)};
        p.table = {{"U_L", P(0.5, 2.9194, 1.5773, -0.53404, -0.72386)},
                   {"U*_L", P(0.5, 2.9194, 1.0, -0.53404, 0.0)},
                   {"U**_L", P(0.5, 2.0, 1.0, 0.0, 0.0)},
                   {"U**_R", P(0.5, 2.0, 1.0, 0.0, 0.0)},
                   {"U*_R", P(0.5, 0.43057, 1.2486, -1.8225, 0.09954)},
                   {"U_R", P(0.5, 0.42256, 0.58056, -1.876, -0.93653)}};
        m[p.name] = p;
    }
    {
        Preset p;
        p.name = "RP3";
        p.description = "symmetric double rarefaction";
        p.eos = liquid_gas_pair(8.4999e8);
        p.eos_note = "gas: A=1e5, gamma=1.4, rho_ref=1, B=0; liquid: A=8.5e8, gamma=2.8, rho_ref=1e3, B=8.4999e8";
        p.x_min = 0.0;
        p.x_max = 0.01;
        p.x0 = 0.005;
        p.t_end = 1.1e-6;
        p.paper_cells = 5000;
        p.paper_scheme = Scheme::force_godunov;
        p.contact_left = P(0.9, 160.0, 200.0, 0.0, 0.0);
        p.alpha1_right = 0.9;
        p.left_waves = {WS::rarefaction(F::two_minus, -3636.0), WS::rarefaction(F::one_minus, -3363.0)};
        p.right_waves = {WS::rarefaction(F::two_plus, 3636.0), WS::rarefaction(F::one_plus, 3363.0)};
        p.table = {{"U_L", P(0.9, 789.79932, 1270.0579, -1942.0873, -1722.9353)},
                   {"U*_L", P(0.9, 160.0, 1270.0579, 0.0, -1722.9354)},
                   {"U**_L", P(0.9, 160.0, 200.0, 0.0, 0.0)},
                   {"U**_R", P(0.9, 160.0, 200.0, 0.0, 0.0)},
                   {"U*_R", P(0.9, 160.0, 1270.0579, 0.0, 1722.9354)},
                   {"U_R", P(0.9, 789.79932, 1270.0579, 1942.0873, 1722.9354)}};
        m[p.name] = p;
    }
    {
        Preset p;
        p.name = "RP4";
        p.description = "symmetric double shock";
        p.eos = liquid_gas_pair(8.4999e8);
        p.eos_note = "gas: A=1e5, gamma=1.4, rho_ref=1, B=0; liquid: A=8.5e8, gamma=2.8, rho_ref=1e3, B=8.4999e8";
        p.x_min = 0.0;
        p.x_max = 0.01;
        p.x0 = 0.005;
        p.t_end = 2.2e-6;
        p.paper_cells = 10000;
        p.paper_scheme = Scheme::force_godunov;
        p.contact_left = P(0.9, 1079.0, 2706.0, 0.0, 0.0);
        p.alpha1_right = 0.9;
        p.left_waves = {WS::shock(F::one_minus, -409.0), WS::shock(F::two_minus, -1682.0)};
        p.right_waves = {WS::shock(F::one_plus, 409.0), WS::shock(F::two_plus, 1682.0)};
        p.table = {{"U_L", P(0.9, 131.01705, 1040.1358, 3075.6226, 3033.3793)},
                   {"U*_L", P(0.9, 142.98406, 2983.4101, 2677.4348, -38.030561)},
                   {"U**_L", P(0.9, 1079.0, 2706.0, 0.0, 0.0)},
                   {"U**_R", P(0.9, 1079.0, 2706.0, 0.0, 0.0)},
                   {"U*_R", P(0.9, 142.98406, 2983.4101, -2677.4348, 38.030561)},
                   {"U_R", P(0.9, 131.01705, 1040.1358, -3075.6226, -3033.3793)}};
        m[p.name] = p;
    }
    const std::string default_eos_note =
        "EOS not given for this problem; using the RP1 ideal pair (gamma1 = 1.4, gamma2 = 2, A = 1, B = 0)";
    {
        Preset p;
        p.name = "RP5";
        p.description = "two rarefactions in each phase";
        p.eos = ideal_pair();
        p.eos_note = default_eos_note;
        p.left = P(0.7, 2.0, 1.0, -2.0, -1.0);
        p.right = P(0.3, 2.0, 1.0, 2.0, 1.0);
        p.t_end = 0.1;
        p.paper_cells = 10000;
        p.fitted = true;
        p.contact_left = P(0.7, 0.33912326, 0.40348394, 0.03032333, 0.03179931);
        p.alpha1_right = 0.3;
        p.left_waves = {WS::rarefaction(F::one_minus, -3.35915822),
                        WS::rarefaction(F::two_minus, -2.41421356)};
        p.right_waves = {WS::rarefaction(F::one_plus, 3.35915822),
                         WS::rarefaction(F::two_plus, 2.41421356)};
        m[p.name] = p;
    }
    {
        Preset p;
        p.name = "RP6";
        p.description = "a shock and a rarefaction in each phase";
        p.eos = ideal_pair();
        p.eos_note = default_eos_note;
        p.left = P(0.7, 2.0, 1.0, 0.0, 0.0);
        p.right = P(0.3, 1.0, 2.0, 0.0, 0.0);
        p.t_end = 0.25;
        p.paper_cells = 10000;
        p.fitted = true;
        p.contact_left = P(0.7, 1.83897846, 1.60531802, 0.10884036, -0.7544833);
        p.alpha1_right = 0.3;
        p.left_waves = {WS::rarefaction(F::one_minus, -1.37449411), WS::shock(F::two_minus, -2.00090794)};
        p.right_waves = {WS::shock_in_rarefaction(F::two_plus, 2.0, F::one_plus, 1.51572926)};
        m[p.name] = p;
    }
    for (auto& [name, p] : m) {
        if (!p.table.empty()) {
            p.left = p.table.front().state;
            p.right = p.table.back().state;
        }
    }
    return m;
}

const std::map<std::string, Preset>& registry() {
    static const std::map<std::string, Preset> m = make_presets();
    return m;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"RP1", "RP2", "RP3", "RP4", "RP5", "RP6"};
    return names;
}

bool is_preset(const std::string& name) { return registry().count(name) > 0; }

const Preset& preset(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) fail(ErrorKind::config, "unknown preset '" + name + "'");
    return it->second;
}

ExactSolution exact_solution(const Preset& p) {
    if (p.fitted)
        return fit_to_initial_data(p.left, p.right, p.contact_left, p.left_waves, p.right_waves, p.eos)
            .solution;
    return build_solution(p.contact_left, p.alpha1_right, p.left_waves, p.right_waves, p.eos);
}

std::pair<Primitive, Primitive> consistent_initial_data(const Preset& p) {
    if (p.fitted) return {p.left, p.right};
    return initial_data(exact_solution(p));
}

std::vector<Primitive> table_order_states(const ExactSolution& sol) {
    std::vector<Primitive> out(sol.left_chain.rbegin(), sol.left_chain.rend());
    out.insert(out.end(), sol.right_chain.begin(), sol.right_chain.end());
    return out;
}

std::vector<TableEntryCheck> compare_with_table(const Preset& p, const ExactSolution& sol) {
    const auto states = table_order_states(sol);
    if (states.size() != p.table.size())
        fail(ErrorKind::construction, p.name + ": construction has " + std::to_string(states.size()) +
                                          " states, table has " + std::to_string(p.table.size()));
    const char* names[5] = {"alpha1", "rho1", "rho2", "u1", "u2"};
    std::array<double, 5> scale{};
    for (const auto& c : p.table)
        for (int k = 0; k < 5; ++k) scale[k] = std::max(scale[k], std::abs(c.state.as_column()[k]));
    std::vector<TableEntryCheck> out;
    for (size_t i = 0; i < states.size(); ++i) {
        const Col5 a = states[i].as_column(), b = p.table[i].state.as_column();
        for (int k = 0; k < 5; ++k) {
            const double denom = b[k] != 0.0 ? std::abs(b[k]) : scale[k];
            out.push_back({p.table[i].name, names[k], a[k], b[k], std::abs(a[k] - b[k]) / denom});
        }
    }
    return out;
}

}  // namespace tpr
