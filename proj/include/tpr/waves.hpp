#pragma once

#include <array>
#include <string>
#include <vector>

#include "tpr/state.hpp"

namespace tpr {

// Position of a state relative to the wave it borders.
enum class Side { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

// Solves for the state on the other side of a fan of `family` whose eigenvalue equals target.
Primitive rarefaction_connect(const Primitive& known, Family family, double target,
                              const EosPair& eos, Side known_side);

// State inside the fan of `family` that starts at `edge` and ends at speed other_edge.
Primitive rarefaction_sample(const Primitive& edge, Family family, double xi, double other_edge,
                             const EosPair& eos);

struct ShockData {
    double S = 0.0;
    double Q = 0.0;
    double Q1 = 0.0;
    double Q2 = 0.0;
    double entropy_production = 0.0;
};

struct ShockResult {
    Primitive state;
    ShockData data;
};

// Which monotone branch of rho -> (rho a(rho) - |Q|) a phase density lies on.
enum class Branch { subsonic_low, supersonic_high, automatic };

ShockResult shock_connect(const Primitive& known, Family family, double S, const EosPair& eos,
                          Side known_side);

// Lower-level solve with explicit branch choices for each phase.
ShockResult shock_connect_branches(const Primitive& known, int shock_phase, double S,
                                   const EosPair& eos, Branch shock_branch, Branch other_branch);

// Finds S such that the shock of `family` from known reaches the given density of its phase.
ShockResult shock_connect_to_density(const Primitive& known, Family family, double target_rho,
                                     const EosPair& eos, Side known_side);

struct MassFluxSystem {
    double Q1_sq;
    double Q2_sq;
    double det;
};

MassFluxSystem shock_mass_flux_system(const Primitive& minus, const Primitive& plus, double alpha1,
                                      const EosPair& eos);

Primitive contact_connect(const Primitive& left, double alpha1_right, const EosPair& eos);

// Scaled residuals of the five conservative jump relations.
std::array<double, 5> jump_residuals(const Primitive& minus, const Primitive& plus, double S,
                                     const EosPair& eos);
// Scaled residuals of u, rho c1 c2 w, p_bar and (c2-c1) w^2/2 + psi1 - psi2 continuity.
std::array<double, 4> contact_residuals(const Primitive& minus, const Primitive& plus,
                                        const EosPair& eos);
double max_abs(const std::array<double, 5>& v);
double max_abs(const std::array<double, 4>& v);

double entropy_production(const Primitive& minus, const Primitive& plus, double S,
                          const EosPair& eos);

enum class LaxClass { compressive, overcompressive, undercompressive, fails };
const char* to_string(LaxClass c);

LaxClass lax_check(const Primitive& minus, const Primitive& plus, double S, Family family,
                   const EosPair& eos);

struct Characteristic {
    Family family;
    Side side;
    bool operator==(const Characteristic&) const = default;
};

struct CharacteristicCensus {
    std::vector<Characteristic> incoming;
    std::vector<Characteristic> outgoing;
    std::vector<Characteristic> coinciding;
    int unknowns = 11;
    int relations = 5;
    bool count_ok = false;
    std::vector<Family> silent_families;  // outgoing on both sides
    bool evolutionary = false;

    int i() const { return static_cast<int>(incoming.size()); }
    int o() const { return static_cast<int>(outgoing.size()); }
    int c() const { return static_cast<int>(coinciding.size()); }
};

CharacteristicCensus classify_discontinuity(const Primitive& minus, const Primitive& plus,
                                            double S, const EosPair& eos);

std::string describe(const CharacteristicCensus& census);

// Position of an interior shock relative to a host fan of the other phase.
enum class InteriorCase { i, ii, iii, iv, none };
const char* to_string(InteriorCase c);

InteriorCase classify_interior_shock(const Primitive& minus, const Primitive& plus, double S,
                                     Family host, const EosPair& eos);

constexpr double newton_tol = 1e-12;
constexpr int newton_max_iter = 100;
constexpr double zero_strength_tol = 1e-10;

}  // namespace tpr
