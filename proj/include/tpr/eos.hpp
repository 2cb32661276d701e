#pragma once

#include <string>

namespace tpr {

enum class Regime { isentropic, isothermal };

// Power-law barotropic closure p(rho) = A (rho/rho_ref)^gamma + B.
// gamma == 1 selects the logarithmic potential branch.
struct Eos {
    double A = 1.0;
    double gamma = 1.4;
    double rho_ref = 1.0;
    double B = 0.0;
    Regime mode = Regime::isentropic;

    double pressure(double rho) const;
    double sound_speed_sq(double rho) const;
    double sound_speed(double rho) const;
    // da/drho
    double sound_speed_slope(double rho) const;
    double psi(double rho) const;
    double fundamental_derivative(double rho) const;
    // integral of a(rho)/rho from rho_from to rho_to
    double riemann_integral(double rho_from, double rho_to) const;
    // inverse of sound_speed; requires gamma != 1
    double density_from_sound_speed(double a) const;
    // density at which rho * a(rho) == |mass_flux|
    double sonic_density(double mass_flux) const;

    bool logarithmic() const;
    void validate() const;
};

struct EosPair {
    Eos phase1;
    Eos phase2;

    const Eos& operator[](int phase) const { return phase == 1 ? phase1 : phase2; }
};

Regime parse_regime(const std::string& text);
const char* to_string(Regime mode);

}  // namespace tpr
