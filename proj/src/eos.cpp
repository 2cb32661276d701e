#include "tpr/eos.hpp"

#include <cmath>
#include <sstream>

#include "tpr/errors.hpp"

namespace tpr {

namespace {

constexpr double log_branch_tol = 1e-12;

void require_positive(double rho, const char* where) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        std::ostringstream msg;
        msg << where << ": density must be positive, got " << rho;
        fail(ErrorKind::domain, msg.str());
    }
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::eos_invalid: return "eos-invalid";
        case ErrorKind::state_decode: return "state-decode";
        case ErrorKind::inadmissible_wave: return "inadmissible-wave";
        case ErrorKind::numerics: return "numerics";
        case ErrorKind::degenerate_shock: return "degenerate-shock";
        case ErrorKind::degenerate_jump: return "degenerate-jump";
        case ErrorKind::not_a_discontinuity: return "not-a-discontinuity";
        case ErrorKind::out_of_fan: return "out-of-fan";
        case ErrorKind::construction: return "construction";
        case ErrorKind::positivity: return "positivity";
        case ErrorKind::relaxation: return "relaxation";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

bool Eos::logarithmic() const { return std::abs(gamma - 1.0) < log_branch_tol; }

void Eos::validate() const {
    if (!(A > 0.0) || !(gamma >= 1.0) || !(rho_ref > 0.0) || !std::isfinite(B)) {
        std::ostringstream msg;
        msg << "invalid EOS parameters A=" << A << " gamma=" << gamma << " rho_ref=" << rho_ref
            << " B=" << B;
        fail(ErrorKind::eos_invalid, msg.str());
    }
}

double Eos::pressure(double rho) const {
    require_positive(rho, "pressure");
    return A * std::pow(rho / rho_ref, gamma) + B;
}

double Eos::sound_speed_sq(double rho) const {
    require_positive(rho, "sound_speed");
    const double a2 = A * gamma * std::pow(rho, gamma - 1.0) / std::pow(rho_ref, gamma);
    if (!(a2 > 0.0)) {
        std::ostringstream msg;
        msg << "dp/drho = " << a2 << " is not positive at rho=" << rho;
        fail(ErrorKind::eos_invalid, msg.str());
    }
    return a2;
}

double Eos::sound_speed(double rho) const { return std::sqrt(sound_speed_sq(rho)); }

double Eos::sound_speed_slope(double rho) const {
    return 0.5 * (gamma - 1.0) * sound_speed(rho) / rho;
}

double Eos::psi(double rho) const {
    require_positive(rho, "psi");
    if (logarithmic()) return A / rho_ref * std::log(rho);
    return A * gamma / ((gamma - 1.0) * std::pow(rho_ref, gamma)) * std::pow(rho, gamma - 1.0);
}

double Eos::fundamental_derivative(double rho) const {
    require_positive(rho, "fundamental_derivative");
    return 0.5 * (gamma + 1.0);
}

double Eos::riemann_integral(double rho_from, double rho_to) const {
    require_positive(rho_from, "riemann_integral");
    require_positive(rho_to, "riemann_integral");
    if (logarithmic()) return sound_speed(rho_from) * std::log(rho_to / rho_from);
    return 2.0 * (sound_speed(rho_to) - sound_speed(rho_from)) / (gamma - 1.0);
}

double Eos::density_from_sound_speed(double a) const {
    if (logarithmic()) fail(ErrorKind::domain, "sound speed is constant for gamma = 1");
    if (!(a > 0.0)) fail(ErrorKind::domain, "sound speed must be positive");
    const double k = A * gamma / std::pow(rho_ref, gamma);
    return std::pow(a * a / k, 1.0 / (gamma - 1.0));
}

double Eos::sonic_density(double mass_flux) const {
    // rho a = sqrt(k) rho^((gamma+1)/2)
    const double k = A * gamma / std::pow(rho_ref, gamma);
    return std::pow(std::abs(mass_flux) / std::sqrt(k), 2.0 / (gamma + 1.0));
}

Regime parse_regime(const std::string& text) {
    if (text == "isentropic") return Regime::isentropic;
    if (text == "isothermal") return Regime::isothermal;
    fail(ErrorKind::config, "unknown EOS mode '" + text + "'");
}

const char* to_string(Regime mode) {
    return mode == Regime::isentropic ? "isentropic" : "isothermal";
}

}  // namespace tpr
