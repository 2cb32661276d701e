#pragma once

#include <vector>

#include "tpr/state.hpp"

namespace tpr {

enum class SourceBasis { shtc, bn };

struct SourceVector {
    Vec5 values{};
    SourceBasis basis = SourceBasis::shtc;
};

Mat5 bn_to_shtc_matrix(const Primitive& W, const EosPair& eos);
Mat5 shtc_to_bn_matrix(const Primitive& W, const EosPair& eos);

SourceVector bn_to_shtc_sources(const SourceVector& zeta, const Primitive& W, const EosPair& eos);
SourceVector shtc_to_bn_sources(const SourceVector& xi, const Primitive& W, const EosPair& eos);

// SHTC relaxation sources with pressure and friction relaxation times (infinity disables).
SourceVector relaxation_sources(const Primitive& W, const EosPair& eos, double theta1, double theta2);

struct InterfaceClosure {
    double u_I = 0.0;
    double p_I = 0.0;
};

InterfaceClosure interface_closure(const Primitive& W, const EosPair& eos);

struct KapilaCoefficients {
    double K1 = 0.0;
    double K2 = 0.0;
    double compaction = 0.0;  // multiplies du/dx in the volume fraction equation
};

KapilaCoefficients kapila_coefficients(const Primitive& W, const EosPair& eos);

struct KapilaDiagnostics {
    double pressure_max = 0.0;  // |p1 - p2| / max(|p1|, |p2|)
    double pressure_l1 = 0.0;   // cell average of the same
    double slip_max = 0.0;      // |w| / max(1, |u|)
    double slip_l1 = 0.0;
    bool velocity_equilibrium = false;
    bool pressure_equilibrium = false;
    bool kapila() const { return velocity_equilibrium && pressure_equilibrium; }
};

constexpr double kapila_slip_tol = 1e-6;
constexpr double kapila_pressure_tol = 1e-2;

KapilaDiagnostics kapila_limit_diagnostics(const std::vector<Primitive>& cells, const EosPair& eos);

}  // namespace tpr
