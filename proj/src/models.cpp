#include "tpr/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpr/errors.hpp"

namespace tpr {

Mat5 bn_to_shtc_matrix(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    const double a1 = W.alpha1, a2 = W.alpha2();
    const double m1 = a1 * W.rho1, m2 = a2 * W.rho2;
    Mat5 B = Mat5::Zero();
    B(0, 0) = m.rho;
    B(0, 1) = a1;
    B(0, 2) = a1;
    B(1, 1) = 1.0;
    B(2, 1) = 1.0;
    B(2, 2) = 1.0;
    B(3, 3) = 1.0;
    B(3, 4) = 1.0;
    B(4, 1) = -W.u1 / m1;
    B(4, 2) = W.u2 / m2;
    B(4, 3) = 1.0 / m1;
    B(4, 4) = -1.0 / m2;
    return B;
}

Mat5 shtc_to_bn_matrix(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    const double a1 = W.alpha1;
    const double c1 = m.c1, c2 = m.c2;
    const double mixed = c2 * W.u1 + c1 * W.u2;
    Mat5 C = Mat5::Zero();
    C(0, 0) = 1.0 / m.rho;
    C(0, 2) = -a1 / m.rho;
    C(1, 1) = 1.0;
    C(2, 1) = -1.0;
    C(2, 2) = 1.0;
    C(3, 1) = mixed;
    C(3, 2) = -c1 * W.u2;
    C(3, 3) = c1;
    C(3, 4) = c1 * c2 * m.rho;
    C(4, 1) = -mixed;
    C(4, 2) = c1 * W.u2;
    C(4, 3) = c2;
    C(4, 4) = -c1 * c2 * m.rho;
    return C;
}

namespace {

SourceVector apply(const Mat5& M, const SourceVector& s, SourceBasis out_basis) {
    Col5 v;
    for (int k = 0; k < 5; ++k) v(k) = s.values[k];
    const Col5 r = M * v;
    SourceVector out;
    out.basis = out_basis;
    for (int k = 0; k < 5; ++k) out.values[k] = r(k);
    return out;
}

}  // namespace

SourceVector bn_to_shtc_sources(const SourceVector& zeta, const Primitive& W, const EosPair& eos) {
    if (zeta.basis != SourceBasis::bn) fail(ErrorKind::config, "expected a source vector in the BN basis");
    return apply(bn_to_shtc_matrix(W, eos), zeta, SourceBasis::shtc);
}

SourceVector shtc_to_bn_sources(const SourceVector& xi, const Primitive& W, const EosPair& eos) {
    if (xi.basis != SourceBasis::shtc) fail(ErrorKind::config, "expected a source vector in the SHTC basis");
    return apply(shtc_to_bn_matrix(W, eos), xi, SourceBasis::bn);
}

SourceVector relaxation_sources(const Primitive& W, const EosPair& eos, double theta1, double theta2) {
    const Mixture m = mixture(W, eos);
    SourceVector s;
    s.basis = SourceBasis::shtc;
    if (std::isfinite(theta1))
        s.values[0] = m.rho * (eos.phase1.pressure(W.rho1) - eos.phase2.pressure(W.rho2)) / theta1;
    if (std::isfinite(theta2)) s.values[4] = -m.c1 * m.c2 * m.w / theta2;
    return s;
}

InterfaceClosure interface_closure(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    const double m1 = W.alpha1 * W.rho1, m2 = W.alpha2() * W.rho2;
    return {m.u, (m2 * eos.phase1.pressure(W.rho1) + m1 * eos.phase2.pressure(W.rho2)) / m.rho};
}

KapilaCoefficients kapila_coefficients(const Primitive& W, const EosPair& eos) {
    KapilaCoefficients k;
    k.K1 = W.rho1 * eos.phase1.sound_speed_sq(W.rho1);
    k.K2 = W.rho2 * eos.phase2.sound_speed_sq(W.rho2);
    const double a1 = W.alpha1, a2 = W.alpha2();
    const double den = a1 * k.K2 + a2 * k.K1;
    if (!(den > 0.0)) fail(ErrorKind::eos_invalid, "non-positive bulk moduli in Kapila coefficient");
    k.compaction = a1 * a2 * (k.K1 - k.K2) / den;
    return k;
}

KapilaDiagnostics kapila_limit_diagnostics(const std::vector<Primitive>& cells, const EosPair& eos) {
    KapilaDiagnostics d;
    if (cells.empty()) return d;
    for (const Primitive& W : cells) {
        const double p1 = eos.phase1.pressure(W.rho1), p2 = eos.phase2.pressure(W.rho2);
        const double dp = std::abs(p1 - p2) / std::max({std::abs(p1), std::abs(p2),
                                                        std::numeric_limits<double>::min()});
        const Mixture m = mixture(W, eos);
        const double slip = std::abs(m.w) / std::max(1.0, std::abs(m.u));
        d.pressure_max = std::max(d.pressure_max, dp);
        d.slip_max = std::max(d.slip_max, slip);
        d.pressure_l1 += dp;
        d.slip_l1 += slip;
    }
    d.pressure_l1 /= static_cast<double>(cells.size());
    d.slip_l1 /= static_cast<double>(cells.size());
    d.velocity_equilibrium = d.slip_max < kapila_slip_tol;
    d.pressure_equilibrium = d.pressure_l1 < kapila_pressure_tol;
    return d;
}

}  // namespace tpr
