#include "tpr/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tpr/errors.hpp"

namespace tpr {

bool is_valid(const Primitive& W) {
    return W.alpha1 > 0.0 && W.alpha1 < 1.0 && W.rho1 > 0.0 && W.rho2 > 0.0 &&
           std::isfinite(W.u1) && std::isfinite(W.u2) && std::isfinite(W.rho1) &&
           std::isfinite(W.rho2);
}

void require_valid(const Primitive& W, const char* where) {
    if (!is_valid(W)) {
        std::ostringstream msg;
        msg << where << ": invalid state (alpha1=" << W.alpha1 << ", rho1=" << W.rho1
            << ", rho2=" << W.rho2 << ", u1=" << W.u1 << ", u2=" << W.u2 << ")";
        fail(ErrorKind::domain, msg.str());
    }
}

Mixture mixture(const Primitive& W, const EosPair& eos) {
    Mixture m{};
    const double a1r1 = W.alpha1 * W.rho1;
    const double a2r2 = W.alpha2() * W.rho2;
    m.rho = a1r1 + a2r2;
    m.c1 = a1r1 / m.rho;
    m.c2 = a2r2 / m.rho;
    m.u = m.c1 * W.u1 + m.c2 * W.u2;
    m.w = W.u1 - W.u2;
    m.p = W.alpha1 * eos.phase1.pressure(W.rho1) + W.alpha2() * eos.phase2.pressure(W.rho2);
    m.p_bar = m.rho * m.c1 * m.c2 * m.w * m.w + m.p;
    return m;
}

Vec5 to_conserved(const Primitive& W) {
    const double rho = W.alpha1 * W.rho1 + W.alpha2() * W.rho2;
    const double mom = W.alpha1 * W.rho1 * W.u1 + W.alpha2() * W.rho2 * W.u2;
    return {W.alpha1 * rho, W.alpha1 * W.rho1, rho, mom, W.u1 - W.u2};
}

Primitive to_primitive(const Vec5& U) {
    const double w1 = U[0], w2 = U[1], w3 = U[2], w4 = U[3], w5 = U[4];
    const bool ok = std::isfinite(w1) && std::isfinite(w2) && std::isfinite(w3) &&
                    std::isfinite(w4) && std::isfinite(w5) && w3 > 0.0 && w1 > 0.0 &&
                    w1 < w3 && w2 > 0.0 && w2 < w3;
    if (!ok) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cannot decode conserved state (" << w1 << ", " << w2 << ", " << w3 << ", "
            << w4 << ", " << w5 << ")";
        fail(ErrorKind::state_decode, msg.str());
    }
    Primitive W;
    W.alpha1 = w1 / w3;
    W.rho1 = w2 / W.alpha1;
    W.rho2 = (w3 - w2) / (1.0 - W.alpha1);
    const double c1 = w2 / w3;
    const double u = w4 / w3;
    W.u1 = u + (1.0 - c1) * w5;
    W.u2 = u - c1 * w5;
    if (!(W.rho2 > 0.0)) fail(ErrorKind::state_decode, "decoded phase-2 density not positive");
    return W;
}

Vec5 physical_flux(const Vec5& U, const EosPair& eos) {
    const double w1 = U[0], w2 = U[1], w3 = U[2], w4 = U[3], w5 = U[4];
    const double alpha1 = w1 / w3;
    const double rho1 = w2 / alpha1;
    const double rho2 = (w3 - w2) / (1.0 - alpha1);
    const double p1 = eos.phase1.pressure(rho1);
    const double p2 = eos.phase2.pressure(rho2);
    const double psi1 = eos.phase1.psi(rho1);
    const double psi2 = eos.phase2.psi(rho2);
    const double v1 = ((w3 - w2) * w5 + w4) / w3;
    const double v2 = (w4 - w2 * w5) / w3;
    Vec5 F;
    F[0] = w1 * w4 / w3;
    F[1] = w2 * v1;
    F[2] = w4;
    F[3] = w2 * v1 * v1 + (w3 - w2) * v2 * v2 + (w1 / w3) * p1 + ((w3 - w1) / w3) * p2;
    F[4] = 0.5 * w5 * (2.0 * v1 - w5) + psi1 - psi2;
    return F;
}

Vec5 physical_flux_primitive(const Primitive& W, const EosPair& eos) {
    const double a1 = W.alpha1, a2 = W.alpha2();
    const double rho = a1 * W.rho1 + a2 * W.rho2;
    const double mom = a1 * W.rho1 * W.u1 + a2 * W.rho2 * W.u2;
    const double u = mom / rho;
    const double p1 = eos.phase1.pressure(W.rho1);
    const double p2 = eos.phase2.pressure(W.rho2);
    Vec5 F;
    F[0] = a1 * rho * u;
    F[1] = a1 * W.rho1 * W.u1;
    F[2] = mom;
    F[3] = a1 * W.rho1 * W.u1 * W.u1 + a2 * W.rho2 * W.u2 * W.u2 + a1 * p1 + a2 * p2;
    F[4] = 0.5 * (W.u1 * W.u1 - W.u2 * W.u2) + eos.phase1.psi(W.rho1) - eos.phase2.psi(W.rho2);
    return F;
}

Mat5 jacobian_primitive(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    const double dp = eos.phase1.pressure(W.rho1) - eos.phase2.pressure(W.rho2);
    const double a1sq = eos.phase1.sound_speed_sq(W.rho1);
    const double a2sq = eos.phase2.sound_speed_sq(W.rho2);
    Mat5 A = Mat5::Zero();
    A(0, 0) = m.u;
    A(1, 0) = W.rho1 / W.alpha1 * (W.u1 - m.u);
    A(1, 1) = W.u1;
    A(1, 3) = W.rho1;
    A(2, 0) = W.rho2 / W.alpha2() * (m.u - W.u2);
    A(2, 2) = W.u2;
    A(2, 4) = W.rho2;
    A(3, 0) = dp / m.rho;
    A(3, 1) = a1sq / W.rho1;
    A(3, 3) = W.u1;
    A(4, 0) = dp / m.rho;
    A(4, 2) = a2sq / W.rho2;
    A(4, 4) = W.u2;
    return A;
}

int phase_of(Family f) {
    switch (f) {
        case Family::one_minus:
        case Family::one_plus: return 1;
        case Family::two_minus:
        case Family::two_plus: return 2;
        case Family::contact: return 0;
    }
    return 0;
}

int direction_of(Family f) {
    switch (f) {
        case Family::one_minus:
        case Family::two_minus: return -1;
        case Family::one_plus:
        case Family::two_plus: return 1;
        case Family::contact: return 0;
    }
    return 0;
}

Family acoustic_family(int phase, int direction) {
    if (phase == 1) return direction < 0 ? Family::one_minus : Family::one_plus;
    return direction < 0 ? Family::two_minus : Family::two_plus;
}

const char* to_string(Family f) {
    switch (f) {
        case Family::one_minus: return "1-";
        case Family::two_minus: return "2-";
        case Family::contact: return "C";
        case Family::one_plus: return "1+";
        case Family::two_plus: return "2+";
    }
    return "?";
}

Family parse_family(const std::string& text) {
    for (Family f : all_families)
        if (text == to_string(f)) return f;
    fail(ErrorKind::config, "unknown wave family '" + text + "'");
}

double eigenvalue(const Primitive& W, Family f, const EosPair& eos) {
    if (f == Family::contact) return mixture(W, eos).u;
    const int k = phase_of(f);
    return W.u(k) + direction_of(f) * eos[k].sound_speed(W.rho(k));
}

Col5 contact_vector_raw(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    const double a1 = W.alpha1, a2 = W.alpha2();
    const double dp = eos.phase1.pressure(W.rho1) - eos.phase2.pressure(W.rho2);
    const double s1 = eos.phase1.sound_speed_sq(W.rho1);
    const double s2 = eos.phase2.sound_speed_sq(W.rho2);
    const double d1u = m.u - W.u1;
    const double d2u = m.u - W.u2;
    const double delta1 = dp / m.rho - d1u * d1u / a1;
    const double delta2 = dp / m.rho + d2u * d2u / a2;
    const double eps1 = (d1u * d1u - s1) / W.rho1;
    const double eps2 = (d2u * d2u - s2) / W.rho2;
    const double g1 = (a1 * dp - m.rho * s1) / (a1 * W.rho1 * m.rho);
    const double g2 = -(a2 * dp + m.rho * s2) / (a2 * W.rho2 * m.rho);
    return Col5(eps1 * eps2, delta1 * eps2, delta2 * eps1, d1u * eps2 * g1, -d2u * eps1 * g2);
}

namespace {

// Phase-wise dimensionless distance of the contact speed from the acoustic pair.
double relative_epsilon(const Primitive& W, int k, double u, const EosPair& eos) {
    const double s = eos[k].sound_speed_sq(W.rho(k));
    const double d = u - W.u(k);
    return (d * d - s) / (d * d + s);
}

}  // namespace

Eigenstructure eigenstructure(const Primitive& W, const EosPair& eos) {
    Eigenstructure E;
    const double a1 = eos.phase1.sound_speed(W.rho1);
    const double a2 = eos.phase2.sound_speed(W.rho2);
    const double u = mixture(W, eos).u;
    E.lambda[index(Family::one_minus)] = W.u1 - a1;
    E.lambda[index(Family::two_minus)] = W.u2 - a2;
    E.lambda[index(Family::contact)] = u;
    E.lambda[index(Family::one_plus)] = W.u1 + a1;
    E.lambda[index(Family::two_plus)] = W.u2 + a2;
    E.sorted = all_families;
    std::stable_sort(E.sorted.begin(), E.sorted.end(), [&](Family x, Family y) {
        return E.lambda[index(x)] < E.lambda[index(y)];
    });
    E.right[index(Family::one_minus)] = Col5(0, 1, 0, -a1 / W.rho1, 0);
    E.right[index(Family::one_plus)] = Col5(0, 1, 0, a1 / W.rho1, 0);
    E.right[index(Family::two_minus)] = Col5(0, 0, 1, 0, -a2 / W.rho2);
    E.right[index(Family::two_plus)] = Col5(0, 0, 1, 0, a2 / W.rho2);
    Col5 rc = contact_vector_raw(W, eos);
    const double e1 = relative_epsilon(W, 1, u, eos);
    const double e2 = relative_epsilon(W, 2, u, eos);
    E.contact_degenerate = std::abs(e1) < coincidence_tol && std::abs(e2) < coincidence_tol;
    const double n = rc.norm();
    E.right[index(Family::contact)] = (n > 0.0 && !E.contact_degenerate) ? Col5(rc / n) : Col5(rc);
    for (Family f : all_families)
        E.kind[index(f)] =
            f == Family::contact ? FieldKind::linearly_degenerate : FieldKind::genuinely_nonlinear;
    return E;
}

std::array<Col5, 5> eigenvalue_gradients(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    const double da1 = eos.phase1.sound_speed_slope(W.rho1);
    const double da2 = eos.phase2.sound_speed_slope(W.rho2);
    std::array<Col5, 5> g;
    g[index(Family::one_minus)] = Col5(0, -da1, 0, 1, 0);
    g[index(Family::one_plus)] = Col5(0, da1, 0, 1, 0);
    g[index(Family::two_minus)] = Col5(0, 0, -da2, 0, 1);
    g[index(Family::two_plus)] = Col5(0, 0, da2, 0, 1);
    g[index(Family::contact)] =
        Col5(W.rho1 * W.rho2 / (m.rho * m.rho) * m.w, W.alpha1 * m.c2 * m.w / m.rho,
             -W.alpha2() * m.c1 * m.w / m.rho, m.c1, m.c2);
    return g;
}

std::array<double, 5> field_characterization(const Primitive& W, const EosPair& eos) {
    const Eigenstructure E = eigenstructure(W, eos);
    const auto g = eigenvalue_gradients(W, eos);
    std::array<double, 5> out{};
    for (Family f : all_families) out[index(f)] = g[index(f)].dot(E.right[index(f)]);
    return out;
}

bool speeds_coincide(double a, double b) {
    return std::abs(a - b) < coincidence_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

ResonanceReport check_resonance(const Primitive& W, const EosPair& eos) {
    ResonanceReport report;
    const Eigenstructure E = eigenstructure(W, eos);
    const double lc = E.lambda[index(Family::contact)];
    const double u = lc;
    Col5 rc = contact_vector_raw(W, eos);
    if (rc.norm() > 0.0) rc.normalize();
    for (Family f : acoustic_families) {
        if (!speeds_coincide(E.lambda[index(f)], lc)) continue;
        const int k = phase_of(f);
        const double d = u - W.u(k);
        const double eps = (d * d - eos[k].sound_speed_sq(W.rho(k))) / W.rho(k);
        Eigen::Matrix<double, 5, 3> stack;
        stack.col(0) = rc;
        stack.col(1) = E.right[index(acoustic_family(k, -1))].normalized();
        stack.col(2) = E.right[index(acoustic_family(k, +1))].normalized();
        Eigen::JacobiSVD<Eigen::Matrix<double, 5, 3>> svd(stack);
        const auto sv = svd.singularValues();
        const double ratio = sv(2) / sv(0);
        report.coincidences.push_back({f, eps, ratio < collapse_tol, ratio});
    }
    report.contact_vector_null = E.contact_degenerate;
    return report;
}

}  // namespace tpr

namespace tpr {

double velocity_scale(const Primitive& W, const EosPair& eos) {
    return std::max({std::abs(W.u1), std::abs(W.u2), eos.phase1.sound_speed(W.rho1),
                     eos.phase2.sound_speed(W.rho2)});
}

}  // namespace tpr
