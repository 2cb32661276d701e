#include "tpr/waves.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "tpr/errors.hpp"

namespace tpr {

namespace {

using boost::math::tools::eps_tolerance;
using boost::math::tools::toms748_solve;

// Root of f on [lo, hi] given f(lo), f(hi) of opposite sign.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                      double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    std::uintmax_t iters = 300;
    auto r = toms748_solve(f, lo, hi, flo, fhi, eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

// Replaces phase k's density and velocity with the fan state whose eigenvalue equals target.
Primitive fan_state(const Primitive& edge, Family family, double target, const EosPair& eos) {
    const int k = phase_of(family);
    const int d = direction_of(family);
    const Eos& e = eos[k];
    const double rho0 = edge.rho(k);
    const double u0 = edge.u(k);
    Primitive out = edge;
    if (e.logarithmic()) {
        const double a = e.sound_speed(rho0);
        const double u = target - d * a;
        out.rho(k) = rho0 * std::exp(d * (u - u0) / a);
        out.u(k) = u;
        return out;
    }
    // u - d * 2a/(gamma-1) is constant and u + d a = target
    const double g = e.gamma;
    const double J = u0 - d * 2.0 * e.sound_speed(rho0) / (g - 1.0);
    const double a = d * (target - J) * (g - 1.0) / (g + 1.0);
    if (!(a > 0.0)) {
        std::ostringstream msg;
        msg << "fan of family " << to_string(family) << " reaches vacuum before speed " << target;
        fail(ErrorKind::inadmissible_wave, msg.str());
    }
    out.rho(k) = e.density_from_sound_speed(a);
    out.u(k) = J + d * 2.0 * a / (g - 1.0);
    return out;
}

struct PhaseJump {
    const Eos* e;
    double r;  // known density
    double Q;  // mass flux
    double pr;
    double psir;

    double f(double s) const { return Q * Q * (1.0 / s - 1.0 / r) + e->pressure(s) - pr; }
    double g(double s) const {
        return 0.5 * Q * Q * (1.0 / (s * s) - 1.0 / (r * r)) + e->psi(s) - psir;
    }
    double df(double s) const { return -Q * Q / (s * s) + e->sound_speed_sq(s); }
    double dg(double s) const { return -Q * Q / (s * s * s) + e->sound_speed_sq(s) / s; }
    double sonic() const { return e->sonic_density(Q); }
};

// Solves g(s) = target on one monotone branch; empty when the target is out of range.
std::optional<double> solve_on_branch(const PhaseJump& ph, double target, bool high) {
    const double sonic = ph.sonic();
    auto F = [&](double s) { return ph.g(s) - target; };
    if (high) {
        double lo = sonic > 0.0 ? sonic : 1e-300;
        if (sonic <= 0.0) {
            lo = ph.r;
            int n = 0;
            while (F(lo) > 0.0 && n++ < 2000) lo *= 0.5;
            if (F(lo) > 0.0) return std::nullopt;
        }
        const double flo = F(lo);
        if (flo > 0.0) return std::nullopt;
        double hi = std::max(2.0 * lo, ph.r);
        int n = 0;
        while (F(hi) < 0.0 && n++ < 2000) hi *= 2.0;
        const double fhi = F(hi);
        if (fhi < 0.0) return std::nullopt;
        return bracketed_root(F, lo, hi, flo, fhi);
    }
    if (!(sonic > 0.0)) return std::nullopt;
    const double hi = sonic;
    const double fhi = F(hi);
    if (fhi > 0.0) return std::nullopt;
    double lo = std::min(0.5 * hi, ph.r);
    int n = 0;
    while (F(lo) < 0.0 && n++ < 2000) lo *= 0.5;
    const double flo = F(lo);
    if (flo < 0.0) return std::nullopt;
    return bracketed_root(F, lo, hi, flo, fhi);
}

bool branch_is_high(Branch b, double rho, double sonic) {
    if (b == Branch::supersonic_high) return true;
    if (b == Branch::subsonic_low) return false;
    return rho > sonic;
}

}  // namespace

Primitive rarefaction_connect(const Primitive& known, Family family, double target,
                              const EosPair& eos, Side known_side) {
    if (family == Family::contact)
        fail(ErrorKind::inadmissible_wave, "rarefaction requested for the contact family");
    require_valid(known, "rarefaction_connect");
    const double lam = eigenvalue(known, family, eos);
    const double tol = coincidence_tol * std::max({1.0, std::abs(lam), std::abs(target)});
    const bool expanding = known_side == Side::left ? target >= lam - tol : target <= lam + tol;
    if (!expanding) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "fan of family " << to_string(family) << " from speed " << lam << " to " << target
            << " would compress";
        fail(ErrorKind::inadmissible_wave, msg.str());
    }
    if (std::abs(target - lam) <= tol) return known;
    return fan_state(known, family, target, eos);
}

Primitive rarefaction_sample(const Primitive& edge, Family family, double xi, double other_edge,
                             const EosPair& eos) {
    const double lam = eigenvalue(edge, family, eos);
    const double lo = std::min(lam, other_edge), hi = std::max(lam, other_edge);
    const double tol = coincidence_tol * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (xi < lo - tol || xi > hi + tol) {
        std::ostringstream msg;
        msg << "xi=" << xi << " outside fan [" << lo << ", " << hi << "]";
        fail(ErrorKind::out_of_fan, msg.str());
    }
    if (xi == lam) return edge;
    return fan_state(edge, family, std::clamp(xi, lo, hi), eos);
}

ShockResult shock_connect_branches(const Primitive& known, int shock_phase, double S,
                                   const EosPair& eos, Branch shock_branch, Branch other_branch) {
    require_valid(known, "shock_connect");
    const int mu = shock_phase;
    const int nu = 3 - shock_phase;
    PhaseJump ph[3];
    for (int k = 1; k <= 2; ++k) {
        const Eos& e = eos[k];
        const double r = known.rho(k);
        ph[k] = PhaseJump{&e, r, -r * (known.u(k) - S), e.pressure(r), e.psi(r)};
    }
    const PhaseJump& M = ph[mu];
    const PhaseJump& N = ph[nu];
    if (M.Q == 0.0)
        fail(ErrorKind::degenerate_shock, "shock speed equals the phase velocity of the shocking phase");
    const double sonic_mu = M.sonic();
    const double sonic_nu = N.sonic();
    const bool mu_high = shock_branch == Branch::automatic ? !(M.r > sonic_mu)
                                                           : shock_branch == Branch::supersonic_high;
    const bool nu_high = branch_is_high(other_branch, N.r, sonic_nu);

    const double gnu_min = sonic_nu > 0.0 ? N.g(sonic_nu) : -std::numeric_limits<double>::infinity();
    // Feasibility boundary on the shocking phase's branch.
    double b = sonic_mu;
    if (M.g(sonic_mu) < gnu_min) {
        auto G = [&](double s) { return M.g(s) - gnu_min; };
        double far = sonic_mu;
        int n = 0;
        if (mu_high) {
            while (G(far) < 0.0 && n++ < 2000) far *= 2.0;
            b = bracketed_root(G, sonic_mu, far, G(sonic_mu), G(far));
        } else {
            while (G(far) < 0.0 && n++ < 2000) far *= 0.5;
            b = bracketed_root(G, far, sonic_mu, G(far), G(sonic_mu));
        }
    }

    auto other_density = [&](double s) { return solve_on_branch(N, M.g(s), nu_high); };
    const double a_mu = known.alpha(mu), a_nu = known.alpha(nu);
    auto h = [&](double s) -> std::optional<double> {
        auto t = other_density(s);
        if (!t) return std::nullopt;
        return a_mu * M.f(s) + a_nu * N.f(*t);
    };

    // Scan outward from the feasibility boundary for the first sign change.
    const double dir = mu_high ? 1.0 : -1.0;
    double prev_s = b;
    std::optional<double> prev_h = h(b);
    std::optional<double> root;
    for (double t = 1e-9; t < std::log(1e6); t *= 1.04) {
        const double s = b * std::exp(dir * t);
        const auto hs = h(s);
        if (hs && prev_h && ((*hs <= 0.0) != (*prev_h <= 0.0) || *hs == 0.0)) {
            auto H = [&](double x) {
                auto v = h(x);
                return v ? *v : std::numeric_limits<double>::quiet_NaN();
            };
            const double lo = std::min(prev_s, s), hi = std::max(prev_s, s);
            root = bracketed_root(H, lo, hi, H(lo), H(hi));
            break;
        }
        prev_s = s;
        prev_h = hs;
    }
    if (!root) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "no admissible jump found for phase-" << mu << " shock at S=" << S;
        fail(ErrorKind::numerics, msg.str());
    }
    double s_mu = *root;
    auto t_nu = other_density(s_mu);
    if (!t_nu) fail(ErrorKind::numerics, "shock solve lost the other-phase root");
    double s_nu = *t_nu;

    // Newton polish on the coupled 2x2 system.
    auto residual = [&](double x, double y) {
        return std::array<double, 2>{a_mu * M.f(x) + a_nu * N.f(y), M.g(x) - N.g(y)};
    };
    auto rnorm = [&](const std::array<double, 2>& r) {
        const double fs = a_mu * (std::abs(M.pr) + M.Q * M.Q / M.r) +
                          a_nu * (std::abs(N.pr) + N.Q * N.Q / N.r);
        const double gs = std::abs(M.psir) + std::abs(N.psir) + M.Q * M.Q / (M.r * M.r) +
                          N.Q * N.Q / (N.r * N.r);
        return std::max(std::abs(r[0]) / fs, std::abs(r[1]) / gs);
    };
    auto res = residual(s_mu, s_nu);
    for (int it = 0; it < newton_max_iter && rnorm(res) > newton_tol; ++it) {
        const double j11 = a_mu * M.df(s_mu), j12 = a_nu * N.df(s_nu);
        const double j21 = M.dg(s_mu), j22 = -N.dg(s_nu);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        double dx = -(res[0] * j22 - j12 * res[1]) / det;
        double dy = -(j11 * res[1] - j21 * res[0]) / det;
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 30; ++k) {
            const double x = s_mu + lambda * dx, y = s_nu + lambda * dy;
            if (x > 0.0 && y > 0.0) {
                auto r2 = residual(x, y);
                if (rnorm(r2) < rnorm(res)) {
                    s_mu = x;
                    s_nu = y;
                    res = r2;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    if (std::abs(s_mu - M.r) <= zero_strength_tol * M.r)
        fail(ErrorKind::degenerate_shock, "shock of zero strength");

    ShockResult out;
    out.state = known;
    out.state.rho(mu) = s_mu;
    out.state.rho(nu) = s_nu;
    out.state.u(mu) = S - M.Q / s_mu;
    out.state.u(nu) = S - N.Q / s_nu;
    out.data.S = S;
    out.data.Q1 = ph[1].Q;
    out.data.Q2 = ph[2].Q;
    out.data.Q = known.alpha1 * ph[1].Q + known.alpha2() * ph[2].Q;
    return out;
}

ShockResult shock_connect(const Primitive& known, Family family, double S, const EosPair& eos,
                          Side known_side) {
    if (family == Family::contact)
        fail(ErrorKind::inadmissible_wave, "shock requested for the contact family");
    require_valid(known, "shock_connect");
    const int mu = phase_of(family);
    const int nu = 3 - mu;
    const double u = mixture(known, eos).u;
    if (speeds_coincide(u, S))
        fail(ErrorKind::inadmissible_wave, "shock speed equals the mixture velocity (contact)");
    const double Qmu = -known.rho(mu) * (known.u(mu) - S);
    if (Qmu * direction_of(family) <= 0.0) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "shock speed " << S << " is on the wrong side of u" << mu << " for family "
            << to_string(family);
        fail(ErrorKind::inadmissible_wave, msg.str());
    }
    // Other phase: stay on the known branch, unless the known state is sonic there.
    const double Qnu = -known.rho(nu) * (known.u(nu) - S);
    const double sonic_nu = eos[nu].sonic_density(Qnu);
    Branch other = Branch::automatic;
    if (sonic_nu > 0.0 && std::abs(known.rho(nu) - sonic_nu) <= 1e-7 * sonic_nu) {
        const bool unknown_right = known_side == Side::left;
        other = (unknown_right == (Qnu > 0.0)) ? Branch::supersonic_high : Branch::subsonic_low;
    }
    ShockResult r = shock_connect_branches(known, mu, S, eos, Branch::automatic, other);
    const Primitive& minus = known_side == Side::left ? known : r.state;
    const Primitive& plus = known_side == Side::left ? r.state : known;
    r.data.entropy_production = entropy_production(minus, plus, S, eos);
    return r;
}

ShockResult shock_connect_to_density(const Primitive& known, Family family, double target_rho,
                                     const EosPair& eos, Side known_side) {
    const int mu = phase_of(family);
    const int d = direction_of(family);
    const double lam = eigenvalue(known, family, eos);
    const double umu = known.u(mu);
    const bool downstream = (known_side == Side::left) == (d > 0);
    auto rho_at = [&](double S) { return shock_connect(known, family, S, eos, known_side).state.rho(mu); };
    auto F = [&](double S) { return rho_at(S) - target_rho; };
    double lo, hi;
    if (downstream) {
        lo = std::min(umu, lam);
        hi = std::max(umu, lam);
        const double pad = 1e-9 * (hi - lo);
        lo += pad;
        hi -= pad;
    } else {
        double span = eos[mu].sound_speed(known.rho(mu));
        double far = lam + d * span;
        int n = 0;
        while (n++ < 60) {
            try {
                const double v = F(far);
                const double near = F(lam + d * 1e-6 * span);
                if ((v <= 0.0) != (near <= 0.0)) break;
            } catch (const Error&) {
            }
            span *= 2.0;
            far = lam + d * span;
        }
        lo = std::min(lam + d * 1e-6 * eos[mu].sound_speed(known.rho(mu)), far);
        hi = std::max(lam + d * 1e-6 * eos[mu].sound_speed(known.rho(mu)), far);
    }
    const double flo = F(lo), fhi = F(hi);
    if ((flo <= 0.0) == (fhi <= 0.0))
        fail(ErrorKind::numerics, "target density not reachable by a shock of this family");
    const double S = bracketed_root(F, lo, hi, flo, fhi);
    return shock_connect(known, family, S, eos, known_side);
}

MassFluxSystem shock_mass_flux_system(const Primitive& minus, const Primitive& plus, double alpha1,
                                      const EosPair& eos) {
    const double alpha2 = 1.0 - alpha1;
    const double j1 = 1.0 / plus.rho1 - 1.0 / minus.rho1;
    const double j2 = 1.0 / plus.rho2 - 1.0 / minus.rho2;
    const double k1 = 1.0 / (plus.rho1 * plus.rho1) - 1.0 / (minus.rho1 * minus.rho1);
    const double k2 = 1.0 / (plus.rho2 * plus.rho2) - 1.0 / (minus.rho2 * minus.rho2);
    const double dp = alpha1 * (eos.phase1.pressure(plus.rho1) - eos.phase1.pressure(minus.rho1)) +
                      alpha2 * (eos.phase2.pressure(plus.rho2) - eos.phase2.pressure(minus.rho2));
    const double dpsi = (eos.phase1.psi(plus.rho1) - eos.phase2.psi(plus.rho2)) -
                        (eos.phase1.psi(minus.rho1) - eos.phase2.psi(minus.rho2));
    const double det = -0.5 * (alpha1 * j1 * k2 + alpha2 * k1 * j2);
    const double scale = std::abs(alpha1 * j1 * k2) + std::abs(alpha2 * k1 * j2);
    if (!(std::abs(det) > 1e-14 * scale) || det == 0.0)
        fail(ErrorKind::degenerate_jump, "mass-flux system is singular (a phase density does not jump)");
    MassFluxSystem out;
    out.det = det;
    out.Q1_sq = (0.5 * k2 * dp + alpha2 * j2 * dpsi) / det;
    out.Q2_sq = (0.5 * k1 * dp - alpha1 * j1 * dpsi) / det;
    return out;
}

namespace {

struct ContactTargets {
    double u, m, pbar, J;
};

ContactTargets contact_targets(const Primitive& W, const EosPair& eos) {
    const Mixture m = mixture(W, eos);
    return {m.u, m.rho * m.c1 * m.c2 * m.w, m.p_bar,
            0.5 * (m.c2 - m.c1) * m.w * m.w + eos.phase1.psi(W.rho1) - eos.phase2.psi(W.rho2)};
}

// Newton on (rho1, rho2, w) at fixed alpha; returns false when it fails.
bool contact_newton(const ContactTargets& T, double alpha1, const EosPair& eos, double& r1,
                    double& r2, double& w) {
    const double a1 = alpha1, a2 = 1.0 - alpha1;
    auto eval = [&](double x1, double x2, double ww, Eigen::Vector3d& R, Eigen::Matrix3d* J) {
        const double rho = a1 * x1 + a2 * x2;
        const double K = a1 * a2 * x1 * x2 / rho;
        const double c1 = a1 * x1 / rho;
        const double s1 = eos.phase1.sound_speed_sq(x1);
        const double s2 = eos.phase2.sound_speed_sq(x2);
        const double p = a1 * eos.phase1.pressure(x1) + a2 * eos.phase2.pressure(x2);
        R(0) = K * ww - T.m;
        R(1) = K * ww * ww + p - T.pbar;
        R(2) = 0.5 * (1.0 - 2.0 * c1) * ww * ww + eos.phase1.psi(x1) - eos.phase2.psi(x2) - T.J;
        if (J) {
            const double K1 = a1 * a2 * a2 * x2 * x2 / (rho * rho);
            const double K2 = a1 * a1 * a2 * x1 * x1 / (rho * rho);
            const double dc1_1 = a1 * a2 * x2 / (rho * rho);
            const double dc1_2 = -a1 * a2 * x1 / (rho * rho);
            (*J) << K1 * ww, K2 * ww, K, K1 * ww * ww + a1 * s1, K2 * ww * ww + a2 * s2,
                2.0 * K * ww, -ww * ww * dc1_1 + s1 / x1, -ww * ww * dc1_2 - s2 / x2,
                (1.0 - 2.0 * c1) * ww;
        }
    };
    auto scaled = [&](const Eigen::Vector3d& R, double x1, double x2, double ww) {
        const double rho = a1 * x1 + a2 * x2;
        const double K = a1 * a2 * x1 * x2 / rho;
        const double v = std::abs(ww) + eos.phase1.sound_speed(x1) + eos.phase2.sound_speed(x2);
        const double ps = K * ww * ww + a1 * std::abs(eos.phase1.pressure(x1)) +
                          a2 * std::abs(eos.phase2.pressure(x2)) + rho * v * v;
        const double js = 0.5 * ww * ww + std::abs(eos.phase1.psi(x1)) +
                          std::abs(eos.phase2.psi(x2)) + v * v;
        return std::max({std::abs(R(0)) / (K * v), std::abs(R(1)) / ps, std::abs(R(2)) / js});
    };
    Eigen::Vector3d R;
    Eigen::Matrix3d J;
    eval(r1, r2, w, R, &J);
    double err = scaled(R, r1, r2, w);
    for (int it = 0; it < newton_max_iter; ++it) {
        if (err < newton_tol) return true;
        const Eigen::Vector3d dx = J.fullPivLu().solve(-R);
        if (!dx.allFinite()) return false;
        double lam = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k) {
            const double x1 = r1 + lam * dx(0), x2 = r2 + lam * dx(1), ww = w + lam * dx(2);
            if (x1 > 0.0 && x2 > 0.0) {
                Eigen::Vector3d R2;
                eval(x1, x2, ww, R2, nullptr);
                const double e2 = scaled(R2, x1, x2, ww);
                if (e2 < err) {
                    r1 = x1;
                    r2 = x2;
                    w = ww;
                    eval(r1, r2, w, R, &J);
                    err = e2;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if (!accepted) return err < 1e2 * newton_tol;
    }
    return err < newton_tol;
}

}  // namespace

Primitive contact_connect(const Primitive& left, double alpha1_right, const EosPair& eos) {
    require_valid(left, "contact_connect");
    if (!(alpha1_right > 0.0 && alpha1_right < 1.0))
        fail(ErrorKind::domain, "right volume fraction outside (0, 1)");
    const ContactTargets T = contact_targets(left, eos);
    double r1 = left.rho1, r2 = left.rho2, w = left.u1 - left.u2;
    bool ok = contact_newton(T, alpha1_right, eos, r1, r2, w);
    if (!ok) {
        r1 = left.rho1;
        r2 = left.rho2;
        w = left.u1 - left.u2;
        // continuation in alpha with step halving
        double a = left.alpha1, step = (alpha1_right - left.alpha1) / 10.0;
        ok = true;
        while (ok && a != alpha1_right) {
            const double next = std::abs(alpha1_right - a) <= std::abs(step) ? alpha1_right : a + step;
            double t1 = r1, t2 = r2, tw = w;
            if (contact_newton(T, next, eos, t1, t2, tw)) {
                r1 = t1;
                r2 = t2;
                w = tw;
                a = next;
            } else if (std::abs(step) > 1e-6) {
                step *= 0.5;
            } else {
                ok = false;
            }
        }
    }
    if (!ok) {
        std::ostringstream msg;
        msg << "no contact state found for alpha1 " << left.alpha1 << " -> " << alpha1_right
            << " (Newton and alpha continuation failed; the contact relations may have no root)";
        fail(ErrorKind::numerics, msg.str());
    }
    Primitive out;
    out.alpha1 = alpha1_right;
    out.rho1 = r1;
    out.rho2 = r2;
    const double rho = alpha1_right * r1 + (1.0 - alpha1_right) * r2;
    const double c1 = alpha1_right * r1 / rho;
    out.u1 = T.u + (1.0 - c1) * w;
    out.u2 = T.u - c1 * w;
    return out;
}

std::array<double, 5> jump_residuals(const Primitive& minus, const Primitive& plus, double S,
                                     const EosPair& eos) {
    auto terms = [&](const Primitive& W) {
        const double a1 = W.alpha1, a2 = W.alpha2();
        const double rho = a1 * W.rho1 + a2 * W.rho2;
        const double mom = a1 * W.rho1 * W.u1 + a2 * W.rho2 * W.u2;
        const double p1 = eos.phase1.pressure(W.rho1), p2 = eos.phase2.pressure(W.rho2);
        const double psi1 = eos.phase1.psi(W.rho1), psi2 = eos.phase2.psi(W.rho2);
        std::array<double, 5> scale = {
            std::abs(a1 * mom) + std::abs(S * a1 * rho),
            std::abs(a1 * W.rho1 * W.u1) + std::abs(S * a1 * W.rho1),
            std::abs(mom) + std::abs(S * rho),
            a1 * W.rho1 * W.u1 * W.u1 + a2 * W.rho2 * W.u2 * W.u2 + a1 * std::abs(p1) +
                a2 * std::abs(p2) + std::abs(S * mom),
            0.5 * (W.u1 * W.u1 + W.u2 * W.u2) + std::abs(psi1) + std::abs(psi2) +
                std::abs(S * (W.u1 - W.u2))};
        return scale;
    };
    const Vec5 Fm = physical_flux_primitive(minus, eos), Fp = physical_flux_primitive(plus, eos);
    const Vec5 Um = to_conserved(minus), Up = to_conserved(plus);
    const auto sm = terms(minus), sp = terms(plus);
    std::array<double, 5> r{};
    for (int k = 0; k < 5; ++k) {
        const double scale = std::max({sm[k], sp[k], std::numeric_limits<double>::min()});
        r[k] = ((Fp[k] - Fm[k]) - S * (Up[k] - Um[k])) / scale;
    }
    return r;
}

std::array<double, 4> contact_residuals(const Primitive& minus, const Primitive& plus,
                                        const EosPair& eos) {
    const ContactTargets a = contact_targets(minus, eos), b = contact_targets(plus, eos);
    const double v = std::max(velocity_scale(minus, eos), velocity_scale(plus, eos));
    const Mixture mm = mixture(minus, eos), mp = mixture(plus, eos);
    const double k = std::max(mm.rho * mm.c1 * mm.c2, mp.rho * mp.c1 * mp.c2);
    auto pscale = [&](const Primitive& W, const Mixture& m) {
        return m.rho * m.c1 * m.c2 * m.w * m.w + W.alpha1 * std::abs(eos.phase1.pressure(W.rho1)) +
               W.alpha2() * std::abs(eos.phase2.pressure(W.rho2));
    };
    auto jscale = [&](const Primitive& W, const Mixture& m) {
        return 0.5 * m.w * m.w + std::abs(eos.phase1.psi(W.rho1)) + std::abs(eos.phase2.psi(W.rho2));
    };
    const double ps = std::max(pscale(minus, mm), pscale(plus, mp));
    const double js = std::max(jscale(minus, mm), jscale(plus, mp));
    return {(b.u - a.u) / v, (b.m - a.m) / (k * v), (b.pbar - a.pbar) / ps, (b.J - a.J) / js};
}

double max_abs(const std::array<double, 5>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const std::array<double, 4>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double entropy_production(const Primitive& minus, const Primitive& plus, double S,
                          const EosPair& eos) {
    const double res = max_abs(jump_residuals(minus, plus, S, eos));
    if (res > 1e-6) {
        std::ostringstream msg;
        msg << "states are not connected by the jump relations (scaled residual " << res << ")";
        fail(ErrorKind::not_a_discontinuity, msg.str());
    }
    const double Q = -mixture(minus, eos).rho * (mixture(minus, eos).u - S);
    auto bracket = [&](const Primitive& W) {
        return eos.phase1.psi(W.rho1) + 0.5 * (W.u1 - S) * (W.u1 - S);
    };
    return -Q * (bracket(plus) - bracket(minus));
}

const char* to_string(LaxClass c) {
    switch (c) {
        case LaxClass::compressive: return "compressive";
        case LaxClass::overcompressive: return "overcompressive";
        case LaxClass::undercompressive: return "undercompressive";
        case LaxClass::fails: return "fails";
    }
    return "?";
}

LaxClass lax_check(const Primitive& minus, const Primitive& plus, double S, Family family,
                   const EosPair& eos) {
    const double lm = eigenvalue(minus, family, eos);
    const double lp = eigenvalue(plus, family, eos);
    if (!(lm > S && S > lp) || speeds_coincide(lm, S) || speeds_coincide(lp, S))
        return LaxClass::fails;
    int below_left = 0, below_right = 0;
    for (Family f : all_families) {
        const double a = eigenvalue(minus, f, eos), b = eigenvalue(plus, f, eos);
        if (a < S && !speeds_coincide(a, S)) ++below_left;
        if (b < S && !speeds_coincide(b, S)) ++below_right;
    }
    const int i = below_left + 1;
    const int j = below_right;
    if (i == j) return LaxClass::compressive;
    return i < j ? LaxClass::overcompressive : LaxClass::undercompressive;
}

CharacteristicCensus classify_discontinuity(const Primitive& minus, const Primitive& plus,
                                            double S, const EosPair& eos) {
    CharacteristicCensus c;
    for (Family f : all_families) {
        int out_sides = 0;
        for (Side side : {Side::left, Side::right}) {
            const double lam = eigenvalue(side == Side::left ? minus : plus, f, eos);
            const Characteristic ch{f, side};
            if (speeds_coincide(lam, S)) {
                c.coinciding.push_back(ch);
            } else if ((side == Side::left) == (lam > S)) {
                c.incoming.push_back(ch);
            } else {
                c.outgoing.push_back(ch);
                ++out_sides;
            }
        }
        if (out_sides == 2) c.silent_families.push_back(f);
    }
    c.count_ok = c.unknowns == c.i() + c.c() + c.relations;
    c.evolutionary = c.count_ok && c.silent_families.empty();
    return c;
}

std::string describe(const CharacteristicCensus& census) {
    std::ostringstream s;
    auto list = [&](const char* name, const std::vector<Characteristic>& v) {
        s << name << "={";
        for (std::size_t k = 0; k < v.size(); ++k)
            s << (k ? "," : "") << to_string(v[k].family) << (v[k].side == Side::left ? "^-" : "^+");
        s << "} ";
    };
    list("I", census.incoming);
    list("C", census.coinciding);
    list("O", census.outgoing);
    s << "i=" << census.i() << " c=" << census.c() << " o=" << census.o()
      << (census.evolutionary ? " evolutionary" : " not-evolutionary");
    return s.str();
}

const char* to_string(InteriorCase c) {
    switch (c) {
        case InteriorCase::i: return "i";
        case InteriorCase::ii: return "ii";
        case InteriorCase::iii: return "iii";
        case InteriorCase::iv: return "iv";
        case InteriorCase::none: return "none";
    }
    return "?";
}

InteriorCase classify_interior_shock(const Primitive& minus, const Primitive& plus, double S,
                                     Family host, const EosPair& eos) {
    const double L = eigenvalue(minus, host, eos);
    const double R = eigenvalue(plus, host, eos);
    const bool cl = speeds_coincide(L, S), cr = speeds_coincide(R, S);
    if (cl && cr) return InteriorCase::i;
    if (!cl && !cr) return (L < S && S < R) ? InteriorCase::ii : InteriorCase::none;
    // Fluid crosses from the upstream side; Q < 0 means it enters from the left.
    const double Q = -mixture(minus, eos).rho * (mixture(minus, eos).u - S);
    const bool downstream_right = Q < 0.0;
    if (cr && L < S) return downstream_right ? InteriorCase::iii : InteriorCase::iv;
    if (cl && R > S) return downstream_right ? InteriorCase::iv : InteriorCase::iii;
    return InteriorCase::none;
}

}  // namespace tpr
