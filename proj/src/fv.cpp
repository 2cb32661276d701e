#include "tpr/fv.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

#include "tpr/errors.hpp"
#include "tpr/models.hpp"

namespace tpr {

void Grid::validate() const {
    if (n_cells < 4) fail(ErrorKind::config, "grid needs at least 4 cells");
    if (!(x_max > x_min)) fail(ErrorKind::config, "grid bounds must satisfy x_min < x_max");
}

void SolverConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 0.5)) fail(ErrorKind::config, "cfl must lie in (0, 0.5]");
    if (!(t_end >= 0.0)) fail(ErrorKind::config, "t_end must be non-negative");
    if (!(theta1 > 0.0) || !(theta2 > 0.0))
        fail(ErrorKind::config, "relaxation times must be positive (use infinity to disable)");
    if (ledger_every < 1) fail(ErrorKind::config, "ledger_every must be at least 1");
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::muscl_rusanov: return "muscl-rusanov";
        case Scheme::force_godunov: return "force-godunov";
        case Scheme::muscl_pathcons_bn: return "muscl-pathcons-bn";
    }
    return "?";
}

Scheme parse_scheme(const std::string& text) {
    if (text == "muscl-rusanov" || text == "shtc") return Scheme::muscl_rusanov;
    if (text == "force-godunov" || text == "force") return Scheme::force_godunov;
    if (text == "muscl-pathcons-bn" || text == "bn") return Scheme::muscl_pathcons_bn;
    fail(ErrorKind::config, "unknown scheme or model '" + text + "'");
}

const char* to_string(Limiter l) {
    switch (l) {
        case Limiter::minmod: return "minmod";
        case Limiter::barth: return "barth";
        case Limiter::superbee: return "superbee";
    }
    return "?";
}

Limiter parse_limiter(const std::string& text) {
    if (text == "minmod") return Limiter::minmod;
    if (text == "barth") return Limiter::barth;
    if (text == "superbee") return Limiter::superbee;
    fail(ErrorKind::config, "unknown limiter '" + text + "'");
}

double limit_slope(Limiter l, double a, double b) {
    if (a * b <= 0.0) return 0.0;
    const double s = a > 0.0 ? 1.0 : -1.0;
    const double x = std::abs(a), y = std::abs(b);
    switch (l) {
        case Limiter::minmod: return s * std::min(x, y);
        case Limiter::barth: return s * std::min({2.0 * x, 2.0 * y, 0.5 * (x + y)});
        case Limiter::superbee: return s * std::max(std::min(2.0 * x, y), std::min(x, 2.0 * y));
    }
    return 0.0;
}

double max_wave_speed(const Primitive& W, const EosPair& eos) {
    const double a1 = eos.phase1.sound_speed(W.rho1), a2 = eos.phase2.sound_speed(W.rho2);
    return std::max({std::abs(W.u1) + a1, std::abs(W.u2) + a2, std::abs(mixture(W, eos).u)});
}

Vec5 rusanov_flux(const Vec5& UL, const Vec5& UR, const EosPair& eos) {
    const Primitive WL = to_primitive(UL), WR = to_primitive(UR);
    const double s = std::max(max_wave_speed(WL, eos), max_wave_speed(WR, eos));
    const Vec5 FL = physical_flux(UL, eos), FR = physical_flux(UR, eos);
    Vec5 F;
    for (int k = 0; k < 5; ++k) F[k] = 0.5 * (FL[k] + FR[k]) - 0.5 * s * (UR[k] - UL[k]);
    return F;
}

Vec5 force_flux(const Vec5& UL, const Vec5& UR, double dx, double dt, const EosPair& eos) {
    const Vec5 FL = physical_flux(UL, eos), FR = physical_flux(UR, eos);
    Vec5 lf, mid;
    for (int k = 0; k < 5; ++k) {
        lf[k] = 0.5 * (FL[k] + FR[k]) - 0.5 * dx / dt * (UR[k] - UL[k]);
        mid[k] = 0.5 * (UL[k] + UR[k]) - 0.5 * dt / dx * (FR[k] - FL[k]);
    }
    const Vec5 rich = physical_flux(mid, eos);
    Vec5 F;
    for (int k = 0; k < 5; ++k) F[k] = 0.5 * (lf[k] + rich[k]);
    return F;
}

Vec5 to_bn(const Primitive& W) {
    const double m1 = W.alpha1 * W.rho1, m2 = W.alpha2() * W.rho2;
    return {W.alpha1, m1, m2, m1 * W.u1, m2 * W.u2};
}

Primitive from_bn(const Vec5& V) {
    const double a1 = V[0];
    if (!(a1 > 0.0 && a1 < 1.0) || !(V[1] > 0.0) || !(V[2] > 0.0) || !std::isfinite(V[3]) ||
        !std::isfinite(V[4])) {
        std::ostringstream msg;
        msg << "invalid BN state (alpha1=" << V[0] << ", m1=" << V[1] << ", m2=" << V[2] << ")";
        fail(ErrorKind::state_decode, msg.str());
    }
    return {a1, V[1] / a1, V[2] / (1.0 - a1), V[3] / V[1], V[4] / V[2]};
}

Vec5 bn_flux(const Vec5& V, const EosPair& eos) {
    const Primitive W = from_bn(V);
    return {0.0, V[3], V[4], V[3] * W.u1 + W.alpha1 * eos.phase1.pressure(W.rho1),
            V[4] * W.u2 + W.alpha2() * eos.phase2.pressure(W.rho2)};
}

namespace {

// alpha column of the BN nonconservative matrix.
Vec5 bn_alpha_column(const Vec5& V, const EosPair& eos) {
    const Primitive W = from_bn(V);
    const InterfaceClosure ic = interface_closure(W, eos);
    return {ic.u_I, 0.0, 0.0, -ic.p_I, ic.p_I};
}

}  // namespace

Vec5 bn_path_term(const Vec5& VL, const Vec5& VR, const EosPair& eos) {
    using boost::math::quadrature::gauss;
    const double dalpha = VR[0] - VL[0];
    Vec5 out{};
    if (dalpha == 0.0) return out;
    const auto& x = gauss<double, 3>::abscissa();
    const auto& w = gauss<double, 3>::weights();
    auto add = [&](double s, double weight) {
        Vec5 V;
        for (int k = 0; k < 5; ++k) V[k] = VL[k] + s * (VR[k] - VL[k]);
        const Vec5 col = bn_alpha_column(V, eos);
        for (int k = 0; k < 5; ++k) out[k] += weight * col[k];
    };
    // abscissae on [-1, 1] are listed for the non-negative half
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wi = 0.5 * w[i];
        if (x[i] == 0.0) {
            add(0.5, wi);
        } else {
            add(0.5 * (1.0 - x[i]), wi);
            add(0.5 * (1.0 + x[i]), wi);
        }
    }
    for (int k = 0; k < 5; ++k) out[k] *= dalpha;
    return out;
}

namespace {

Cells with_ghosts(const Cells& U) {
    Cells ext(U.size() + 4);
    std::copy(U.begin(), U.end(), ext.begin() + 2);
    ext[0] = ext[1] = U.front();
    ext[ext.size() - 1] = ext[ext.size() - 2] = U.back();
    return ext;
}

bool decodes(const Vec5& U, bool bn) {
    try {
        if (bn)
            from_bn(U);
        else
            to_primitive(U);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Vec5 floor_state(const Vec5& U, bool bn) {
    constexpr double tiny = 1e-12;
    Primitive W;
    if (bn) {
        W.alpha1 = std::clamp(U[0], tiny, 1.0 - tiny);
        const double m1 = std::max(U[1], tiny), m2 = std::max(U[2], tiny);
        W.rho1 = std::max(m1 / W.alpha1, tiny);
        W.rho2 = std::max(m2 / (1.0 - W.alpha1), tiny);
        W.u1 = U[1] > tiny ? U[3] / U[1] : 0.0;
        W.u2 = U[2] > tiny ? U[4] / U[2] : 0.0;
        return to_bn(W);
    }
    const double rho = std::max(U[2], tiny);
    W.alpha1 = std::clamp(U[0] / rho, tiny, 1.0 - tiny);
    const double m1 = std::clamp(U[1], tiny, rho - tiny);
    W.rho1 = std::max(m1 / W.alpha1, tiny);
    W.rho2 = std::max((rho - m1) / (1.0 - W.alpha1), tiny);
    const double c1 = W.alpha1 * W.rho1 / (W.alpha1 * W.rho1 + (1.0 - W.alpha1) * W.rho2);
    const double u = U[3] / rho;
    W.u1 = u + (1.0 - c1) * U[4];
    W.u2 = u - c1 * U[4];
    return to_conserved(W);
}

void enforce_positivity(Cells& U, bool bn, const SolverConfig& cfg, StepLog* log) {
    for (std::size_t i = 0; i < U.size(); ++i) {
        if (decodes(U[i], bn)) continue;
        std::ostringstream msg;
        msg << "positivity violated in cell " << i << " (" << U[i][0] << ", " << U[i][1] << ", "
            << U[i][2] << ", " << U[i][3] << ", " << U[i][4] << ")";
        if (cfg.positivity == PositivityMode::strict) fail(ErrorKind::positivity, msg.str());
        U[i] = floor_state(U[i], bn);
        if (log) log->events.push_back("floored: " + msg.str());
    }
}

}  // namespace

void muscl_hancock_step(Cells& U, double dt, double dx, const SolverConfig& cfg, const EosPair& eos,
                        Vec5* boundary_flux, StepLog* log) {
    const Cells ext = with_ghosts(U);
    const std::size_t m = ext.size();
    Cells Lb(m), Rb(m);
    const double h = 0.5 * dt / dx;
    for (std::size_t j = 1; j + 1 < m; ++j) {
        Vec5 L, R;
        for (int k = 0; k < 5; ++k) {
            const double d = limit_slope(cfg.limiter, ext[j][k] - ext[j - 1][k], ext[j + 1][k] - ext[j][k]);
            L[k] = ext[j][k] - 0.5 * d;
            R[k] = ext[j][k] + 0.5 * d;
        }
        bool ok = decodes(L, false) && decodes(R, false);
        if (ok) {
            const Vec5 FL = physical_flux(L, eos), FR = physical_flux(R, eos);
            for (int k = 0; k < 5; ++k) {
                L[k] += h * (FL[k] - FR[k]);
                R[k] += h * (FL[k] - FR[k]);
            }
            ok = decodes(L, false) && decodes(R, false);
        }
        if (!ok) {
            L = R = ext[j];
            if (log) log->events.push_back("zero slope in cell " + std::to_string(static_cast<long>(j) - 2));
        }
        Lb[j] = L;
        Rb[j] = R;
    }
    // interface j+1/2 for j = 1 .. m-3
    Cells F(m);
    for (std::size_t j = 1; j + 2 < m; ++j) F[j] = rusanov_flux(Rb[j], Lb[j + 1], eos);
    const double r = dt / dx;
    for (std::size_t i = 0; i < U.size(); ++i) {
        const std::size_t j = i + 2;
        for (int k = 0; k < 5; ++k) U[i][k] -= r * (F[j][k] - F[j - 1][k]);
    }
    if (boundary_flux)
        for (int k = 0; k < 5; ++k) (*boundary_flux)[k] = dt * (F[1][k] - F[m - 3][k]);
    enforce_positivity(U, false, cfg, log);
}

void force_godunov_step(Cells& U, double dt, double dx, const SolverConfig& cfg, const EosPair& eos,
                        Vec5* boundary_flux, StepLog* log) {
    const Cells ext = with_ghosts(U);
    const std::size_t m = ext.size();
    Cells F(m);
    for (std::size_t j = 1; j + 2 < m; ++j) F[j] = force_flux(ext[j], ext[j + 1], dx, dt, eos);
    const double r = dt / dx;
    for (std::size_t i = 0; i < U.size(); ++i) {
        const std::size_t j = i + 2;
        for (int k = 0; k < 5; ++k) U[i][k] -= r * (F[j][k] - F[j - 1][k]);
    }
    if (boundary_flux)
        for (int k = 0; k < 5; ++k) (*boundary_flux)[k] = dt * (F[1][k] - F[m - 3][k]);
    enforce_positivity(U, false, cfg, log);
}

void path_conservative_step(Cells& V, double dt, double dx, const SolverConfig& cfg,
                            const EosPair& eos, Vec5* boundary_flux, StepLog* log) {
    const Cells ext = with_ghosts(V);
    const std::size_t m = ext.size();
    Cells Lb(m), Rb(m);
    const double h = 0.5 * dt / dx;
    for (std::size_t j = 1; j + 1 < m; ++j) {
        Vec5 L, R;
        for (int k = 0; k < 5; ++k) {
            const double d = limit_slope(cfg.limiter, ext[j][k] - ext[j - 1][k], ext[j + 1][k] - ext[j][k]);
            L[k] = ext[j][k] - 0.5 * d;
            R[k] = ext[j][k] + 0.5 * d;
        }
        bool ok = decodes(L, true) && decodes(R, true);
        if (ok) {
            const Vec5 FL = bn_flux(L, eos), FR = bn_flux(R, eos);
            const Vec5 col = bn_alpha_column(ext[j], eos);
            const double da = R[0] - L[0];
            for (int k = 0; k < 5; ++k) {
                const double change = h * (FR[k] - FL[k] + col[k] * da);
                L[k] -= change;
                R[k] -= change;
            }
            ok = decodes(L, true) && decodes(R, true);
        }
        if (!ok) {
            L = R = ext[j];
            if (log) log->events.push_back("zero slope in cell " + std::to_string(static_cast<long>(j) - 2));
        }
        Lb[j] = L;
        Rb[j] = R;
    }
    // fluctuations at interface j+1/2: Dm goes to cell j, Dp to cell j+1
    Cells Dm(m), Dp(m), Fc(m);
    for (std::size_t j = 1; j + 2 < m; ++j) {
        const Vec5& A = Rb[j];
        const Vec5& B = Lb[j + 1];
        const Primitive WA = from_bn(A), WB = from_bn(B);
        const double s = std::max(max_wave_speed(WA, eos), max_wave_speed(WB, eos));
        const Vec5 FA = bn_flux(A, eos), FB = bn_flux(B, eos);
        const Vec5 P = bn_path_term(A, B, eos);
        for (int k = 0; k < 5; ++k) {
            const double total = FB[k] - FA[k] + P[k];
            Dm[j][k] = 0.5 * (total - s * (B[k] - A[k]));
            Dp[j][k] = 0.5 * (total + s * (B[k] - A[k]));
            Fc[j][k] = 0.5 * (FA[k] + FB[k]) - 0.5 * s * (B[k] - A[k]);
        }
    }
    const double r = dt / dx;
    for (std::size_t i = 0; i < V.size(); ++i) {
        const std::size_t j = i + 2;
        const Vec5 FL = bn_flux(Lb[j], eos), FR = bn_flux(Rb[j], eos);
        Vec5 mid;
        for (int k = 0; k < 5; ++k) mid[k] = 0.5 * (Lb[j][k] + Rb[j][k]);
        const Vec5 col = bn_alpha_column(mid, eos);
        const double da = Rb[j][0] - Lb[j][0];
        for (int k = 0; k < 5; ++k)
            V[i][k] -= r * (Dm[j][k] + Dp[j - 1][k] + FR[k] - FL[k] + col[k] * da);
    }
    if (boundary_flux)
        for (int k = 0; k < 5; ++k) (*boundary_flux)[k] = dt * (Fc[1][k] - Fc[m - 3][k]);
    enforce_positivity(V, true, cfg, log);
}

namespace {

double pressure_gap(double alpha, double m1, double m2, const EosPair& eos) {
    return eos.phase1.pressure(m1 / alpha) - eos.phase2.pressure(m2 / (1.0 - alpha));
}

// Root in (0, 1) of an increasing function g, starting from a guess inside.
double increasing_root(const std::function<double(double)>& g, double guess) {
    using boost::math::tools::eps_tolerance;
    using boost::math::tools::toms748_solve;
    const double g0 = g(guess);
    if (g0 == 0.0) return guess;
    double lo = guess, hi = guess, glo = g0, ghi = g0;
    int n = 0;
    if (g0 < 0.0) {
        while (ghi < 0.0 && n++ < 200) {
            hi = hi + 0.5 * (1.0 - hi);
            if (!(hi < 1.0)) break;
            ghi = g(hi);
        }
    } else {
        while (glo > 0.0 && n++ < 200) {
            lo = 0.5 * lo;
            if (!(lo > 0.0)) break;
            glo = g(lo);
        }
    }
    if (!(glo <= 0.0 && ghi >= 0.0) || !std::isfinite(glo) || !std::isfinite(ghi))
        fail(ErrorKind::relaxation, "pressure relaxation root not bracketed in (0, 1)");
    std::uintmax_t iters = 200;
    auto r = toms748_solve(g, lo, hi, glo, ghi, eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

constexpr double stiff_ratio = 1e-6;

double relax_alpha(double alpha, double m1, double m2, double dt, double theta1, const EosPair& eos) {
    if (!std::isfinite(theta1)) return alpha;
    if (theta1 < stiff_ratio * dt) return equilibrium_alpha(m1, m2, eos);
    const double k = dt / theta1;
    // scale by the local pressure magnitude so the residual stays well conditioned
    const double ps = std::abs(eos.phase1.pressure(m1 / alpha)) + std::abs(eos.phase2.pressure(m2 / (1.0 - alpha)));
    auto g = [&](double a) { return ((a - alpha) - k * pressure_gap(a, m1, m2, eos)) / (1.0 + k * ps); };
    return increasing_root(g, alpha);
}

double relax_slip(double w, double c1, double dt, double theta2) {
    if (!std::isfinite(theta2)) return w;
    if (theta2 < stiff_ratio * dt) return 0.0;
    return w * std::exp(-c1 * (1.0 - c1) * dt / theta2);
}

}  // namespace

double equilibrium_alpha(double m1, double m2, const EosPair& eos) {
    auto g = [&](double a) { return -pressure_gap(a, m1, m2, eos); };
    // start from the volume split at equal densities
    return increasing_root(g, m1 / (m1 + m2));
}

Vec5 relax_conserved(const Vec5& U, double dt, double theta1, double theta2, const EosPair& eos) {
    Vec5 out = U;
    const double c1 = U[1] / U[2];
    out[4] = relax_slip(U[4], c1, dt, theta2);
    if (std::isfinite(theta1)) {
        const double alpha = relax_alpha(U[0] / U[2], U[1], U[2] - U[1], dt, theta1, eos);
        out[0] = alpha * U[2];
    }
    return out;
}

Vec5 relax_bn(const Vec5& V, double dt, double theta1, double theta2, const EosPair& eos) {
    Vec5 out = V;
    const double m1 = V[1], m2 = V[2], rho = m1 + m2;
    if (std::isfinite(theta2)) {
        const double c1 = m1 / rho, c2 = m2 / rho;
        const double mom = V[3] + V[4];
        const double u = mom / rho;
        const double w = relax_slip(V[3] / m1 - V[4] / m2, c1, dt, theta2);
        out[3] = m1 * (u + c2 * w);
        out[4] = mom - out[3];
    }
    out[0] = relax_alpha(V[0], m1, m2, dt, theta1, eos);
    return out;
}

void relaxation_step(Cells& cells, bool bn_variables, double dt, double theta1, double theta2,
                     const EosPair& eos) {
    for (Vec5& c : cells)
        c = bn_variables ? relax_bn(c, dt, theta1, theta2, eos) : relax_conserved(c, dt, theta1, theta2, eos);
}

namespace {

struct Totals {
    Vec5 sum{};
    Vec5 magnitude{};
};

Totals totals(const Cells& U, double dx) {
    Totals t;
    for (const Vec5& c : U)
        for (int k = 0; k < 5; ++k) {
            t.sum[k] += c[k] * dx;
            t.magnitude[k] += std::abs(c[k]) * dx;
        }
    return t;
}

}  // namespace

Vec5 ledger_closure(const LedgerEntry& start, const LedgerEntry& now) {
    Vec5 e{};
    for (int k = 0; k < 5; ++k) {
        const double drift = now.totals[k] - start.totals[k] - now.boundary_flux_integrals[k] -
                             now.source_integrals[k];
        const double scale = std::max({start.magnitudes[k], now.magnitudes[k],
                                       std::abs(now.boundary_flux_integrals[k]),
                                       std::abs(now.source_integrals[k]), 1e-300});
        e[k] = std::abs(drift) / scale;
    }
    return e;
}

SimulationResult run_simulation(const RiemannData& data, const Grid& grid, const SolverConfig& cfg,
                                const EosPair& eos) {
    grid.validate();
    cfg.validate();
    require_valid(data.left, "left initial state");
    require_valid(data.right, "right initial state");
    const bool bn = cfg.scheme == Scheme::muscl_pathcons_bn;
    const double dx = grid.dx();
    Cells U(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
        const Primitive& W = grid.center(i) < data.x0 ? data.left : data.right;
        U[i] = bn ? to_bn(W) : to_conserved(W);
    }
    auto decode = [&](const Vec5& c) { return bn ? from_bn(c) : to_primitive(c); };

    SimulationResult res;
    res.grid = grid;
    res.config = cfg;
    LedgerEntry entry;
    {
        const Totals t0 = totals(U, dx);
        entry.totals = t0.sum;
        entry.magnitudes = t0.magnitude;
    }
    res.ledger.push_back(entry);
    const LedgerEntry start = entry;
    StepLog log;

    auto relax = [&](double h) {
        const Vec5 before = totals(U, dx).sum;
        relaxation_step(U, bn, h, cfg.theta1, cfg.theta2, eos);
        const Vec5 after = totals(U, dx).sum;
        for (int k = 0; k < 5; ++k) entry.source_integrals[k] += after[k] - before[k];
    };

    double t = 0.0;
    while (t < cfg.t_end) {
        if (res.steps >= cfg.max_steps) fail(ErrorKind::numerics, "step limit reached");
        double smax = 0.0;
        for (const Vec5& c : U) smax = std::max(smax, max_wave_speed(decode(c), eos));
        if (!(smax > 0.0) || !std::isfinite(smax)) {
            std::ostringstream msg;
            msg << "invalid maximum wave speed " << smax << " at t=" << t;
            fail(ErrorKind::numerics, msg.str());
        }
        double dt = cfg.cfl * dx / smax;
        if (t + dt >= cfg.t_end) dt = cfg.t_end - t;

        if (cfg.relaxing() && cfg.splitting == Splitting::strang) relax(0.5 * dt);
        Vec5 bflux{};
        try {
            switch (cfg.scheme) {
                case Scheme::muscl_rusanov: muscl_hancock_step(U, dt, dx, cfg, eos, &bflux, &log); break;
                case Scheme::force_godunov: force_godunov_step(U, dt, dx, cfg, eos, &bflux, &log); break;
                case Scheme::muscl_pathcons_bn: path_conservative_step(U, dt, dx, cfg, eos, &bflux, &log); break;
            }
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << e.what() << " at t=" << t << " (step " << res.steps << ")";
            throw Error(e.kind(), msg.str());
        }
        for (int k = 0; k < 5; ++k) entry.boundary_flux_integrals[k] += bflux[k];
        if (cfg.relaxing()) relax(cfg.splitting == Splitting::strang ? 0.5 * dt : dt);

        double snew = 0.0;
        for (const Vec5& c : U) snew = std::max(snew, max_wave_speed(decode(c), eos));
        if (snew * dt / dx > 1.0) {
            std::ostringstream msg;
            msg << "CFL guard: wave speed grew to " << snew << " (Courant number " << snew * dt / dx
                << ") at t=" << t;
            fail(ErrorKind::numerics, msg.str());
        }
        t = (t + dt >= cfg.t_end) ? cfg.t_end : t + dt;
        ++res.steps;
        entry.time = t;
        {
            const Totals tn = totals(U, dx);
            entry.totals = tn.sum;
            entry.magnitudes = tn.magnitude;
        }
        const Vec5 closure = ledger_closure(start, entry);
        for (int k = 0; k < 5; ++k) {
            if (bn && (k == 0 || k == 3 || k == 4)) continue;  // not conserved in BN form
            res.max_ledger_error = std::max(res.max_ledger_error, closure[k]);
        }
        if (res.steps % cfg.ledger_every == 0 || t >= cfg.t_end) res.ledger.push_back(entry);
    }
    res.time = t;
    res.cells.reserve(U.size());
    for (const Vec5& c : U) res.cells.push_back(decode(c));
    res.log = std::move(log.events);
    return res;
}

const char* to_string(Variable v) {
    switch (v) {
        case Variable::alpha1: return "alpha1";
        case Variable::rho1: return "rho1";
        case Variable::rho2: return "rho2";
        case Variable::u1: return "u1";
        case Variable::u2: return "u2";
        case Variable::rho: return "rho";
        case Variable::u: return "u";
        case Variable::w: return "w";
        case Variable::p: return "p";
    }
    return "?";
}

const std::vector<Variable>& all_variables() {
    static const std::vector<Variable> v = {Variable::alpha1, Variable::rho1, Variable::rho2,
                                            Variable::u1,     Variable::u2,   Variable::rho,
                                            Variable::u,      Variable::w,    Variable::p};
    return v;
}

Variable parse_variable(const std::string& text) {
    for (Variable v : all_variables())
        if (text == to_string(v)) return v;
    fail(ErrorKind::config, "unknown variable '" + text + "'");
}

double value_of(const Primitive& W, Variable v, const EosPair& eos) {
    switch (v) {
        case Variable::alpha1: return W.alpha1;
        case Variable::rho1: return W.rho1;
        case Variable::rho2: return W.rho2;
        case Variable::u1: return W.u1;
        case Variable::u2: return W.u2;
        case Variable::rho: return mixture(W, eos).rho;
        case Variable::u: return mixture(W, eos).u;
        case Variable::w: return W.u1 - W.u2;
        case Variable::p: return mixture(W, eos).p;
    }
    return 0.0;
}

std::vector<double> exact_cell_averages(const ExactSolution& sol, const Grid& grid, double x0,
                                        double t, Variable v, int points) {
    std::vector<double> out(grid.n_cells);
    const double dx = grid.dx();
    auto at = [&](double x) {
        double xi;
        if (t > 0.0)
            xi = (x - x0) / t;
        else
            xi = x < x0 ? -std::numeric_limits<double>::max() : std::numeric_limits<double>::max();
        return value_of(sample_solution(sol, xi), v, sol.eos);
    };
    for (int i = 0; i < grid.n_cells; ++i) {
        const double a = grid.x_min + i * dx;
        double acc = 0.0;
        for (int q = 0; q < points; ++q) acc += at(a + (q + 0.5) * dx / points);
        out[i] = acc / points;
    }
    return out;
}

double l1_error(const SimulationResult& r, const ExactSolution& sol, double x0, Variable v, double a,
                double b) {
    const std::vector<double> ex = exact_cell_averages(sol, r.grid, x0, r.time, v);
    const double dx = r.grid.dx();
    double err = 0.0;
    for (int i = 0; i < r.grid.n_cells; ++i) {
        const double x = r.grid.center(i);
        if (a < b && (x < a || x > b)) continue;
        err += std::abs(value_of(r.cells[i], v, sol.eos) - ex[i]) * dx;
    }
    return err;
}

namespace {

void require_same_grid(const SimulationResult& a, const SimulationResult& b) {
    if (a.grid.n_cells != b.grid.n_cells || a.grid.x_min != b.grid.x_min || a.grid.x_max != b.grid.x_max)
        fail(ErrorKind::config, "cannot compare runs on different grids");
}

}  // namespace

double l1_difference(const SimulationResult& a, const SimulationResult& b, Variable v,
                     const EosPair& eos) {
    require_same_grid(a, b);
    double d = 0.0;
    for (int i = 0; i < a.grid.n_cells; ++i)
        d += std::abs(value_of(a.cells[i], v, eos) - value_of(b.cells[i], v, eos));
    return d * a.grid.dx();
}

double linf_difference(const SimulationResult& a, const SimulationResult& b, Variable v,
                       const EosPair& eos) {
    require_same_grid(a, b);
    double d = 0.0;
    for (int i = 0; i < a.grid.n_cells; ++i)
        d = std::max(d, std::abs(value_of(a.cells[i], v, eos) - value_of(b.cells[i], v, eos)));
    return d;
}

}  // namespace tpr
