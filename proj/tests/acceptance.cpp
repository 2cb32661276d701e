// One PASS/FAIL line per acceptance criterion, with measured values underneath.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"
#include "tpr/errors.hpp"
#include "tpr/fv.hpp"
#include "tpr/models.hpp"
#include "tpr/presets.hpp"

using namespace tpr;
using testing_support::random_ideal_pair;
using testing_support::random_state;
using testing_support::rel;
using testing_support::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    int number;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, double a) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

double worst_residual(const ExactSolution& sol) {
    double worst = 0.0;
    for (const Element& e : sol.elements) {
        if (!e.is_discontinuity()) continue;
        if (e.kind == ElementKind::contact)
            worst = std::max(worst, max_abs(contact_residuals(e.left, e.right, sol.eos)));
        else
            worst = std::max(worst, max_abs(jump_residuals(e.left, e.right, e.xi_lo, sol.eos)));
    }
    return worst;
}

const Primitive& nearest_column(const Preset& p, const Primitive& W) {
    const TableColumn* best = &p.table.front();
    double dist = 1e300;
    for (const TableColumn& c : p.table) {
        double d = 0.0;
        for (int k = 0; k < 5; ++k) d += rel(c.state.as_column()[k] + 1e-300, W.as_column()[k] + 1e-300);
        if (d < dist) {
            dist = d;
            best = &c;
        }
    }
    return best->state;
}

// Residuals of the printed states across every discontinuity of the construction.
double printed_residual(const Preset& p, const ExactSolution& sol, const EosPair& eos) {
    double worst = 0.0;
    for (const Element& e : sol.elements) {
        if (!e.is_discontinuity()) continue;
        const Primitive& a = nearest_column(p, e.left);
        const Primitive& b = nearest_column(p, e.right);
        if (e.kind == ElementKind::contact)
            worst = std::max(worst, max_abs(contact_residuals(a, b, eos)));
        else
            worst = std::max(worst, max_abs(jump_residuals(a, b, e.xi_lo, eos)));
    }
    return worst;
}

Criterion golden_states() {
    Criterion c{1, "golden-state reproduction of the printed tables"};
    const auto t0 = Clock::now();
    for (const char* name : {"RP1", "RP2", "RP3", "RP4"}) {
        const Preset& p = preset(name);
        const ExactSolution sol = exact_solution(p);
        const auto checks = compare_with_table(p, sol);
        std::set<std::string> bad;
        double worst = 0.0;
        for (const auto& e : checks) {
            worst = std::max(worst, e.error);
            if (e.error >= table_tol) bad.insert(e.column);
        }
        std::string cols;
        for (const auto& b : bad) cols += " " + b;
        c.check(bad.empty(), std::string(name) + fmt(": worst relative entry error %.2e", worst) +
                                 (bad.empty() ? "" : ", columns over 1e-4:" + cols));
        const double res = worst_residual(sol);
        c.check(res < 1e-8, std::string(name) + fmt(": worst scaled jump residual %.2e", res));
    }
    // sign of B2: the printed value with both signs, judged by the printed states' residuals
    for (const char* name : {"RP3", "RP4"}) {
        const Preset& p = preset(name);
        const ExactSolution sol = exact_solution(p);
        const double B = std::abs(p.eos.phase2.B);
        const double plus = printed_residual(p, sol, liquid_gas_pair(B));
        const double minus = printed_residual(p, sol, liquid_gas_pair(-B));
        c.note(std::string(name) + fmt(": printed-state residual with +B2 %.3e, with -B2 %.3e", plus, minus) +
               (minus < plus ? " (keeps -B2)" : " (keeps +B2)"));
    }
    const double secs = seconds_since(t0);
    c.check(secs < 1.0, fmt("runtime %.3f s", secs));
    return c;
}

// ---------------------------------------------------------------- criterion 2

Criterion eigenstructure_suite() {
    Criterion c{2, "eigenstructure suite at 10^4 random states"};
    const auto t0 = Clock::now();
    Rng rng(2024);
    double ev_err = 0.0, vec_res = 0.0, ld = 0.0, gnl = 0.0;
    int skipped = 0;
    for (int n = 0; n < 10000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        const Mat5 A = jacobian_primitive(W, eos);
        const Eigenstructure E = eigenstructure(W, eos);
        const double scale = velocity_scale(W, eos);

        auto ev = Eigen::EigenSolver<Mat5>(A, false).eigenvalues();
        std::array<double, 5> oracle{}, mine = E.lambda;
        for (int k = 0; k < 5; ++k) oracle[k] = ev(k).real();
        std::sort(oracle.begin(), oracle.end());
        std::sort(mine.begin(), mine.end());
        for (int k = 0; k < 5; ++k) ev_err = std::max(ev_err, std::abs(mine[k] - oracle[k]) / scale);

        if (!check_resonance(W, eos).empty()) {
            ++skipped;
            continue;
        }
        for (Family f : all_families) {
            const Col5& R = E.right[index(f)];
            vec_res = std::max(vec_res, (A * R - E.lambda[index(f)] * R).norm() / (A.norm() * R.norm()));
            const double h = 1e-6;
            const double fd = (eigenvalue(Primitive::from_column(W.as_column() + h * R), f, eos) -
                               eigenvalue(Primitive::from_column(W.as_column() - h * R), f, eos)) / (2.0 * h);
            if (f == Family::contact) {
                ld = std::max(ld, std::abs(fd) / scale);
            } else {
                const int k = phase_of(f);
                const double rho = W.rho(k);
                const double expected = direction_of(f) * eos[k].sound_speed(rho) * eos[k].fundamental_derivative(rho) / rho;
                gnl = std::max(gnl, rel(fd, expected));
            }
        }
    }
    c.check(ev_err < 1e-10, fmt("eigenvalues vs general eigensolve: worst %.2e (scaled by max(|u|, a))", ev_err));
    c.check(vec_res < 1e-9, fmt("A R = lambda R: worst relative residual %.2e", vec_res));
    c.check(ld < 1e-6, fmt("contact field grad(lambda).R by finite differences: worst %.2e", ld));
    c.check(gnl < 1e-6, fmt("acoustic fields grad(lambda).R = +-a G / rho: worst relative error %.2e", gnl));
    c.note(fmt("%.0f states at a resonance skipped for eigenvector checks", skipped));
    const double secs = seconds_since(t0);
    c.check(secs < 30.0, fmt("runtime %.2f s", secs));
    return c;
}

// ---------------------------------------------------------------- criterion 3

using CharSet = std::set<std::pair<int, int>>;

CharSet as_set(const std::vector<Characteristic>& v) {
    CharSet s;
    for (const auto& ch : v) s.insert({index(ch.family), ch.side == Side::left ? 0 : 1});
    return s;
}

// "1-^-" style names into a set
CharSet parse_set(std::initializer_list<const char*> names) {
    CharSet s;
    for (std::string n : names) {
        const auto hat = n.find('^');
        s.insert({index(parse_family(n.substr(0, hat))), n.substr(hat + 1) == "-" ? 0 : 1});
    }
    return s;
}

bool census_is(const CharacteristicCensus& c, std::initializer_list<const char*> in,
               std::initializer_list<const char*> co, std::initializer_list<const char*> out) {
    return as_set(c.incoming) == parse_set(in) && as_set(c.coinciding) == parse_set(co) &&
           as_set(c.outgoing) == parse_set(out);
}

bool lax_for(const Primitive& m, const Primitive& p, double S, Family f, const EosPair& eos) {
    return eigenvalue(m, f, eos) > S && S > eigenvalue(p, f, eos);
}

// Host-phase share of the energy production across a jump with mass flux Q.
double host_production(const Eos& e, double rho_minus, double rho_plus, double Q) {
    const double jump = e.psi(rho_plus) - e.psi(rho_minus) + 0.5 * Q * Q * (1.0 / (rho_plus * rho_plus) - 1.0 / (rho_minus * rho_minus));
    return -Q * jump;
}

Criterion case_law() {
    Criterion c{3, "admissibility case law"};
    const EosPair eos = ideal_pair();

    {  // shock moving with the mixture velocity
        const Primitive W{0.5, 1.0, 1.0, 0.5, -4.0};
        const double S = mixture(W, eos).u;
        const Primitive P = shock_connect_branches(W, 1, S, eos, Branch::supersonic_high, Branch::supersonic_high).state;
        const auto census = classify_discontinuity(W, P, S, eos);
        const bool built = max_abs(jump_residuals(W, P, S, eos)) < 1e-8 && lax_for(W, P, S, Family::one_minus, eos) &&
                           std::abs(mixture(P, eos).u - S) < 1e-10;
        const bool sets = census_is(census, {"1-^-", "1-^+", "1+^-", "2-^+"}, {"C^-", "C^+"}, {"1+^+", "2-^-", "2+^-", "2+^+"});
        bool refused = false;
        try {
            shock_connect(W, Family::one_minus, S, eos, Side::left);
        } catch (const Error& e) {
            refused = e.kind() == ErrorKind::inadmissible_wave;
        }
        c.check(built && sets && !census.evolutionary && refused,
                "1- shock with u = S: " + describe(census) + (refused ? ", refused by shock_connect" : ""));
    }
    {  // case (ii): the shock sits strictly inside the host fan
        const Primitive M{0.5, 1.0, 1.0, 0.5, 0.0};
        const double S = eigenvalue(M, Family::one_minus, eos) - 0.2;
        const Primitive P = shock_connect_branches(M, 1, S, eos, Branch::supersonic_high, Branch::subsonic_low).state;
        const auto census = classify_discontinuity(M, P, S, eos);
        const bool built = max_abs(jump_residuals(M, P, S, eos)) < 1e-8;
        const bool kind = classify_interior_shock(M, P, S, Family::two_minus, eos) == InteriorCase::ii;
        const bool sets = census_is(census, {"1-^-", "1-^+", "1+^-", "2+^-", "C^-"}, {}, {"2-^-", "2-^+", "2+^+", "1+^+", "C^+"});
        c.check(built && kind && sets && !census.evolutionary, "case (ii): " + describe(census));
    }
    {  // case (iii): host characteristic coincides with the shock on the downstream side
        const Primitive P{0.5, 1.0, 1.0, -0.5, 0.0};
        const double S = eigenvalue(P, Family::two_minus, eos);
        const Primitive M = shock_connect(P, Family::one_minus, S, eos, Side::right).state;
        const auto census = classify_discontinuity(M, P, S, eos);
        const bool built = max_abs(jump_residuals(M, P, S, eos)) < 1e-8 && lax_for(M, P, S, Family::one_minus, eos);
        const bool kind = classify_interior_shock(M, P, S, Family::two_minus, eos) == InteriorCase::iii;
        const bool sets = census_is(census, {"1-^-", "1-^+", "1+^-", "2+^-", "C^-"}, {"2-^+"}, {"1+^+", "2-^-", "2+^+", "C^+"});
        const double ep = entropy_production(M, P, S, eos);
        const double host = host_production(eos.phase2, M.rho2, P.rho2, -P.rho2 * eos.phase2.sound_speed(P.rho2));
        c.check(built && kind && sets && census.evolutionary && ep < 0.0 && host < 0.0,
                "case (iii): " + describe(census) + fmt(", entropy production %.3e, host-phase share %.3e", ep, host));
    }
    {  // case (iv): host characteristic coincides on the upstream side
        const std::vector<Primitive> sonic_left = {{0.5, 1.0, 1.0, 0.5, 0.0}, {0.5, 1.0, 1.0, 1.0, 0.0},
                                                   {0.2, 3.0, 0.5, 2.0, 0.0}, {0.8, 0.3, 2.0, 1.5, 0.0}};
        int found = 0;
        double min_host = 1e300;
        for (const Primitive& M : sonic_left) {
            const double S = eigenvalue(M, Family::two_minus, eos);
            for (Branch b : {Branch::subsonic_low, Branch::supersonic_high}) {
                try {
                    const Primitive P = shock_connect_branches(M, 1, S, eos, Branch::automatic, b).state;
                    if (classify_interior_shock(M, P, S, Family::two_minus, eos) == InteriorCase::iv &&
                        lax_for(M, P, S, Family::one_minus, eos))
                        ++found;
                } catch (const Error&) {
                }
            }
            // the host phase leaves the sonic point toward lower density
            const double Q = -M.rho2 * eos.phase2.sound_speed(M.rho2);
            for (int k = 5; k < 100; ++k)
                min_host = std::min(min_host, host_production(eos.phase2, M.rho2, M.rho2 * k / 100.0, Q));
        }
        c.check(found == 0 && min_host > 0.0,
                fmt("case (iv): %.0f jump-connected instances found; host-phase energy production over the case range >= %.3e (rejected)",
                    double(found), min_host));
    }
    {  // two shocks of the same direction at one speed
        const Primitive M{0.5, 1.0, 1.0, 2.0, 2.5};
        const double S = 0.5;
        const Primitive P = shock_connect_branches(M, 1, S, eos, Branch::supersonic_high, Branch::supersonic_high).state;
        const auto census = classify_discontinuity(M, P, S, eos);
        const bool built = max_abs(jump_residuals(M, P, S, eos)) < 1e-8 && lax_for(M, P, S, Family::one_minus, eos) &&
                           lax_for(M, P, S, Family::two_minus, eos);
        const bool sets = census_is(census, {"1-^-", "1-^+", "2-^-", "2-^+", "1+^-", "2+^-", "C^-"}, {}, {"1+^+", "2+^+", "C^+"});
        c.check(built && sets && !census.evolutionary, "resonance 1-/2-: " + describe(census));
    }
    {  // opposite directions at one speed
        const Primitive M{0.5, 1.0, 1.0, 2.0, -0.5};
        const double S = 0.5;
        const Primitive P = shock_connect_branches(M, 1, S, eos, Branch::supersonic_high, Branch::subsonic_low).state;
        const auto census = classify_discontinuity(M, P, S, eos);
        const bool built = max_abs(jump_residuals(M, P, S, eos)) < 1e-8 && lax_for(M, P, S, Family::one_minus, eos) &&
                           lax_for(M, P, S, Family::two_plus, eos);
        const bool sets = census_is(census, {"1-^-", "1-^+", "2+^-", "2+^+", "1+^-", "2-^+", "C^-"}, {}, {"1+^+", "2-^-", "C^+"});
        c.check(built && sets && !census.evolutionary, "resonance 1-/2+: " + describe(census));
    }
    return c;
}

// ---------------------------------------------------------------- criteria 4 and 5

SimulationResult run(const Preset& p, int cells, Scheme scheme, double theta1, double theta2, double& secs) {
    const auto [L, R] = consistent_initial_data(p);
    SolverConfig cfg;
    cfg.t_end = p.t_end;
    cfg.cfl = p.cfl;
    cfg.scheme = scheme;
    cfg.theta1 = theta1;
    cfg.theta2 = theta2;
    const auto t0 = Clock::now();
    SimulationResult r = run_simulation({L, R, p.x0}, {p.x_min, p.x_max, cells}, cfg, p.eos);
    secs = seconds_since(t0);
    return r;
}

// Widest fan of the solution, trimmed by a fifth of its width on each side, in x.
std::pair<double, double> smooth_window(const Preset& p, const ExactSolution& sol) {
    const Element* widest = nullptr;
    for (const Element& e : sol.elements)
        if (e.kind == ElementKind::fan && (!widest || e.xi_hi - e.xi_lo > widest->xi_hi - widest->xi_lo)) widest = &e;
    const double w = widest->xi_hi - widest->xi_lo;
    const double a = widest->xi_lo + 0.2 * w, b = widest->xi_hi - 0.2 * w;
    // stay clear of any discontinuity inside the fan
    double lo = a, hi = b;
    for (const Element& e : sol.elements)
        if (e.is_discontinuity() && e.xi_lo > a && e.xi_lo < b) {
            if (e.xi_lo - a > b - e.xi_lo) hi = std::min(hi, e.xi_lo - 0.1 * w);
            else lo = std::max(lo, e.xi_lo + 0.1 * w);
        }
    return {p.x0 + lo * p.t_end, p.x0 + hi * p.t_end};
}

Criterion convergence(double& worst_ledger) {
    Criterion c{4, "exact-vs-numerical convergence (MUSCL-Hancock + Rusanov, mixture density)"};
    const double off = relaxation_off;
    for (const char* name : {"RP1", "RP3", "RP5"}) {
        const Preset& p = preset(name);
        const ExactSolution sol = exact_solution(p);
        const auto [a, b] = smooth_window(p, sol);
        std::vector<double> global, smooth;
        double slowest = 0.0;
        for (int n : {500, 1000, 2000}) {
            double secs = 0.0;
            const SimulationResult r = run(p, n, Scheme::muscl_rusanov, off, off, secs);
            worst_ledger = std::max(worst_ledger, r.max_ledger_error);
            slowest = std::max(slowest, secs);
            global.push_back(l1_error(r, sol, p.x0, Variable::rho));
            smooth.push_back(l1_error(r, sol, p.x0, Variable::rho, a, b));
        }
        const bool monotone = global[0] > global[1] && global[1] > global[2];
        const double g1 = std::log2(global[0] / global[1]), g2 = std::log2(global[1] / global[2]);
        const double s1 = std::log2(smooth[0] / smooth[1]), s2 = std::log2(smooth[1] / smooth[2]);
        c.check(monotone, std::string(name) + fmt(": L1 errors %.3e, %.3e, %.3e", global[0], global[1], global[2]));
        c.check(g1 >= 0.8 && g2 >= 0.8, std::string(name) + fmt(": global orders %.2f, %.2f", g1, g2));
        c.check(s1 >= 1.5 && s2 >= 1.5,
                std::string(name) + fmt(": orders on the fan interior x in [%.6g, %.6g]: ", a, b) + fmt("%.2f, %.2f", s1, s2));
        c.check(slowest < 120.0, std::string(name) + fmt(": 2000-cell run %.2f s", slowest));
    }
    return c;
}

Criterion model_comparison(double& worst_ledger) {
    Criterion c{5, "SHTC vs Baer-Nunziato at 2000 cells"};
    const double off = relaxation_off;
    const Preset& rp5 = preset("RP5");
    const Preset& rp6 = preset("RP6");
    double secs = 0.0;
    const SimulationResult ref_run = run(rp5, 2000, Scheme::muscl_rusanov, off, off, secs);
    const double reference = l1_error(ref_run, exact_solution(rp5), rp5.x0, Variable::rho);
    c.note(fmt("reference: RP5 homogeneous SHTC vs exact L1(rho) = %.4e", reference));

    struct Case {
        const Preset* p;
        bool relaxed;
        bool expect_agree;
    };
    for (const Case& k : {Case{&rp5, false, true}, Case{&rp6, false, false}, Case{&rp5, true, true}, Case{&rp6, true, true}}) {
        const double t1 = k.relaxed ? 1e-3 : off, t2 = k.relaxed ? 1e-8 : off;
        const SimulationResult a = run(*k.p, 2000, Scheme::muscl_rusanov, t1, t2, secs);
        const SimulationResult b = run(*k.p, 2000, Scheme::muscl_pathcons_bn, t1, t2, secs);
        worst_ledger = std::max({worst_ledger, a.max_ledger_error});
        const double diff = l1_difference(a, b, Variable::rho, k.p->eos);
        const double ratio = diff / reference;
        const std::string label = k.p->name + (k.relaxed ? " relaxed" : " homogeneous");
        if (k.expect_agree)
            c.check(ratio < 3.0, label + fmt(": L1(rho) difference %.4e = %.2f x reference (needs < 3)", diff, ratio));
        else
            c.check(ratio > 10.0, label + fmt(": L1(rho) difference %.4e = %.2f x reference (needs > 10)", diff, ratio));
        if (!k.expect_agree) {
            // where the difference sits: share of it within five cells of a shock
            const ExactSolution sol = exact_solution(*k.p);
            double near = 0.0, total = 0.0;
            for (int i = 0; i < a.grid.n_cells; ++i) {
                const double x = a.grid.center(i);
                const double d = std::abs(value_of(a.cells[i], Variable::rho, k.p->eos) - value_of(b.cells[i], Variable::rho, k.p->eos));
                total += d;
                for (const Element& e : sol.elements)
                    if (e.kind == ElementKind::shock && std::abs(x - (k.p->x0 + e.xi_lo * k.p->t_end)) < 5.0 * a.grid.dx()) {
                        near += d;
                        break;
                    }
            }
            c.note(label + fmt(": %.0f%% of the difference lies within five cells of a shock", 100.0 * near / total));
        }
        if (k.relaxed) {
            const auto ka = kapila_limit_diagnostics(a.cells, k.p->eos);
            const auto kb = kapila_limit_diagnostics(b.cells, k.p->eos);
            c.check(ka.slip_max < 1e-6 && kb.slip_max < 1e-6,
                    label + fmt(": Kapila slip norm SHTC %.2e, BN %.2e", ka.slip_max, kb.slip_max));
        }
    }
    return c;
}

// ---------------------------------------------------------------- criterion 6

Criterion conservation(double worst_ledger) {
    Criterion c{6, "conservation and relaxation invariants"};
    c.check(worst_ledger < 1e-12, fmt("worst per-step ledger closure over the SHTC runs above %.2e", worst_ledger));
    Rng rng(606);
    bool exact_masses = true;
    double momentum = 0.0, projection = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        const Vec5 U = to_conserved(W);
        const Vec5 out = relax_conserved(U, rng.log_uniform(1e-4, 1e-1), rng.log_uniform(1e-4, 1.0), rng.log_uniform(1e-8, 1.0), eos);
        exact_masses = exact_masses && out[1] == U[1] && out[2] == U[2] && out[3] == U[3];
        const Vec5 V = to_bn(W);
        const Vec5 vb = relax_bn(V, 1e-2, 1e-3, 1e-3, eos);
        exact_masses = exact_masses && vb[1] == V[1] && vb[2] == V[2];
        momentum = std::max(momentum, std::abs(vb[3] + vb[4] - V[3] - V[4]) / (std::abs(V[3]) + std::abs(V[4])));
        const Primitive E = to_primitive(relax_conserved(U, 1e-3, 1e-12, 1e-12, eos));
        const double p1 = eos.phase1.pressure(E.rho1), p2 = eos.phase2.pressure(E.rho2);
        projection = std::max(projection, std::abs(p1 - p2) / std::max(std::abs(p1), std::abs(p2)));
    }
    c.check(exact_masses, "relaxation leaves partial masses and SHTC mixture momentum bitwise unchanged");
    c.check(momentum < 1e-14, fmt("BN relaxation mixture momentum change, worst relative %.2e", momentum));
    c.check(projection < 1e-10, fmt("stiff projection |p1 - p2| / max, worst %.2e", projection));
    return c;
}

// ---------------------------------------------------------------- criterion 7

Criterion algebra() {
    Criterion c{7, "algebraic identities"};
    Rng rng(707);
    double bc = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        bc = std::max(bc, (bn_to_shtc_matrix(W, eos) * shtc_to_bn_matrix(W, eos) - Mat5::Identity()).cwiseAbs().maxCoeff());
    }
    c.check(bc < 1e-12, fmt("B C - I at 1000 states: worst entry %.2e", bc));

    double trip = 0.0, flux = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        const Col5 a = W.as_column(), b = to_primitive(to_conserved(W)).as_column();
        for (int k = 0; k < 5; ++k) trip = std::max(trip, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
        const Vec5 f = physical_flux(to_conserved(W), eos), g = physical_flux_primitive(W, eos);
        for (int k = 0; k < 5; ++k) flux = std::max(flux, std::abs(f[k] - g[k]) / std::max(1.0, std::abs(g[k])));
    }
    c.check(trip < 1e-13, fmt("primitive/conserved round trip: worst %.2e", trip));
    c.check(flux < 1e-12, fmt("conserved vs primitive flux assembly: worst %.2e", flux));

    // mass-flux matrix across shocks: both densities jump, so det(M) != 0 and the squares come back
    int shocks = 0, singular = 0;
    double q_err = 0.0;
    for (int n = 0; n < 2000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        const Family f = acoustic_families[rng.integer(0, 3)];
        const int k = phase_of(f);
        const double S = eigenvalue(W, f, eos) - direction_of(f) * rng.uniform(0.05, 0.5) * eos[k].sound_speed(W.rho(k));
        ShockResult r;
        try {
            r = shock_connect(W, f, S, eos, direction_of(f) > 0 ? Side::right : Side::left);
        } catch (const Error&) {
            continue;
        }
        const Primitive& minus = direction_of(f) > 0 ? r.state : W;
        const Primitive& plus = direction_of(f) > 0 ? W : r.state;
        ++shocks;
        try {
            const MassFluxSystem M = shock_mass_flux_system(minus, plus, minus.alpha1, eos);
            if (M.det == 0.0) ++singular;
            const double q1 = minus.rho1 * (minus.u1 - S), q2 = minus.rho2 * (minus.u2 - S);
            q_err = std::max(q_err, std::abs(M.Q1_sq - q1 * q1) / std::max(1.0, q1 * q1));
            q_err = std::max(q_err, std::abs(M.Q2_sq - q2 * q2) / std::max(1.0, q2 * q2));
        } catch (const Error&) {
            ++singular;
        }
    }
    c.check(shocks > 1000 && singular == 0,
            fmt("det(M) nonzero across %.0f random shocks (%.0f singular); worst Q^2 error %.2e", shocks, singular, q_err));
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    double worst_ledger = 0.0;
    const std::vector<std::function<Criterion()>> steps = {
        golden_states,
        eigenstructure_suite,
        case_law,
        [&] { return convergence(worst_ledger); },
        [&] { return model_comparison(worst_ledger); },
        [&] { return conservation(worst_ledger); },
        algebra,
    };
    for (const auto& step : steps) {
        Criterion c;
        try {
            c = step();
        } catch (const Error& e) {
            c.pass = false;
            c.notes.push_back(std::string("FAIL exception: ") + e.what());
        }
        for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
        std::printf("%s criterion %d: %s\n", c.pass ? "PASS" : "FAIL", c.number, c.title.c_str());
        std::fflush(stdout);
        results.push_back(c);
    }
    int failed = 0;
    for (const auto& c : results) failed += !c.pass;
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
