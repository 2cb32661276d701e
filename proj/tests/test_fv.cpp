#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "support.hpp"
#include "tpr/errors.hpp"
#include "tpr/fv.hpp"

using namespace tpr;
using testing_support::random_ideal_pair;
using testing_support::random_state;
using testing_support::rel;
using testing_support::Rng;

namespace {

double spectral_radius(const Primitive& W, const EosPair& eos) {
    const auto ev = Eigen::EigenSolver<Mat5>(jacobian_primitive(W, eos), false).eigenvalues();
    double s = 0.0;
    for (int k = 0; k < 5; ++k) s = std::max(s, std::abs(ev(k).real()));
    return s;
}

double vmax_diff(const Vec5& a, const Vec5& b) {
    double d = 0.0;
    for (int k = 0; k < 5; ++k) d = std::max(d, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
    return d;
}

// Bisection on p1(m1/a) = p2(m2/(1-a)).
double equilibrium_alpha_bisection(double m1, double m2, const EosPair& eos) {
    double lo = 1e-14, hi = 1.0 - 1e-14;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double gap = eos.phase1.pressure(m1 / mid) - eos.phase2.pressure(m2 / (1.0 - mid));
        (gap > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SolverConfig short_run(Scheme s, double t_end) {
    SolverConfig cfg;
    cfg.scheme = s;
    cfg.t_end = t_end;
    return cfg;
}

}  // namespace

TEST_CASE("max wave speed is the spectral radius of the Jacobian") {
    Rng rng(41);
    for (int n = 0; n < 1000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        REQUIRE(std::abs(max_wave_speed(W, eos) - spectral_radius(W, eos)) < 1e-9 * velocity_scale(W, eos));
    }
}

TEST_CASE("numerical fluxes are consistent") {
    Rng rng(42);
    for (int n = 0; n < 1000; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Vec5 U = to_conserved(random_state(rng));
        const Vec5 F = physical_flux(U, eos);
        REQUIRE(vmax_diff(rusanov_flux(U, U, eos), F) < 1e-13);
        REQUIRE(vmax_diff(force_flux(U, U, 0.01, 0.001, eos), F) < 1e-13);
    }
}

TEST_CASE("Rusanov flux is the central flux minus the largest-speed dissipation") {
    Rng rng(43);
    for (int n = 0; n < 500; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive WL = random_state(rng), WR = random_state(rng);
        const Vec5 UL = to_conserved(WL), UR = to_conserved(WR);
        const double s = std::max(spectral_radius(WL, eos), spectral_radius(WR, eos));
        const Vec5 FL = physical_flux(UL, eos), FR = physical_flux(UR, eos), F = rusanov_flux(UL, UR, eos);
        for (int k = 0; k < 5; ++k) {
            const double expected = 0.5 * (FL[k] + FR[k]) - 0.5 * s * (UR[k] - UL[k]);
            REQUIRE(std::abs(F[k] - expected) < 1e-8 * (1.0 + std::abs(expected)));
        }
        // swapping the states and negating the flux direction is the same interface seen mirrored
        const Vec5 G = rusanov_flux(UR, UL, eos);
        for (int k = 0; k < 5; ++k) {
            const double central = 0.5 * (FL[k] + FR[k]);
            REQUIRE(std::abs((F[k] - central) + (G[k] - central)) < 1e-10 * (1.0 + std::abs(central) + s * std::abs(UR[k] - UL[k])));
        }
    }
}

TEST_CASE("FORCE is the mean of the Lax-Friedrichs and Richtmyer fluxes") {
    const EosPair eos = ideal_pair();
    const Vec5 UL = to_conserved({0.6, 1.3, 0.9, 0.2, -0.1}), UR = to_conserved({0.4, 0.8, 1.1, -0.3, 0.05});
    const double dx = 0.01, dt = 0.002;
    const Vec5 FL = physical_flux(UL, eos), FR = physical_flux(UR, eos);
    Vec5 mid;
    for (int k = 0; k < 5; ++k) mid[k] = 0.5 * (UL[k] + UR[k]) - 0.5 * dt / dx * (FR[k] - FL[k]);
    const Vec5 FM = physical_flux(mid, eos), F = force_flux(UL, UR, dx, dt, eos);
    for (int k = 0; k < 5; ++k) {
        const double lf = 0.5 * (FL[k] + FR[k]) - 0.5 * dx / dt * (UR[k] - UL[k]);
        CHECK(F[k] == doctest::Approx(0.5 * (lf + FM[k])).epsilon(1e-12));
    }
}

TEST_CASE("slope limiters") {
    for (Limiter l : {Limiter::minmod, Limiter::barth, Limiter::superbee}) {
        CAPTURE(to_string(l));
        CHECK(limit_slope(l, 1.0, -2.0) == 0.0);
        CHECK(limit_slope(l, 0.0, 3.0) == 0.0);
        CHECK(limit_slope(l, 2.0, 2.0) == doctest::Approx(2.0));
        CHECK(limit_slope(l, -1.0, -3.0) == doctest::Approx(-limit_slope(l, 1.0, 3.0)));
        CHECK(parse_limiter(to_string(l)) == l);
    }
    CHECK(limit_slope(Limiter::minmod, 1.0, 3.0) == doctest::Approx(1.0));
    CHECK(limit_slope(Limiter::superbee, 1.0, 3.0) >= limit_slope(Limiter::minmod, 1.0, 3.0));
    CHECK_THROWS_AS(parse_limiter("vanleer"), Error);
}

TEST_CASE("uniform data stays uniform under every scheme") {
    const EosPair eos = ideal_pair();
    const Primitive W{0.3, 1.2, 0.7, 0.4, -0.2};
    for (Scheme s : {Scheme::muscl_rusanov, Scheme::force_godunov, Scheme::muscl_pathcons_bn}) {
        CAPTURE(to_string(s));
        const SimulationResult r = run_simulation({W, W, 0.0}, {-1.0, 1.0, 100}, short_run(s, 0.1), eos);
        for (const Primitive& c : r.cells) {
            REQUIRE(std::abs(c.alpha1 - W.alpha1) < 1e-13);
            REQUIRE(std::abs(c.rho1 - W.rho1) < 1e-13);
            REQUIRE(std::abs(c.u2 - W.u2) < 1e-13);
        }
    }
}

TEST_CASE("conservation ledgers close for the conservative schemes") {
    const Preset& p = preset("RP2");
    const auto [L, R] = consistent_initial_data(p);
    for (Scheme s : {Scheme::muscl_rusanov, Scheme::force_godunov}) {
        CAPTURE(to_string(s));
        const SimulationResult r = run_simulation({L, R, p.x0}, {p.x_min, p.x_max, 200}, short_run(s, p.t_end), p.eos);
        CHECK(r.time == doctest::Approx(p.t_end));
        CHECK(r.ledger.size() > 2);
        CHECK(r.max_ledger_error < 1e-12);
    }
}

TEST_CASE("relaxation keeps partial masses and mixture momentum") {
    Rng rng(44);
    for (int n = 0; n < 500; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Vec5 U = to_conserved(random_state(rng));
        const double dt = rng.log_uniform(1e-4, 1e-1);
        const Vec5 out = relax_conserved(U, dt, rng.log_uniform(1e-3, 1.0), rng.log_uniform(1e-3, 1.0), eos);
        for (int k : {1, 2, 3}) REQUIRE(out[k] == U[k]);
        REQUIRE(is_valid(to_primitive(out)));
        // the slip decays, never changes sign
        REQUIRE(std::abs(out[4]) <= std::abs(U[4]));
        REQUIRE(out[4] * U[4] >= 0.0);

        const Primitive W = random_state(rng);
        const Vec5 V = to_bn(W);
        const Vec5 vb = relax_bn(V, dt, 1e-2, 1e-2, eos);
        REQUIRE(vb[1] == V[1]);
        REQUIRE(vb[2] == V[2]);
        REQUIRE(std::abs((vb[3] + vb[4]) - (V[3] + V[4])) <= 1e-14 * (std::abs(V[3]) + std::abs(V[4])));
    }
}

TEST_CASE("stiff relaxation projects to pressure and velocity equilibrium") {
    Rng rng(45);
    for (int n = 0; n < 500; ++n) {
        const EosPair eos = random_ideal_pair(rng);
        const Primitive W = random_state(rng);
        const Vec5 out = relax_conserved(to_conserved(W), 1e-3, 1e-12, 1e-12, eos);
        const Primitive E = to_primitive(out);
        const double p1 = eos.phase1.pressure(E.rho1), p2 = eos.phase2.pressure(E.rho2);
        REQUIRE(std::abs(p1 - p2) / std::max(std::abs(p1), std::abs(p2)) < 1e-10);
        REQUIRE(E.u1 == E.u2);
        const double m1 = W.alpha1 * W.rho1, m2 = W.alpha2() * W.rho2;
        REQUIRE(std::abs(equilibrium_alpha(m1, m2, eos) - equilibrium_alpha_bisection(m1, m2, eos)) < 1e-12);
    }
}

TEST_CASE("an equilibrium state is a fixed point of relaxation") {
    const EosPair eos = ideal_pair();
    const double m1 = 0.4, m2 = 0.9;
    const double a = equilibrium_alpha(m1, m2, eos);
    const Primitive W{a, m1 / a, m2 / (1.0 - a), 0.3, 0.3};
    const Vec5 U = to_conserved(W);
    const Vec5 out = relax_conserved(U, 0.01, 1e-3, 1e-3, eos);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(out[k] - U[k]) < 1e-13);
}

TEST_CASE("at constant volume fraction the BN phases do not interact") {
    const EosPair eos = ideal_pair();
    // same phase 1 data; phase 2 flows the other way, which leaves every wave speed magnitude unchanged
    const Primitive L1{0.4, 1.5, 1.0, 0.0, 0.5}, R1{0.4, 0.6, 1.0, 0.0, 0.5};
    const Primitive L2{0.4, 1.5, 1.0, 0.0, -0.5}, R2{0.4, 0.6, 1.0, 0.0, -0.5};
    const SolverConfig cfg = short_run(Scheme::muscl_pathcons_bn, 0.2);
    const Grid g{-1.0, 1.0, 200};
    const SimulationResult a = run_simulation({L1, R1, 0.0}, g, cfg, eos);
    const SimulationResult b = run_simulation({L2, R2, 0.0}, g, cfg, eos);
    REQUIRE(a.steps > 0);
    REQUIRE(a.steps == b.steps);
    for (size_t i = 0; i < a.cells.size(); ++i) {
        REQUIRE(a.cells[i].alpha1 == doctest::Approx(0.4).epsilon(1e-14));
        REQUIRE(std::abs(a.cells[i].rho1 - b.cells[i].rho1) < 1e-12);
        REQUIRE(std::abs(a.cells[i].u1 - b.cells[i].u1) < 1e-12);
    }
}

TEST_CASE("run edge cases") {
    const EosPair eos = ideal_pair();
    const Primitive L{0.5, 1.0, 1.0, 0.0, 0.0}, R{0.5, 0.5, 0.5, 0.0, 0.0};
    const SimulationResult zero = run_simulation({L, R, 0.0}, {-1.0, 1.0, 10}, short_run(Scheme::muscl_rusanov, 0.0), eos);
    CHECK(zero.steps == 0);
    CHECK(zero.cells.front() == L);
    CHECK(zero.cells.back() == R);

    const SimulationResult a = run_simulation({L, R, 0.0}, {-1.0, 1.0, 10}, short_run(Scheme::muscl_rusanov, 0.05), eos);
    const SimulationResult b = run_simulation({L, R, 0.0}, {-1.0, 1.0, 20}, short_run(Scheme::muscl_rusanov, 0.05), eos);
    CHECK_THROWS_AS(l1_difference(a, b, Variable::rho, eos), Error);
    CHECK(l1_difference(a, a, Variable::rho, eos) == 0.0);
    CHECK_THROWS_AS((Grid{1.0, -1.0, 10}.validate()), Error);
    CHECK_THROWS_AS((Grid{-1.0, 1.0, 0}.validate()), Error);
}

TEST_CASE("exact cell averages of a constant are the constant") {
    const EosPair eos = ideal_pair();
    const Primitive W{0.5, 1.0, 1.0, 0.0, 0.0};
    const ExactSolution sol = build_solution(W, 0.5, {}, {}, eos);
    for (double v : exact_cell_averages(sol, {-1.0, 1.0, 20}, 0.0, 0.1, Variable::rho1)) CHECK(v == doctest::Approx(1.0));
}
