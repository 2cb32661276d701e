#include "tpr/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "tpr/errors.hpp"

namespace tpr {

const char* to_string(WaveKind k) {
    switch (k) {
        case WaveKind::shock: return "shock";
        case WaveKind::rarefaction: return "rarefaction";
        case WaveKind::shock_in_rarefaction: return "shock_in_rarefaction";
    }
    return "?";
}

WaveKind parse_wave_kind(const std::string& text) {
    if (text == "shock") return WaveKind::shock;
    if (text == "rarefaction" || text == "fan") return WaveKind::rarefaction;
    if (text == "shock_in_rarefaction" || text == "shock-in-rarefaction")
        return WaveKind::shock_in_rarefaction;
    fail(ErrorKind::config, "unknown wave kind '" + text + "'");
}

WaveSpec WaveSpec::rarefaction(Family f, double outer_edge) {
    WaveSpec s;
    s.family = f;
    s.kind = WaveKind::rarefaction;
    s.speed = outer_edge;
    return s;
}

WaveSpec WaveSpec::shock(Family f, double S) {
    WaveSpec s;
    s.family = f;
    s.kind = WaveKind::shock;
    s.speed = S;
    return s;
}

WaveSpec WaveSpec::shock_in_rarefaction(Family host, double outer_edge, Family interior, double S) {
    WaveSpec s;
    s.family = host;
    s.kind = WaveKind::shock_in_rarefaction;
    s.speed = outer_edge;
    s.interior_family = interior;
    s.interior_speed = S;
    return s;
}

const char* to_string(ElementKind k) {
    switch (k) {
        case ElementKind::fan: return "fan";
        case ElementKind::shock: return "shock";
        case ElementKind::contact: return "contact";
    }
    return "?";
}

bool Element::affects_phase(int k) const {
    if (kind != ElementKind::fan) return true;
    return phase_of(family) == k;
}

std::string Element::label() const {
    std::ostringstream s;
    s.precision(8);
    s << to_string(family) << ' ' << to_string(kind);
    if (kind == ElementKind::fan)
        s << " [" << xi_lo << ", " << xi_hi << "]";
    else
        s << " at " << xi_lo;
    if (interior) s << " inside " << to_string(host) << " fan";
    return s.str();
}

namespace {

std::string wave_name(Side side, std::size_t index, const WaveSpec& spec) {
    std::ostringstream s;
    s.precision(10);
    s << (side == Side::left ? "left" : "right") << " wave " << index + 1 << " ("
      << to_string(spec.family) << ' ' << to_string(spec.kind) << ", speed " << spec.speed;
    if (spec.kind == WaveKind::shock_in_rarefaction)
        s << ", interior " << to_string(spec.interior_family) << " shock at "
          << spec.interior_speed;
    s << ")";
    return s.str();
}

double entropy_tolerance(const Primitive& a, const Primitive& b, double S, const EosPair& eos) {
    auto scale = [&](const Primitive& W) {
        const Mixture m = mixture(W, eos);
        const double v = std::abs(W.u1 - S) + eos.phase1.sound_speed(W.rho1);
        return std::abs(m.rho * (m.u - S)) * (std::abs(eos.phase1.psi(W.rho1)) + v * v);
    };
    return 1e-10 * std::max(scale(a), scale(b));
}

// Checks a discontinuity produced by the construction; throws on inadmissibility.
void admit_shock(const Element& el, const EosPair& eos, const std::string& name) {
    const double S = el.xi_lo;
    const double ent = entropy_production(el.left, el.right, S, eos);
    if (ent > entropy_tolerance(el.left, el.right, S, eos)) {
        std::ostringstream msg;
        msg << name << ": entropy production " << ent << " > 0 violates the energy inequality";
        fail(ErrorKind::construction, msg.str());
    }
    if (el.interior) {
        const InteriorCase c = classify_interior_shock(el.left, el.right, S, el.host, eos);
        if (c != InteriorCase::iii) {
            fail(ErrorKind::construction,
                 name + ": interior shock is case (" + to_string(c) + "), only case (iii) is admissible");
        }
    }
    const CharacteristicCensus census = classify_discontinuity(el.left, el.right, S, eos);
    if (!census.evolutionary)
        fail(ErrorKind::construction, name + ": not evolutionary: " + describe(census));
    if (lax_check(el.left, el.right, S, el.family, eos) == LaxClass::fails)
        fail(ErrorKind::construction, name + ": Lax inequalities fail");
}

Element make_fan(Family f, const Primitive& a, const Primitive& b, const EosPair& eos) {
    Element el;
    el.kind = ElementKind::fan;
    el.family = f;
    el.left = a;
    el.right = b;
    el.xi_lo = eigenvalue(a, f, eos);
    el.xi_hi = eigenvalue(b, f, eos);
    return el;
}

bool fan_is_trivial(const Element& el) {
    return std::abs(el.xi_hi - el.xi_lo) <=
           zero_strength_tol * std::max({1.0, std::abs(el.xi_lo), std::abs(el.xi_hi)});
}

// Builds the waves of one side, moving outward from `start`.
void build_side(const Primitive& start, Side side, const std::vector<WaveSpec>& specs,
                const EosPair& eos, std::vector<Element>& out, std::vector<Primitive>& chain) {
    const Side known = opposite(side);  // the inner state is on the contact's side
    Primitive cur = start;
    chain.push_back(start);
    auto push_fan = [&](Family f, const Primitive& inner, const Primitive& outer) {
        Element el = side == Side::right ? make_fan(f, inner, outer, eos) : make_fan(f, outer, inner, eos);
        if (!fan_is_trivial(el)) out.push_back(el);
    };
    auto push_shock = [&](Family f, double S, const Primitive& inner, const Primitive& outer,
                          bool interior, Family host, const std::string& name) {
        Element el;
        el.kind = ElementKind::shock;
        el.family = f;
        el.xi_lo = el.xi_hi = S;
        el.left = side == Side::right ? inner : outer;
        el.right = side == Side::right ? outer : inner;
        el.interior = interior;
        el.host = host;
        admit_shock(el, eos, name);
        out.push_back(el);
    };
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const WaveSpec& spec = specs[i];
        const std::string name = wave_name(side, i, spec);
        if (direction_of(spec.family) != (side == Side::right ? 1 : -1))
            fail(ErrorKind::construction, name + ": family belongs on the other side of the contact");
        try {
            switch (spec.kind) {
                case WaveKind::rarefaction: {
                    const Primitive next = rarefaction_connect(cur, spec.family, spec.speed, eos, known);
                    push_fan(spec.family, cur, next);
                    cur = next;
                    break;
                }
                case WaveKind::shock: {
                    const ShockResult r = shock_connect(cur, spec.family, spec.speed, eos, known);
                    push_shock(spec.family, spec.speed, cur, r.state, false, Family::contact, name);
                    cur = r.state;
                    break;
                }
                case WaveKind::shock_in_rarefaction: {
                    if (phase_of(spec.interior_family) == phase_of(spec.family) ||
                        direction_of(spec.interior_family) != direction_of(spec.family))
                        fail(ErrorKind::construction,
                             name + ": interior shock must belong to the other phase on the same side");
                    const double S = spec.interior_speed;
                    const Primitive pre = rarefaction_connect(cur, spec.family, S, eos, known);
                    push_fan(spec.family, cur, pre);
                    const ShockResult r = shock_connect(pre, spec.interior_family, S, eos, known);
                    push_shock(spec.interior_family, S, pre, r.state, true, spec.family, name);
                    chain.push_back(pre);
                    chain.push_back(r.state);
                    const Primitive outer =
                        rarefaction_connect(r.state, spec.family, spec.speed, eos, known);
                    push_fan(spec.family, r.state, outer);
                    cur = outer;
                    break;
                }
            }
            chain.push_back(cur);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::construction) throw;
            std::string what = e.what();
            if (what.rfind(name, 0) == 0) throw;
            throw Error(e.kind() == ErrorKind::inadmissible_wave ? ErrorKind::construction : e.kind(),
                        name + ": " + what);
        }
    }
}

Primitive with_phase(Primitive base, const Primitive& src, int k) {
    base.rho(k) = src.rho(k);
    base.u(k) = src.u(k);
    return base;
}

}  // namespace

ExactSolution build_solution(const Primitive& contact_left, double alpha1_right,
                             const std::vector<WaveSpec>& left_waves,
                             const std::vector<WaveSpec>& right_waves, const EosPair& eos) {
    require_valid(contact_left, "build_solution");
    ExactSolution sol;
    sol.eos = eos;
    sol.alpha1_left = contact_left.alpha1;
    sol.alpha1_right = alpha1_right;
    Primitive contact_right;
    try {
        contact_right = contact_connect(contact_left, alpha1_right, eos);
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("contact: ") + e.what());
    }
    Element c;
    c.kind = ElementKind::contact;
    c.family = Family::contact;
    c.left = contact_left;
    c.right = contact_right;
    c.xi_lo = c.xi_hi = mixture(contact_left, eos).u;
    sol.contact_speed = c.xi_lo;
    sol.elements.push_back(c);

    build_side(contact_left, Side::left, left_waves, eos, sol.elements, sol.left_chain);
    build_side(contact_right, Side::right, right_waves, eos, sol.elements, sol.right_chain);
    std::stable_sort(sol.elements.begin(), sol.elements.end(), [](const Element& a, const Element& b) {
        if (a.xi_lo != b.xi_lo) return a.xi_lo < b.xi_lo;
        return a.xi_hi < b.xi_hi;
    });

    const ValidationReport report = validate_solution(sol);
    if (!report.ok()) {
        std::ostringstream msg;
        msg << "constructed solution fails validation:";
        for (const auto& f : report.failures()) msg << "\n  " << f.name << ": " << f.detail;
        fail(ErrorKind::construction, msg.str());
    }
    return sol;
}

namespace {

// Phase-k state at xi from that phase's own wave sequence.
Primitive sample_phase(const ExactSolution& sol, int k, double xi) {
    const Element* prev = nullptr;
    for (const Element& el : sol.elements) {
        if (!el.affects_phase(k)) continue;
        if (xi < el.xi_lo) return prev ? prev->right : el.left;
        if (el.kind == ElementKind::fan && xi <= el.xi_hi)
            return rarefaction_sample(el.left, el.family, xi, el.xi_hi, sol.eos);
        if (el.kind != ElementKind::fan && xi == el.xi_lo) return el.left;
        prev = &el;
    }
    if (prev) return prev->right;
    return sol.elements.front().right;
}

}  // namespace

Primitive sample_solution(const ExactSolution& sol, double xi) {
    Primitive out;
    out.alpha1 = xi < sol.contact_speed ? sol.alpha1_left : sol.alpha1_right;
    for (int k = 1; k <= 2; ++k) out = with_phase(out, sample_phase(sol, k, xi), k);
    return out;
}

bool ValidationReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

std::vector<CheckItem> ValidationReport::failures() const {
    std::vector<CheckItem> out;
    for (const auto& c : items)
        if (!c.pass) out.push_back(c);
    return out;
}

std::string ValidationReport::to_text() const {
    std::ostringstream s;
    s.precision(6);
    for (const auto& c : items)
        s << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value
          << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
    for (const auto& o : overlaps) s << "overlap " << o << '\n';
    s << (ok() ? "all checks passed" : "validation FAILED") << '\n';
    return s.str();
}

ValidationReport validate_solution(const ExactSolution& sol) {
    ValidationReport rep;
    const EosPair& eos = sol.eos;
    auto add = [&](std::string name, bool pass, double value, std::string detail = {}) {
        rep.items.push_back({std::move(name), pass, value, std::move(detail)});
    };

    int contacts = 0;
    for (const Element& el : sol.elements) {
        const std::string name = el.label();
        if (el.kind == ElementKind::fan) {
            const double e_lo = std::abs(eigenvalue(el.left, el.family, eos) - el.xi_lo);
            const double e_hi = std::abs(eigenvalue(el.right, el.family, eos) - el.xi_hi);
            const double scale = std::max({1.0, std::abs(el.xi_lo), std::abs(el.xi_hi)});
            add(name + " edges", std::max(e_lo, e_hi) < construction_residual_tol * scale,
                std::max(e_lo, e_hi) / scale);
            add(name + " expands", el.xi_lo <= el.xi_hi, el.xi_hi - el.xi_lo);
            double worst = 0.0;
            for (int j = 1; j < 8; ++j) {
                const double xi = el.xi_lo + (el.xi_hi - el.xi_lo) * j / 8.0;
                const Primitive W = rarefaction_sample(el.left, el.family, xi, el.xi_hi, eos);
                worst = std::max(worst, std::abs(eigenvalue(W, el.family, eos) - xi) / scale);
            }
            const Primitive end = rarefaction_sample(el.left, el.family, el.xi_hi, el.xi_hi, eos);
            const int k = phase_of(el.family);
            worst = std::max({worst, std::abs(end.rho(k) - el.right.rho(k)) / el.right.rho(k),
                              std::abs(end.u(k) - el.right.u(k)) / scale});
            const int other = 3 - k;
            const bool frozen = el.left.alpha1 == el.right.alpha1 &&
                                el.left.rho(other) == el.right.rho(other) &&
                                el.left.u(other) == el.right.u(other);
            add(name + " characteristic relation", worst < construction_residual_tol, worst);
            add(name + " other phase frozen", frozen, 0.0);
            continue;
        }
        const double S = el.xi_lo;
        const CharacteristicCensus census = classify_discontinuity(el.left, el.right, S, eos);
        if (el.kind == ElementKind::contact) {
            ++contacts;
            const double r = max_abs(contact_residuals(el.left, el.right, eos));
            add(name + " jump residual", r < construction_residual_tol, r);
            add(name + " evolutionary", census.evolutionary, census.o(), describe(census));
            continue;
        }
        const double r = max_abs(jump_residuals(el.left, el.right, S, eos));
        add(name + " jump residual", r < construction_residual_tol, r);
        add(name + " alpha continuous", el.left.alpha1 == el.right.alpha1,
            el.right.alpha1 - el.left.alpha1);
        if (r < 1e-6) {
            const double ent = entropy_production(el.left, el.right, S, eos);
            add(name + " entropy", ent <= entropy_tolerance(el.left, el.right, S, eos), ent);
        }
        add(name + " evolutionary", census.evolutionary, census.o(), describe(census));
        const LaxClass lax = lax_check(el.left, el.right, S, el.family, eos);
        add(name + " Lax", lax != LaxClass::fails, 0.0, to_string(lax));
        if (el.interior) {
            const InteriorCase c = classify_interior_shock(el.left, el.right, S, el.host, eos);
            add(name + " interior case", c == InteriorCase::iii, 0.0,
                std::string("case (") + to_string(c) + ")");
        }
    }
    add("single contact", contacts == 1, contacts);

    // Coinciding discontinuities act as one jump and are judged as such.
    for (std::size_t a = 0; a < sol.elements.size(); ++a) {
        const Element& ea = sol.elements[a];
        if (!ea.is_discontinuity()) continue;
        for (std::size_t b = a + 1; b < sol.elements.size(); ++b) {
            const Element& eb = sol.elements[b];
            if (!eb.is_discontinuity() || !speeds_coincide(ea.xi_lo, eb.xi_lo)) continue;
            const bool contact = ea.kind == ElementKind::contact || eb.kind == ElementKind::contact;
            const CharacteristicCensus merged =
                classify_discontinuity(ea.left, eb.right, ea.xi_lo, eos);
            add(std::string(contact ? "shock at the contact speed: " : "shock resonance: ") +
                    ea.label() + " + " + eb.label(),
                false, merged.o(), describe(merged));
        }
    }

    // Per-phase ordering, contact inside a fan, overlapping fans.
    for (int k = 1; k <= 2; ++k) {
        const Element* prev = nullptr;
        for (const Element& el : sol.elements) {
            if (!el.affects_phase(k)) continue;
            if (prev) {
                const double tol = coincidence_tol * std::max({1.0, std::abs(prev->xi_hi), std::abs(el.xi_lo)});
                const bool ordered = prev->xi_hi <= el.xi_lo + tol;
                add("phase " + std::to_string(k) + " ordering " + prev->label() + " | " + el.label(),
                    ordered, el.xi_lo - prev->xi_hi);
                // States between consecutive waves of the phase agree in that phase.
                const double gap = std::max(std::abs(prev->right.rho(k) - el.left.rho(k)) / el.left.rho(k),
                                            std::abs(prev->right.u(k) - el.left.u(k)) /
                                                std::max(1.0, eos[k].sound_speed(el.left.rho(k))));
                add("phase " + std::to_string(k) + " continuity " + prev->label() + " | " + el.label(),
                    gap < construction_residual_tol, gap);
            }
            prev = &el;
        }
    }
    for (const Element& el : sol.elements) {
        if (el.kind != ElementKind::fan) continue;
        const double u = sol.contact_speed;
        const double tol = coincidence_tol * std::max(1.0, std::abs(u));
        if (el.xi_lo < u - tol && u + tol < el.xi_hi)
            add("contact inside " + el.label(), false, u, "contact-in-rarefaction is inadmissible");
    }
    for (std::size_t a = 0; a < sol.elements.size(); ++a) {
        for (std::size_t b = a + 1; b < sol.elements.size(); ++b) {
            const Element& ea = sol.elements[a];
            const Element& eb = sol.elements[b];
            if (ea.kind != ElementKind::fan || eb.kind != ElementKind::fan) continue;
            const double lo = std::max(ea.xi_lo, eb.xi_lo), hi = std::min(ea.xi_hi, eb.xi_hi);
            if (lo < hi) {
                std::ostringstream s;
                s.precision(8);
                s << ea.label() << " & " << eb.label() << " share [" << lo << ", " << hi << "]";
                rep.overlaps.push_back(s.str());
            }
        }
    }

    // alpha takes two values, switching at the contact.
    const auto [L, R] = initial_data(sol);
    add("alpha single jump", L.alpha1 == sol.alpha1_left && R.alpha1 == sol.alpha1_right, 0.0);
    return rep;
}

std::pair<Primitive, Primitive> initial_data(const ExactSolution& sol) {
    double lo = sol.contact_speed, hi = sol.contact_speed;
    for (const Element& el : sol.elements) {
        lo = std::min(lo, el.xi_lo);
        hi = std::max(hi, el.xi_hi);
    }
    const double pad = 1.0 + std::abs(lo) + std::abs(hi);
    return {sample_solution(sol, lo - pad), sample_solution(sol, hi + pad)};
}

namespace {

std::vector<double*> speed_slots(std::vector<WaveSpec>& specs) {
    std::vector<double*> out;
    for (auto& s : specs) {
        if (s.kind == WaveKind::shock_in_rarefaction) out.push_back(&s.interior_speed);
        out.push_back(&s.speed);
    }
    return out;
}

}  // namespace

FitResult fit_to_initial_data(const Primitive& left, const Primitive& right,
                              const Primitive& contact_left_guess,
                              const std::vector<WaveSpec>& left_guess,
                              const std::vector<WaveSpec>& right_guess, const EosPair& eos) {
    FitResult fit;
    fit.contact_left = contact_left_guess;
    fit.contact_left.alpha1 = left.alpha1;
    fit.left_waves = left_guess;
    fit.right_waves = right_guess;
    auto lslots = speed_slots(fit.left_waves);
    auto rslots = speed_slots(fit.right_waves);
    const int n = 4 + static_cast<int>(lslots.size() + rslots.size());
    if (n != 8)
        fail(ErrorKind::config, "fit needs exactly four wave speeds in total, got " + std::to_string(n - 4));

    const double vscale = std::max({velocity_scale(left, eos), velocity_scale(right, eos)});
    Eigen::VectorXd x(n);
    auto pack = [&]() {
        x(0) = fit.contact_left.rho1;
        x(1) = fit.contact_left.rho2;
        x(2) = fit.contact_left.u1;
        x(3) = fit.contact_left.u2;
        int j = 4;
        for (double* p : lslots) x(j++) = *p;
        for (double* p : rslots) x(j++) = *p;
    };
    auto unpack = [&](const Eigen::VectorXd& v) {
        fit.contact_left.rho1 = v(0);
        fit.contact_left.rho2 = v(1);
        fit.contact_left.u1 = v(2);
        fit.contact_left.u2 = v(3);
        int j = 4;
        for (double* p : lslots) *p = v(j++);
        for (double* p : rslots) *p = v(j++);
    };
    auto residual = [&](const Eigen::VectorXd& v, Eigen::VectorXd& r) -> bool {
        unpack(v);
        if (!(v(0) > 0.0 && v(1) > 0.0)) return false;
        try {
            const ExactSolution s = build_solution(fit.contact_left, right.alpha1, fit.left_waves,
                                                   fit.right_waves, eos);
            const auto [L, R] = initial_data(s);
            r.resize(8);
            r << (L.rho1 - left.rho1) / left.rho1, (L.rho2 - left.rho2) / left.rho2,
                (L.u1 - left.u1) / vscale, (L.u2 - left.u2) / vscale,
                (R.rho1 - right.rho1) / right.rho1, (R.rho2 - right.rho2) / right.rho2,
                (R.u1 - right.u1) / vscale, (R.u2 - right.u2) / vscale;
            return r.allFinite();
        } catch (const Error&) {
            return false;
        }
    };

    pack();
    Eigen::VectorXd r;
    if (!residual(x, r)) fail(ErrorKind::construction, "initial guess for the fit is not constructible");
    for (fit.iterations = 0; fit.iterations < 60 && r.norm() > 1e-13; ++fit.iterations) {
        Eigen::MatrixXd J(8, n);
        for (int j = 0; j < n; ++j) {
            const double h = 1e-7 * std::max(std::abs(x(j)), j < 2 ? 1e-3 : vscale);
            Eigen::VectorXd xp = x, xm = x, rp, rm;
            xp(j) += h;
            xm(j) -= h;
            const bool okp = residual(xp, rp), okm = residual(xm, rm);
            if (okp && okm)
                J.col(j) = (rp - rm) / (2.0 * h);
            else if (okp)
                J.col(j) = (rp - r) / h;
            else if (okm)
                J.col(j) = (r - rm) / h;
            else
                fail(ErrorKind::numerics, "fit Jacobian could not be evaluated");
        }
        const Eigen::VectorXd dx = J.fullPivLu().solve(-r);
        double lam = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k) {
            Eigen::VectorXd xt = x + lam * dx, rt;
            if (residual(xt, rt) && rt.norm() < r.norm()) {
                x = xt;
                r = rt;
                accepted = true;
                break;
            }
            lam *= 0.5;
        }
        if (!accepted) break;
    }
    unpack(x);
    fit.residual = r.norm();
    fit.solution = build_solution(fit.contact_left, right.alpha1, fit.left_waves, fit.right_waves, eos);
    if (fit.residual > 1e-9) {
        std::ostringstream msg;
        msg << "fit to initial data stalled at residual " << fit.residual;
        fail(ErrorKind::numerics, msg.str());
    }
    return fit;
}

}  // namespace tpr
