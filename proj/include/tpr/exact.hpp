#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpr/waves.hpp"

namespace tpr {

enum class WaveKind { shock, rarefaction, shock_in_rarefaction };
const char* to_string(WaveKind k);
WaveKind parse_wave_kind(const std::string& text);

// One wave of the construction, listed outward from the contact.
// rarefaction: speed is the outer edge of the fan.
// shock: speed is S.
// shock_in_rarefaction: family hosts the fan with outer edge `speed`; a shock of
// interior_family sits inside it at interior_speed.
struct WaveSpec {
    Family family = Family::one_minus;
    WaveKind kind = WaveKind::rarefaction;
    double speed = 0.0;
    Family interior_family = Family::one_minus;
    double interior_speed = 0.0;

    static WaveSpec rarefaction(Family f, double outer_edge);
    static WaveSpec shock(Family f, double S);
    static WaveSpec shock_in_rarefaction(Family host, double outer_edge, Family interior, double S);
};

enum class ElementKind { fan, shock, contact };
const char* to_string(ElementKind k);

struct Element {
    ElementKind kind = ElementKind::fan;
    Family family = Family::contact;
    double xi_lo = 0.0;  // equal to xi_hi for discontinuities
    double xi_hi = 0.0;
    Primitive left;
    Primitive right;
    bool interior = false;  // shock inside a fan of the other phase
    Family host = Family::contact;

    bool is_discontinuity() const { return kind != ElementKind::fan; }
    bool affects_phase(int k) const;
    std::string label() const;
};

struct ExactSolution {
    EosPair eos;
    std::vector<Element> elements;  // sorted by (xi_lo, xi_hi)
    double contact_speed = 0.0;
    double alpha1_left = 0.5;
    double alpha1_right = 0.5;
    // Construction states moving outward: [0] borders the contact, then one state
    // after each wave (pre-shock, post-shock and outer state for a shock in a fan).
    std::vector<Primitive> left_chain;
    std::vector<Primitive> right_chain;
};

ExactSolution build_solution(const Primitive& contact_left, double alpha1_right,
                             const std::vector<WaveSpec>& left_waves,
                             const std::vector<WaveSpec>& right_waves, const EosPair& eos);

Primitive sample_solution(const ExactSolution& sol, double xi);

struct CheckItem {
    std::string name;
    bool pass = true;
    double value = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckItem> items;
    std::vector<std::string> overlaps;  // pairs of fans sharing a xi interval

    bool ok() const;
    std::vector<CheckItem> failures() const;
    std::string to_text() const;
};

ValidationReport validate_solution(const ExactSolution& sol);

std::pair<Primitive, Primitive> initial_data(const ExactSolution& sol);

// Finds the contact-left state and the wave speeds so that the construction
// connects the given Riemann data. The speeds in the spec lists seed the iteration.
struct FitResult {
    ExactSolution solution;
    Primitive contact_left;
    std::vector<WaveSpec> left_waves;
    std::vector<WaveSpec> right_waves;
    double residual = 0.0;
    int iterations = 0;
};

FitResult fit_to_initial_data(const Primitive& left, const Primitive& right,
                              const Primitive& contact_left_guess,
                              const std::vector<WaveSpec>& left_guess,
                              const std::vector<WaveSpec>& right_guess, const EosPair& eos);

constexpr double construction_residual_tol = 1e-8;

}  // namespace tpr
