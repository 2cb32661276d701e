#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "tpr/eos.hpp"

namespace tpr {

using Vec5 = std::array<double, 5>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Col5 = Eigen::Matrix<double, 5, 1>;

struct Primitive {
    double alpha1 = 0.5;
    double rho1 = 1.0;
    double rho2 = 1.0;
    double u1 = 0.0;
    double u2 = 0.0;

    double alpha2() const { return 1.0 - alpha1; }
    double rho(int phase) const { return phase == 1 ? rho1 : rho2; }
    double u(int phase) const { return phase == 1 ? u1 : u2; }
    double& rho(int phase) { return phase == 1 ? rho1 : rho2; }
    double& u(int phase) { return phase == 1 ? u1 : u2; }
    double alpha(int phase) const { return phase == 1 ? alpha1 : 1.0 - alpha1; }

    Col5 as_column() const { return Col5(alpha1, rho1, rho2, u1, u2); }
    static Primitive from_column(const Col5& c) { return {c[0], c[1], c[2], c[3], c[4]}; }
    bool operator==(const Primitive&) const = default;
};

bool is_valid(const Primitive& W);
void require_valid(const Primitive& W, const char* where);

struct Mixture {
    double rho;
    double c1;
    double c2;
    double u;
    double w;
    double p;
    double p_bar;
};

Mixture mixture(const Primitive& W, const EosPair& eos);

// Conserved vector (alpha1 rho, alpha1 rho1, rho, rho u, w).
Vec5 to_conserved(const Primitive& W);
Primitive to_primitive(const Vec5& U);

// Flux written in conserved components.
Vec5 physical_flux(const Vec5& U, const EosPair& eos);
// Same flux assembled from primitive quantities.
Vec5 physical_flux_primitive(const Primitive& W, const EosPair& eos);

Mat5 jacobian_primitive(const Primitive& W, const EosPair& eos);

enum class Family { one_minus = 0, two_minus = 1, contact = 2, one_plus = 3, two_plus = 4 };
constexpr std::array<Family, 5> all_families = {Family::one_minus, Family::two_minus,
                                                Family::contact, Family::one_plus,
                                                Family::two_plus};
constexpr std::array<Family, 4> acoustic_families = {Family::one_minus, Family::two_minus,
                                                     Family::one_plus, Family::two_plus};

inline int index(Family f) { return static_cast<int>(f); }
int phase_of(Family f);       // 1 or 2, 0 for the contact
int direction_of(Family f);   // -1, +1, 0 for the contact
Family acoustic_family(int phase, int direction);
const char* to_string(Family f);
Family parse_family(const std::string& text);

enum class FieldKind { genuinely_nonlinear, linearly_degenerate };

// Wave speed of a single family.
double eigenvalue(const Primitive& W, Family f, const EosPair& eos);

struct Eigenstructure {
    std::array<double, 5> lambda{};          // indexed by Family
    std::array<Family, 5> sorted{};          // families in increasing speed
    std::array<Col5, 5> right;               // indexed by Family
    std::array<FieldKind, 5> kind{};
    bool contact_degenerate = false;         // R_C collapsed to (near) zero
};

Eigenstructure eigenstructure(const Primitive& W, const EosPair& eos);

// Un-normalised contact eigenvector exactly as written with the delta/epsilon abbreviations.
Col5 contact_vector_raw(const Primitive& W, const EosPair& eos);

// Gradient of each eigenvalue with respect to (alpha1, rho1, rho2, u1, u2).
std::array<Col5, 5> eigenvalue_gradients(const Primitive& W, const EosPair& eos);

// grad(lambda_k) . R_k for every family; acoustic vectors in unit-density scaling.
std::array<double, 5> field_characterization(const Primitive& W, const EosPair& eos);

struct ResonanceReport {
    struct Entry {
        Family family;
        double epsilon;      // ((u - u_i)^2 - a_i^2) / rho_i
        bool collapse;       // R_C within span of this phase's acoustic vectors
        double sv_ratio;     // smallest / largest singular value of the stacked set
    };
    std::vector<Entry> coincidences;
    bool contact_vector_null = false;

    bool empty() const { return coincidences.empty() && !contact_vector_null; }
};

ResonanceReport check_resonance(const Primitive& W, const EosPair& eos);

bool speeds_coincide(double a, double b);

// max(|u1|, |u2|, a1, a2), the natural velocity scale of a state.
double velocity_scale(const Primitive& W, const EosPair& eos);

constexpr double coincidence_tol = 1e-9;
constexpr double collapse_tol = 1e-9;

}  // namespace tpr
