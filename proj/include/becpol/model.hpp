#pragma once
#include "becpol/errors.hpp"

namespace becpol {

// Condensate + impurity inputs in a self-consistent unit system with hbar = 1.
// All quantities passed to the physical-unit helpers below live in that same
// system; uv_cutoff alone is declared in units of m*c (the condensate's
// inverse coherence length), since that is the natural scale for the
// loop-momentum cutoff.
struct PhysicalParams {
    double boson_mass           = 1.0;    // m
    double impurity_mass        = 1.0;    // M
    double density              = 1.0;    // n
    double scattering_length_bb = 0.01;   // a_s, boson-boson, must be > 0
    double scattering_length_ib = 0.01;   // a, impurity-boson, >= 0
    double uv_cutoff            = 200.0;  // in units of m*c
};

// throws InputError on non-physical input; a true return flags a strained
// dilute-gas assumption (a_s n^{1/3} > 0.1), which is a warning, not an error
bool validate(const PhysicalParams& p);

double boson_interaction(const PhysicalParams& p);  // U0 = 4 pi a_s / m
double speed_of_sound(const PhysicalParams& p);     // c = sqrt(n U0 / m)
double reduced_mass(const PhysicalParams& p);       // m M / (m + M)
double healing_momentum(const PhysicalParams& p);   // m c
double landau_momentum(const PhysicalParams& p);    // p_c = M c

double bogoliubov_dispersion(double k, const PhysicalParams& p);  // eps(k)
double impurity_dispersion(double k, const PhysicalParams& p);    // k^2 / (2M)

// squared impurity-phonon vertex summed over the condensate:
//   w(k) = g^2 n k^2 / (2 m eps(k));  the coupling g is the caller's choice
double interaction_weight(double k, const PhysicalParams& p, double g);

// contact coupling carrying the first Born correction at the given momentum
// cutoff (cutoff in units of m*c):  g(L) = (2 pi a / m_r) (1 + 2 a L_phys / pi)
double renormalized_coupling(double a, double cutoff, const PhysicalParams& p);

// condensate chemical potential including the beyond-mean-field correction:
//   mu_B = (4 pi a_s n / m) (1 + (32/3) sqrt(a_s^3 n / pi))
double chemical_potential_bogoliubov(const PhysicalParams& p);

// Bogoliubov transform coefficients at momentum k > 0.
// mu = -(eps + k^2/2m + n U0)/(n U0), alpha = mu/sqrt(mu^2-1), beta = 1/sqrt(mu^2-1);
// invariant alpha^2 - beta^2 = 1.
struct TransformCoefficients { double alpha, beta, mu; };
TransformCoefficients transform_coefficients(double k, const PhysicalParams& p);

// Dimensionless snapshot of the model: momenta in m*c, energies in m*c^2,
// lengths in 1/(m*c).  mass_scale and sound_speed are kept so the mapping
// back to physical units is exact.
struct DimensionlessContext {
    double mass_scale;     // m
    double sound_speed;    // c
    double z;              // m / M
    double density;        // n / (m c)^3
    double a_bb;           // a_s m c
    double a_ib;           // a m c
    double cutoff;         // as given (already in m c)
    double gas_parameter;  // sqrt(a_s^3 n)
    double g_mass;         // g_M = (a^2 n / p_c) (m/m_r)^2
    double p_c;            // M c in units of m c, = 1/z
    bool   diluteness_warning;
};

DimensionlessContext to_dimensionless(const PhysicalParams& p);
PhysicalParams from_dimensionless(const DimensionlessContext& ctx);

// reduced-unit kernel (hbar = m = c = 1) shared by the loop integrals;
// l is momentum in units of m*c
namespace iu {
double eps(double l);                         // (l/2) sqrt(l^2 + 4)
double deps(double l);                        // d eps / d l
double imp(double z, double l);               // impurity kinetic energy z l^2 / 2
double weight(double g, double n, double l);  // g^2 n l^2 / (2 eps(l))
double mu_of(double l);                       // -(eps(l) + l^2/2 + 1)
} // namespace iu

} // namespace becpol
