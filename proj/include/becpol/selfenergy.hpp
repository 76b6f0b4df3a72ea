#pragma once
#include <vector>

#include "becpol/model.hpp"
#include "becpol/numerics.hpp"

namespace becpol {

// reduced-unit handle for the loop integrals (hbar = m = c = 1):
// momenta in m*c, energies in m*c^2, lengths in 1/(m*c)
struct SelfEnergyModel {
    double z = 1.0;        // m / M
    double g = 0.0;        // impurity-boson coupling
    double n = 1.0;        // condensate density
    double cutoff = 200.0; // loop momentum cutoff
};

// g = 2 pi a / m_r = 2 pi a (1 + z): plain Born coupling; the dispersion and
// rate integrals are UV-convergent with this choice
SelfEnergyModel born_model(const DimensionlessContext& ctx);
// g carrying the first Born correction at the cutoff; used where the linear
// cutoff growth of the zero-point integral must cancel
SelfEnergyModel cutoff_model(const DimensionlessContext& ctx);

struct SelfEnergyRequest {
    int order = 1;       // 1: first diagram; 2: first + second irreducible block
    double p = 0.0;      // impurity momentum, units m*c
    double omega = 0.0;  // probe energy, units m*c^2
    QuadratureConfig quad;
    McConfig mc;
    std::vector<double> eta_grid = {0.08, 0.04, 0.02, 0.01};
};

// first self-energy diagram
//   S1(p, W) = -(2 pi)^-3 int^cutoff d3k  w(k) / (eps(k) + E(p-k) - W - i0)
// real part by principal value in cos(theta), imaginary part from the
// on-shell angular delta; exact zero imaginary part below threshold
ComplexEnergy sigma1(double p, double omega, const SelfEnergyModel& m,
                     const QuadratureConfig& cfg);

// dS1/dW by the analytic derivative of the angular integral (no finite
// differences): the angular integral collapses to -2 / ((d0-b)(d0+b)) with
// simple poles treated by principal value + residue
ComplexEnergy sigma1_domega(double p, double omega, const SelfEnergyModel& m,
                            const QuadratureConfig& cfg);

// golden-rule phonon emission rate at momentum p; identically 0 for p <= p_c
// (Landau criterion), otherwise a 1-D integral over the emission sphere
double golden_rule_rate(double p, const SelfEnergyModel& m, const QuadratureConfig& cfg);

struct Sigma2Result {
    ComplexEnergy value;
    bool eta_extrapolated = false;  // false: direct eta = 0 below all thresholds
    bool diverging = false;         // eta-extrapolation failed to stabilize
};

// second irreducible block, 5-D Monte Carlo over (k, k', cos, cos', phi):
//   S2 = -(2 pi)^-6 int d3k d3k' w w' (A + C) / (A^2 B C),  denominators
// carrying -i eta; evaluated at eta = 0 directly when every intermediate
// state is off resonance, otherwise on the eta grid and extrapolated
Sigma2Result sigma2(double p, double omega, const SelfEnergyModel& m, const McConfig& mc,
                    const std::vector<double>& eta_grid, const QuadratureConfig& cfg);

// proper self-energy through the requested order (order 2 adds S2 to S1)
ComplexEnergy sigma(const SelfEnergyRequest& req, const SelfEnergyModel& m);

// true when the one- and two-phonon denominators stay positive over the whole
// integration domain (infimum at the k = 0 boundary allowed: the integrand is
// regular there), so the eta = 0 evaluation is exact
bool below_emission_thresholds(double p, double omega, const SelfEnergyModel& m);

// combined order-g^4 zero-point piece  S1 * dS1/dW + S2  at p = 0, W = 0,
// reduced to a deterministic 2-D quadrature with the angular factor done
// analytically. The linear cutoff divergences of the two terms cancel inside
// the combined integrand; the remainder grows like log(cutoff).
double second_order_zero_point(const SelfEnergyModel& m, const QuadratureConfig& cfg);

// the same quantity assembled from the closed printed form with prefactor
// g^4 n^2 m^4 / (4 pi^6 M); kept as a diagnostic (the ratio to
// second_order_zero_point is reported, not asserted)
double second_order_zero_point_printed(const SelfEnergyModel& m, const QuadratureConfig& cfg);

// cutoff-regularized zero-point integral
//   I0(z; L) = L - (1+z) int_0^L l^2 dl / (sqrt(l^2+4) (sqrt(l^2+4) + z l))
// evaluated through the equivalent single convergent integrand
double i0_finite(double z, double cutoff, const QuadratureConfig& cfg);
// cutoff-extrapolated value (Richardson in 1/L; the tail is -(4+2z)/((1+z) L))
double i0_numeric(double z, const QuadratureConfig& cfg);
// printed closed form for z > 1, continued to z < 1 through the real branch;
// does NOT match i0_numeric away from z = 0 (documented, reported side by side)
double i0_closed(double z);

// order-a^2 impurity zero-point energy (reduced units):
//   E_i(0) = g(cutoff) n + S1(0, 0)  with the Born-order g^2 inside S1;
// the Born correction in g(cutoff) cancels S1's linear cutoff growth
double zero_point_energy_order1(const DimensionlessContext& ctx, const QuadratureConfig& cfg);

// side-by-side comparison material for the zero-point energy
struct I0Report {
    double z = 0.0;
    double cutoff = 0.0;
    double e1 = 0.0;              // zero-point energy at cutoff
    double e1_doubled = 0.0;      // same at 2x cutoff
    double rel_drift = 0.0;       // |e1_doubled - e1| / |e1|
    double prefactor = 0.0;       // 2 pi a n (1 + z)
    double i0_extracted = 0.0;    // coefficient isolated from e1 at the cutoff
    double i0_num = 0.0;          // cutoff-extrapolated defining integral
    double i0_cl = 0.0;           // printed closed form / continuation
    double mu_b_reduced = 0.0;    // condensate chemical potential, units m c^2
    bool matches_mu_b_case = false;  // true when m == M and a == a_s
};
I0Report i0_report(const DimensionlessContext& ctx, const QuadratureConfig& cfg);

} // namespace becpol
