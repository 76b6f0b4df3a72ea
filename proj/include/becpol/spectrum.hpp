#pragma once
#include <vector>

#include "becpol/model.hpp"
#include "becpol/numerics.hpp"
#include "becpol/selfenergy.hpp"

namespace becpol {

// on-shell quasiparticle pole at momentum p (reduced units) with the pieces
// that build it: W0 = E(p) + S1 [+ S1 dS1/dW + S2], self-energies at W = E(p).
// At order 1, Im(omega) = -rate/2 <= 0.  At order 2 the two g^4 pieces nearly
// cancel in Im just above p_c and the truncated sum may land slightly above
// zero; that is a truncation artifact and is reported as computed.
struct PoleResult {
    double p = 0.0;
    double e_free = 0.0;           // z p^2 / 2
    ComplexEnergy s1;              // order g^2
    ComplexEnergy s1_correction;   // S1 * dS1/dW, order g^4
    ComplexEnergy s2;              // second irreducible block, order g^4
    ComplexEnergy omega;           // pole position; Im <= 0 within noise
    bool eta_extrapolated = false;
    bool diverging = false;
};

PoleResult pole_order1(double p, const SelfEnergyModel& m, const QuadratureConfig& cfg);
PoleResult pole_order2(double p, const SelfEnergyModel& m, const QuadratureConfig& cfg,
                       const McConfig& mc, const std::vector<double>& eta_grid);

// curvature of the pole at p = 0 from a 4-point stencil {0, h, 2h, 3h},
// h = h_factor * p_c, fitted on the self-energy shift so the free-particle
// part never enters the arithmetic (g = 0 then gives M_eff = M exactly).
// i1, i2 are the reduced coefficients of the mass-ratio expansion in g_mass:
//   M/M_eff = 1 - (32/3) g_mass i1 + (8/3 pi^2) g_mass^2 i2
struct EffectiveMassResult {
    double z = 0.0;
    double g_mass = 0.0;
    double h = 0.0;              // stencil spacing, units m*c
    double ratio_order1 = 1.0;   // M / M_eff from the order-g^2 shift
    double ratio = 1.0;          // M / M_eff at the requested order
    double ratio_stderr = 0.0;   // propagated point noise on ratio
    double m_eff = 1.0;          // M_eff / M at the requested order
    double i1 = 0.0;
    double i2 = 0.0;             // populated at order 2
    double i2_stderr = 0.0;
    double linear_coeff = 0.0;   // linear term of the {1,p,p^2,p^4} check fit
};

EffectiveMassResult effective_mass(int order, const DimensionlessContext& ctx,
                                   const QuadratureConfig& quad, const McConfig& mc,
                                   const std::vector<double>& eta_grid,
                                   double h_factor = 0.05);

// mass-ratio coefficients versus the mass ratio z at fixed gas parameter;
// order 1 runs the grid in parallel (deterministic quadrature only)
struct IFunctionCurve {
    std::vector<double> z;
    std::vector<double> g_mass;
    std::vector<double> i1;
    std::vector<double> i2;         // zeros at order 1
    std::vector<double> i2_stderr;  // zeros at order 1
};

std::vector<double> default_z_grid();  // 64 log-spaced points on [1/4, 4]

IFunctionCurve i_function_curves(int order, const PhysicalParams& base,
                                 const std::vector<double>& z_grid,
                                 const QuadratureConfig& quad, const McConfig& mc,
                                 const std::vector<double>& eta_grid);

struct RatePoint {
    double p = 0.0;
    double rate = 0.0;
};
std::vector<RatePoint> rate_curve(const SelfEnergyModel& m, double p_min, double p_max,
                                  int steps, const QuadratureConfig& cfg);

// poles on a momentum grid; re_monotone records whether Re(omega) is
// non-decreasing across the scan (within 3 sigma of the point noise)
struct SpectrumScan {
    std::vector<PoleResult> points;
    bool re_monotone = true;
};
SpectrumScan spectrum_scan(int order, const SelfEnergyModel& m, double p_min, double p_max,
                           int steps, const QuadratureConfig& cfg, const McConfig& mc,
                           const std::vector<double>& eta_grid);

} // namespace becpol
