#include <doctest.h>

#include "becpol/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace becpol;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

PhysicalParams gas_params(double impurity_mass = 1.0, double a_ib = 0.03544907701811032) {
    PhysicalParams p;
    p.impurity_mass = impurity_mass;
    p.density = 2.244839026564582;
    p.scattering_length_bb = 0.03544907701811032;
    p.scattering_length_ib = a_ib;
    p.uv_cutoff = 200.0;
    return p;
}

SelfEnergyModel gas_model() { return born_model(to_dimensionless(gas_params())); }
} // namespace

TEST_CASE("free impurity: pole sits exactly on the kinetic energy") {
    SelfEnergyModel free_m = gas_model();
    free_m.g = 0.0;
    QuadratureConfig cfg;
    McConfig mc;
    const double p = 0.37;
    const PoleResult r1 = pole_order1(p, free_m, cfg);
    CHECK(r1.omega.re == r1.e_free);
    CHECK(r1.omega.im == 0.0);
    const PoleResult r2 = pole_order2(p, free_m, cfg, mc, {0.08, 0.04, 0.02, 0.01});
    CHECK(r2.omega.re == r2.e_free);
    CHECK(r2.omega.im == 0.0);
}

TEST_CASE("pole components add up and damping is negative or zero") {
    const SelfEnergyModel m = gas_model();
    QuadratureConfig cfg;
    McConfig mc;

    const PoleResult below = pole_order2(0.6, m, cfg, mc, {0.08, 0.04, 0.02, 0.01});
    CHECK(below.omega.re
          == Approx(below.e_free + below.s1.re + below.s1_correction.re + below.s2.re)
                 .epsilon(1e-12));
    CHECK(below.omega.im == 0.0); // below p_c: no decay channel at all
    CHECK_FALSE(below.eta_extrapolated);

    const PoleResult first = pole_order1(1.3, m, cfg);
    CHECK(first.omega.im < 0.0); // order 1: exactly the golden-rule width

    const PoleResult above = pole_order2(1.3, m, cfg, mc, {0.08, 0.04, 0.02, 0.01});
    CHECK(above.eta_extrapolated);
    CHECK(above.s1.im < 0.0);
    // the two g^4 pieces nearly cancel in Im just above p_c; the truncated sum
    // may land either side of zero, but the parts must still add up exactly
    CHECK(above.omega.im
          == Approx(above.s1.im + above.s1_correction.im + above.s2.im).epsilon(1e-12));
}

TEST_CASE("effective mass: free limit exact, frozen gas value, stencil robustness") {
    QuadratureConfig cfg;
    McConfig mc;
    const std::vector<double> grid = {0.08, 0.04, 0.02, 0.01};

    const DimensionlessContext free_ctx = to_dimensionless(gas_params(1.0, 0.0));
    const EffectiveMassResult free_r = effective_mass(1, free_ctx, cfg, mc, grid);
    CHECK(free_r.ratio == 1.0);
    CHECK(free_r.m_eff == 1.0);
    CHECK(free_r.i1 == 0.0);
    CHECK(free_r.g_mass == 0.0);

    const DimensionlessContext ctx = to_dimensionless(gas_params());
    const EffectiveMassResult r = effective_mass(1, ctx, cfg, mc, grid);
    CHECK(r.g_mass == Approx(0.011283791670955127).epsilon(1e-12));
    CHECK(r.i1 == Approx(0.066173886).epsilon(1e-6));
    CHECK(r.m_eff == Approx(1.00802866439).epsilon(1e-8));
    CHECK(r.ratio_order1 == Approx(1.0 - (32.0 / 3.0) * r.g_mass * r.i1).epsilon(1e-13));
    CHECK(std::abs(r.linear_coeff) < 1e-8);

    // halving the stencil moves the mass shift by well under 0.5%
    const EffectiveMassResult rh = effective_mass(1, ctx, cfg, mc, grid, 0.025);
    CHECK(std::abs(rh.ratio - r.ratio) < 5e-3 * std::abs(1.0 - r.ratio));

    CHECK_THROWS_AS((void)effective_mass(1, ctx, cfg, mc, grid, 0.4), InputError);
    CHECK_THROWS_AS((void)effective_mass(3, ctx, cfg, mc, grid), InputError);
}

TEST_CASE("effective mass at order 2 inverts its own expansion") {
    QuadratureConfig cfg;
    McConfig mc;
    mc.samples = 1u << 15;
    const DimensionlessContext ctx = to_dimensionless(gas_params());
    const EffectiveMassResult r = effective_mass(2, ctx, cfg, mc, {0.08, 0.04, 0.02, 0.01});
    const double rebuilt = 1.0 - (32.0 / 3.0) * r.g_mass * r.i1
                           + (8.0 / (3.0 * pi * pi)) * r.g_mass * r.g_mass * r.i2;
    CHECK(r.ratio == Approx(rebuilt).epsilon(1e-10));
    CHECK(r.m_eff == Approx(1.0 / r.ratio).epsilon(1e-13));
    CHECK(std::isfinite(r.i2));
    CHECK(r.i2_stderr >= 0.0);
    CHECK(r.ratio_stderr >= 0.0);
}

TEST_CASE("mass-ratio coefficient curve: positive, smooth drag") {
    QuadratureConfig cfg;
    McConfig mc;
    const std::vector<double> zs = {0.5, 1.0, 2.0};
    const IFunctionCurve curve =
        i_function_curves(1, gas_params(), zs, cfg, mc, {0.08, 0.04, 0.02, 0.01});
    REQUIRE(curve.z.size() == 3);
    CHECK(curve.i1[0] == Approx(0.138332).epsilon(1e-5));
    CHECK(curve.i1[1] == Approx(0.066174).epsilon(1e-5));
    CHECK(curve.i1[2] == Approx(0.023269).epsilon(1e-5));
    for (size_t j = 0; j < curve.i1.size(); ++j) {
        CHECK(curve.i1[j] > 0.0);
        CHECK(curve.i2[j] == 0.0);
    }
    // heavier impurity (smaller z) drags more condensate
    CHECK(curve.i1[0] > curve.i1[1]);
    CHECK(curve.i1[1] > curve.i1[2]);

    const std::vector<double> grid = default_z_grid();
    REQUIRE(grid.size() == 64);
    CHECK(grid.front() == Approx(0.25).epsilon(1e-12));
    CHECK(grid.back() == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("rate curve vanishes below the Landau momentum and grows above") {
    const SelfEnergyModel m = gas_model();
    QuadratureConfig cfg;
    const auto pts = rate_curve(m, 0.0, 1.5, 16, cfg);
    REQUIRE(pts.size() == 16);
    CHECK(pts.front().p == 0.0);
    CHECK(pts.back().p == Approx(1.5).epsilon(1e-15));
    double last_above = 0.0;
    for (const auto& pt : pts) {
        if (pt.p <= 1.0) {
            CHECK(pt.rate == 0.0);
        } else {
            CHECK(pt.rate > last_above); // monotone growth past threshold
            last_above = pt.rate;
        }
    }
}

TEST_CASE("spectrum scan below the critical momentum is real and monotone") {
    const SelfEnergyModel m = gas_model();
    QuadratureConfig cfg;
    McConfig mc;
    const SpectrumScan scan = spectrum_scan(1, m, 0.0, 0.95, 8, cfg, mc, {0.08, 0.04, 0.02, 0.01});
    REQUIRE(scan.points.size() == 8);
    CHECK(scan.re_monotone);
    for (const auto& pt : scan.points) {
        CHECK(pt.omega.im == 0.0);
        CHECK(pt.omega.re == Approx(pt.e_free + pt.s1.re).epsilon(1e-12));
    }
}
