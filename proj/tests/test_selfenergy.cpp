#include <doctest.h>

#include "becpol/selfenergy.hpp"

#include <cmath>
#include <numbers>

using namespace becpol;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

SelfEnergyModel unit_model(double cutoff = 10.0) {
    SelfEnergyModel m;
    m.z = 1.0;
    m.g = 1.0;
    m.n = 1.0;
    m.cutoff = cutoff;
    return m;
}

DimensionlessContext gas_context() {
    PhysicalParams p;
    p.density = 2.244839026564582;
    p.scattering_length_bb = 0.03544907701811032;
    p.scattering_length_ib = 0.03544907701811032;
    p.uv_cutoff = 200.0;
    return to_dimensionless(p);
}
} // namespace

TEST_CASE("first diagram at rest matches the frozen quadrature value") {
    const SelfEnergyModel m = unit_model(10.0);
    QuadratureConfig cfg;
    const ComplexEnergy s = sigma1(0.0, 0.0, m, cfg);
    CHECK(s.re == Approx(-0.38654377317185558).epsilon(1e-9));
    CHECK(s.im == 0.0); // below threshold: exactly zero, not merely small
    CHECK(s.stderr_re == 0.0);
}

TEST_CASE("first diagram scales exactly as g^2") {
    QuadratureConfig cfg;
    SelfEnergyModel m1 = unit_model(50.0);
    SelfEnergyModel m2 = m1;
    m2.g = 2.0;
    for (auto [p, w] : {std::pair{0.0, -0.3}, std::pair{0.5, 0.1}, std::pair{1.5, 1.125}}) {
        const ComplexEnergy a = sigma1(p, w, m1, cfg);
        const ComplexEnergy b = sigma1(p, w, m2, cfg);
        CHECK(b.re == 4.0 * a.re); // power-of-two scaling commutes with rounding
        CHECK(b.im == 4.0 * a.im);
    }
}

TEST_CASE("energy derivative of the first diagram agrees with central differences") {
    const SelfEnergyModel m = unit_model(50.0);
    QuadratureConfig cfg;
    const double delta = 1e-3;
    for (auto [p, w] : {std::pair{0.5, -0.2}, std::pair{0.5, 0.3}, std::pair{1.5, 1.125}}) {
        const ComplexEnergy d = sigma1_domega(p, w, m, cfg);
        const ComplexEnergy hi = sigma1(p, w + delta, m, cfg);
        const ComplexEnergy lo = sigma1(p, w - delta, m, cfg);
        const double fd_re = (hi.re - lo.re) / (2.0 * delta);
        const double fd_im = (hi.im - lo.im) / (2.0 * delta);
        CHECK(d.re == Approx(fd_re).epsilon(2e-4));
        if (std::abs(fd_im) > 1e-12) CHECK(d.im == Approx(fd_im).epsilon(2e-4));
        else CHECK(std::abs(d.im) < 1e-10);
    }
}

TEST_CASE("energy derivative at rest matches the frozen value and guards the double pole") {
    const SelfEnergyModel m = unit_model(10.0);
    QuadratureConfig cfg;
    const ComplexEnergy d = sigma1_domega(0.0, 0.0, m, cfg);
    CHECK(d.re == Approx(-0.02877374).epsilon(1e-6));
    CHECK(d.im == 0.0);
    // p = 0 with the probe inside the continuum: second-order pole, unsupported
    CHECK_THROWS_AS((void)sigma1_domega(0.0, 0.5, m, cfg), InputError);
}

TEST_CASE("golden-rule rate: Landau threshold and frozen value") {
    const SelfEnergyModel m = unit_model(200.0);
    QuadratureConfig cfg;
    CHECK(golden_rule_rate(0.5, m, cfg) == 0.0);
    CHECK(golden_rule_rate(1.0, m, cfg) == 0.0); // exactly at p_c
    CHECK(golden_rule_rate(1.05, m, cfg) > 0.0);
    CHECK(golden_rule_rate(2.0, m, cfg) == Approx(0.038889959072326084).epsilon(1e-10));

    SelfEnergyModel slow = m; // heavier impurity: p_c = 1/z = 2
    slow.z = 0.5;
    CHECK(golden_rule_rate(1.9, slow, cfg) == 0.0);
    CHECK(golden_rule_rate(2.1, slow, cfg) > 0.0);
}

TEST_CASE("on-shell width from the diagram equals the golden-rule rate") {
    const SelfEnergyModel m = unit_model(200.0);
    QuadratureConfig cfg;
    for (double p : {1.2, 1.5, 2.0}) {
        const double lambda = golden_rule_rate(p, m, cfg);
        const ComplexEnergy s = sigma1(p, iu::imp(m.z, p), m, cfg);
        CHECK(s.im == Approx(-0.5 * lambda).epsilon(1e-8));
    }
}

TEST_CASE("emission thresholds classify probe points") {
    const SelfEnergyModel m = unit_model(200.0);
    CHECK(below_emission_thresholds(0.0, 0.0, m));
    CHECK(below_emission_thresholds(0.0, -0.1, m));
    CHECK(below_emission_thresholds(0.5, iu::imp(m.z, 0.5), m));
    CHECK_FALSE(below_emission_thresholds(0.0, 0.5, m));
    CHECK_FALSE(below_emission_thresholds(1.3, iu::imp(m.z, 1.3), m));
    CHECK_FALSE(below_emission_thresholds(2.0, iu::imp(m.z, 2.0), m));
}

TEST_CASE("second block at rest: deterministic imaginary zero and frozen mean") {
    const SelfEnergyModel m = unit_model(10.0);
    QuadratureConfig cfg;
    McConfig mc;
    const Sigma2Result r = sigma2(0.0, 0.0, m, mc, {0.08, 0.04, 0.02, 0.01}, cfg);
    CHECK_FALSE(r.eta_extrapolated);
    CHECK_FALSE(r.diverging);
    CHECK(r.value.im == 0.0);
    CHECK(r.value.stderr_re > 0.0);
    CHECK(std::abs(r.value.re - (-0.01153509)) < 4.0 * r.value.stderr_re + 2e-5);
}

TEST_CASE("second block scales exactly as g^4 with a shared seed") {
    QuadratureConfig cfg;
    McConfig mc;
    mc.samples = 1u << 15;
    const std::vector<double> grid = {0.08, 0.04, 0.02, 0.01};
    SelfEnergyModel m1 = unit_model(10.0);
    SelfEnergyModel m2 = m1;
    m2.g = 2.0;

    const Sigma2Result below1 = sigma2(0.0, 0.0, m1, mc, grid, cfg);
    const Sigma2Result below2 = sigma2(0.0, 0.0, m2, mc, grid, cfg);
    CHECK(below2.value.re == 16.0 * below1.value.re);

    const Sigma2Result above1 = sigma2(0.0, 0.5, m1, mc, grid, cfg);
    const Sigma2Result above2 = sigma2(0.0, 0.5, m2, mc, grid, cfg);
    CHECK(above1.eta_extrapolated);
    CHECK(above2.value.re == 16.0 * above1.value.re);
    CHECK(above2.value.im == 16.0 * above1.value.im);
}

TEST_CASE("second block above threshold extrapolates eta and damps") {
    const SelfEnergyModel m = unit_model(50.0);
    QuadratureConfig cfg;
    McConfig mc;
    const double p = 1.3;
    const Sigma2Result r = sigma2(p, iu::imp(m.z, p), m, mc, {0.08, 0.04, 0.02, 0.01}, cfg);
    CHECK(r.eta_extrapolated);
    CHECK(r.value.im <= 3.0 * r.value.stderr_im);
}

TEST_CASE("proper self-energy assembles the requested order") {
    const SelfEnergyModel m = unit_model(10.0);
    SelfEnergyRequest req;
    req.order = 1;
    const ComplexEnergy first = sigma(req, m);
    CHECK(first.re == Approx(-0.38654377317185558).epsilon(1e-9));

    req.order = 2;
    const ComplexEnergy both = sigma(req, m);
    const Sigma2Result s2 = sigma2(0.0, 0.0, m, req.mc, req.eta_grid, req.quad);
    CHECK(both.re == Approx(first.re + s2.value.re).epsilon(1e-12));

    req.order = 3;
    CHECK_THROWS_AS((void)sigma(req, m), InputError);
}

TEST_CASE("model validation rejects unusable reduced parameters") {
    QuadratureConfig cfg;
    SelfEnergyModel bad = unit_model();
    bad.z = 0.0;
    CHECK_THROWS_AS((void)sigma1(0.0, 0.0, bad, cfg), InputError);
    bad = unit_model();
    bad.cutoff = -1.0;
    CHECK_THROWS_AS((void)sigma1(0.0, 0.0, bad, cfg), InputError);
    bad = unit_model();
    bad.n = -2.0;
    CHECK_THROWS_AS((void)sigma1(0.0, 0.0, bad, cfg), InputError);
}

TEST_CASE("zero-point integral: finite form, tail, and frozen limits") {
    QuadratureConfig cfg;
    // cutoff tail: L * (v(2L) - v(L)) * 2 -> (4 + 2z)/(1 + z)
    for (double z : {0.5, 1.0, 2.0}) {
        const double L = 2000.0;
        const double c_tail = 2.0 * L * (i0_finite(z, 2.0 * L, cfg) - i0_finite(z, L, cfg));
        CHECK(c_tail == Approx((4.0 + 2.0 * z) / (1.0 + z)).epsilon(1e-3));
    }

    CHECK(i0_numeric(0.0, cfg) == Approx(pi).epsilon(1e-9));
    CHECK(i0_numeric(0.25, cfg) == Approx(2.9635851334255689).epsilon(1e-9));
    CHECK(i0_numeric(0.5, cfg) == Approx(2.8367983046245809).epsilon(1e-9));
    CHECK(i0_numeric(1.0, cfg) == Approx(8.0 / 3.0).epsilon(1e-9));
    CHECK(i0_numeric(2.0, cfg) == Approx(2.4793080073981073).epsilon(1e-9));
    CHECK(i0_numeric(4.0, cfg) == Approx(2.3114818931653532).epsilon(1e-9));
}

TEST_CASE("printed closed form: frozen values, z = 0 agreement, large-z decay") {
    CHECK(i0_closed(0.0) == Approx(pi).epsilon(1e-12));
    CHECK(i0_closed(0.25) == Approx(2.3000799125880147).epsilon(1e-12));
    CHECK(i0_closed(0.5) == Approx(1.6915396926924584).epsilon(1e-12));
    CHECK(i0_closed(1.0) == Approx(0.94280904158206337).epsilon(1e-12));
    CHECK(i0_closed(2.0) == Approx(0.36959341611344796).epsilon(1e-12));
    CHECK(i0_closed(4.0) == Approx(0.11212334114380504).epsilon(1e-12));

    // the z = 1 series patch joins both exact branches smoothly
    const double left = i0_closed(1.0 - 2e-4);
    const double right = i0_closed(1.0 + 2e-4);
    CHECK(std::abs(left - right) < 5e-4);
    CHECK(left > i0_closed(1.0));
    CHECK(right < i0_closed(1.0));

    // decays like 2/z^2 for heavy-impurity ratios
    CHECK(i0_closed(100.0) * 100.0 * 100.0 / 2.0 == Approx(1.0).epsilon(0.01));
}

TEST_CASE("order-a^2 zero-point energy: cutoff identity and chemical-potential case") {
    const DimensionlessContext ctx = gas_context();
    QuadratureConfig cfg;
    const double e1 = zero_point_energy_order1(ctx, cfg);
    const double pre = 2.0 * pi * ctx.a_ib * ctx.density * (1.0 + ctx.z);
    const double identity =
        pre * (1.0 + (2.0 * ctx.a_ib / pi) * i0_finite(ctx.z, ctx.cutoff, cfg));
    CHECK(e1 == Approx(identity).epsilon(1e-9));

    const I0Report rep = i0_report(ctx, cfg);
    CHECK(rep.matches_mu_b_case);
    CHECK(rep.rel_drift < 1e-3);                                // cutoff-stable
    CHECK(rep.e1 == Approx(rep.mu_b_reduced).epsilon(2e-3));    // a = a_s, M = m case
    CHECK(rep.i0_num == Approx(8.0 / 3.0).epsilon(1e-6));       // z = 1 defining integral
    CHECK(rep.i0_cl == Approx(0.94280904158206337).epsilon(1e-9));
    CHECK(rep.i0_extracted == Approx(i0_finite(ctx.z, ctx.cutoff, cfg)).epsilon(1e-6));
}

TEST_CASE("combined order-g^4 zero-point piece: frozen values and exact g scaling") {
    QuadratureConfig cfg;
    CHECK(second_order_zero_point(unit_model(10.0), cfg)
          == Approx(-4.127861313061e-04).epsilon(1e-8));
    CHECK(second_order_zero_point(unit_model(50.0), cfg)
          == Approx(-1.3760020441e-03).epsilon(1e-7));
    CHECK(second_order_zero_point(unit_model(100.0), cfg)
          == Approx(-1.8550108724e-03).epsilon(1e-7));

    SelfEnergyModel twice = unit_model(10.0);
    twice.g = 2.0;
    CHECK(second_order_zero_point(twice, cfg)
          == 16.0 * second_order_zero_point(unit_model(10.0), cfg));

    // the printed closed form carries exactly twice the combined integrand
    const double printed = second_order_zero_point_printed(unit_model(10.0), cfg);
    CHECK(second_order_zero_point(unit_model(10.0), cfg) / printed
          == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("coupling factories map the dimensionless context") {
    const DimensionlessContext ctx = gas_context();
    const SelfEnergyModel born = born_model(ctx);
    const SelfEnergyModel cut = cutoff_model(ctx);
    CHECK(born.z == ctx.z);
    CHECK(born.n == ctx.density);
    CHECK(born.g == Approx(2.0 * pi * ctx.a_ib * (1.0 + ctx.z)).epsilon(1e-13));
    CHECK(cut.g == Approx(born.g * (1.0 + 2.0 * ctx.a_ib * ctx.cutoff / pi)).epsilon(1e-13));
}
