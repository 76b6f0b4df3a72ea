#include "becpol/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace becpol {
namespace {

constexpr double kPi = std::numbers::pi;

void need(bool ok, const char* what)
{
    if (!ok) throw InputError(what);
}

// least-squares fit of y on {1, p^2}; returns the curvature coefficient and
// the weights that map point noise into it
struct CurvatureFit {
    double c2 = 0.0;
    std::array<double, 4> weight{};
};

CurvatureFit fit_curvature(const std::array<double, 4>& p, const std::array<double, 4>& y)
{
    double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double x = p[j] * p[j];
        sx += x;
        sxx += x * x;
        sy += y[j];
        sxy += x * y[j];
    }
    const double det = 4.0 * sxx - sx * sx;
    CurvatureFit fit;
    for (int j = 0; j < 4; ++j) {
        fit.weight[j] = (4.0 * p[j] * p[j] - sx) / det;
        fit.c2 += fit.weight[j] * y[j];
    }
    return fit;
}

// exact solve of y = c0 + c1 p + c2 p^2 + c4 p^4 on the 4 stencil points;
// a plain quadratic basis would alias the p^4 content into c1, so the
// verification fit carries the quartic term explicitly
double linear_term(const std::array<double, 4>& p, const std::array<double, 4>& y)
{
    double a[4][5];
    for (int j = 0; j < 4; ++j) {
        a[j][0] = 1.0;
        a[j][1] = p[j];
        a[j][2] = p[j] * p[j];
        a[j][3] = a[j][2] * a[j][2];
        a[j][4] = y[j];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[piv][c]);
        for (int r = 0; r < 4; ++r) {
            if (r == col || a[col][col] == 0.0) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return a[1][4] / a[1][1];
}

} // namespace

PoleResult pole_order1(double p, const SelfEnergyModel& m, const QuadratureConfig& cfg)
{
    PoleResult out;
    out.p = p;
    out.e_free = iu::imp(m.z, p);
    out.s1 = sigma1(p, out.e_free, m, cfg);
    out.omega = {out.e_free + out.s1.re, out.s1.im, 0.0, 0.0};
    return out;
}

PoleResult pole_order2(double p, const SelfEnergyModel& m, const QuadratureConfig& cfg,
                       const McConfig& mc, const std::vector<double>& eta_grid)
{
    PoleResult out;
    out.p = p;
    out.e_free = iu::imp(m.z, p);
    out.s1 = sigma1(p, out.e_free, m, cfg);
    const ComplexEnergy ds1 = sigma1_domega(p, out.e_free, m, cfg);
    const std::complex<double> corr = out.s1.value() * ds1.value();
    out.s1_correction = {corr.real(), corr.imag(), 0.0, 0.0};
    Sigma2Result s2 = sigma2(p, out.e_free, m, mc, eta_grid, cfg);
    out.s2 = s2.value;
    out.eta_extrapolated = s2.eta_extrapolated;
    out.diverging = s2.diverging;
    out.omega = {out.e_free + out.s1.re + out.s1_correction.re + out.s2.re,
                 out.s1.im + out.s1_correction.im + out.s2.im,
                 out.s2.stderr_re, out.s2.stderr_im};
    return out;
}

EffectiveMassResult effective_mass(int order, const DimensionlessContext& ctx,
                                   const QuadratureConfig& quad, const McConfig& mc,
                                   const std::vector<double>& eta_grid, double h_factor)
{
    need(order == 1 || order == 2, "effective mass: order must be 1 or 2");
    need(h_factor > 0.0 && 3.0 * h_factor < 1.0,
         "effective mass: stencil must stay below the Landau momentum");

    const SelfEnergyModel m = born_model(ctx);
    EffectiveMassResult out;
    out.z = ctx.z;
    out.g_mass = ctx.g_mass;
    out.h = h_factor * ctx.p_c;

    std::array<double, 4> p{}, shift1{}, shift{}, noise{};
    for (int j = 0; j < 4; ++j) p[j] = out.h * j;
    for (int j = 0; j < 4; ++j) {
        if (order == 1) {
            const PoleResult pole = pole_order1(p[j], m, quad);
            shift1[j] = pole.s1.re;
            shift[j] = shift1[j];
            noise[j] = 0.0;
        } else {
            const PoleResult pole = pole_order2(p[j], m, quad, mc, eta_grid);
            shift1[j] = pole.s1.re;
            shift[j] = pole.s1.re + pole.s1_correction.re + pole.s2.re;
            noise[j] = pole.s2.stderr_re;
        }
    }

    const CurvatureFit f1 = fit_curvature(p, shift1);
    const CurvatureFit fo = fit_curvature(p, shift);
    out.ratio_order1 = 1.0 + 2.0 * f1.c2 / ctx.z;
    out.ratio = 1.0 + 2.0 * fo.c2 / ctx.z;
    double var = 0.0;
    for (int j = 0; j < 4; ++j) var += fo.weight[j] * fo.weight[j] * noise[j] * noise[j];
    out.ratio_stderr = 2.0 * std::sqrt(var) / ctx.z;
    out.m_eff = 1.0 / out.ratio;
    out.linear_coeff = linear_term(p, shift);

    if (ctx.g_mass != 0.0) {
        out.i1 = 3.0 / (32.0 * ctx.g_mass) * (1.0 - out.ratio_order1);
        if (order == 2) {
            const double pref = 3.0 * kPi * kPi / (8.0 * ctx.g_mass * ctx.g_mass);
            out.i2 = pref * (out.ratio - out.ratio_order1);
            out.i2_stderr = pref * out.ratio_stderr;
        }
    }
    return out;
}

std::vector<double> default_z_grid()
{
    std::vector<double> grid(64);
    const double lo = std::log(0.25), hi = std::log(4.0);
    for (int i = 0; i < 64; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 63.0);
    return grid;
}

IFunctionCurve i_function_curves(int order, const PhysicalParams& base,
                                 const std::vector<double>& z_grid,
                                 const QuadratureConfig& quad, const McConfig& mc,
                                 const std::vector<double>& eta_grid)
{
    need(order == 1 || order == 2, "i-function curves: order must be 1 or 2");
    need(!z_grid.empty(), "i-function curves: empty z grid");
    for (double z : z_grid)
        need(std::isfinite(z) && z > 0.0, "i-function curves: z values must be positive");

    const int n = int(z_grid.size());
    IFunctionCurve curve;
    curve.z = z_grid;
    curve.g_mass.resize(n);
    curve.i1.resize(n);
    curve.i2.assign(n, 0.0);
    curve.i2_stderr.assign(n, 0.0);

    auto at = [&](int i) {
        PhysicalParams varied = base;
        varied.impurity_mass = base.boson_mass / z_grid[i];
        const DimensionlessContext ctx = to_dimensionless(varied);
        const EffectiveMassResult r = effective_mass(order, ctx, quad, mc, eta_grid);
        curve.g_mass[i] = r.g_mass;
        curve.i1[i] = r.i1;
        curve.i2[i] = r.i2;
        curve.i2_stderr[i] = r.i2_stderr;
    };
    if (order == 1) {
        parallel_for_index(n, at);  // quadrature only: deterministic either way
    } else {
        for (int i = 0; i < n; ++i) at(i);  // MC inside is already parallel
    }
    return curve;
}

std::vector<RatePoint> rate_curve(const SelfEnergyModel& m, double p_min, double p_max,
                                  int steps, const QuadratureConfig& cfg)
{
    need(steps >= 2, "rate curve: need at least 2 steps");
    need(p_min >= 0.0 && p_max > p_min, "rate curve: bad momentum range");
    std::vector<RatePoint> out(steps);
    for (int i = 0; i < steps; ++i) {
        const double p = p_min + (p_max - p_min) * i / (steps - 1.0);
        out[i] = {p, golden_rule_rate(p, m, cfg)};
    }
    return out;
}

SpectrumScan spectrum_scan(int order, const SelfEnergyModel& m, double p_min, double p_max,
                           int steps, const QuadratureConfig& cfg, const McConfig& mc,
                           const std::vector<double>& eta_grid)
{
    need(order == 1 || order == 2, "spectrum scan: order must be 1 or 2");
    need(steps >= 2, "spectrum scan: need at least 2 steps");
    need(p_min >= 0.0 && p_max > p_min, "spectrum scan: bad momentum range");

    SpectrumScan scan;
    scan.points.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double p = p_min + (p_max - p_min) * i / (steps - 1.0);
        scan.points.push_back(order == 1 ? pole_order1(p, m, cfg)
                                         : pole_order2(p, m, cfg, mc, eta_grid));
    }
    for (int i = 0; i + 1 < int(scan.points.size()); ++i) {
        const auto& a = scan.points[i].omega;
        const auto& b = scan.points[i + 1].omega;
        const double slack = 3.0 * (a.stderr_re + b.stderr_re) + 1e-12;
        if (b.re < a.re - slack) scan.re_monotone = false;
    }
    return scan;
}

} // namespace becpol
