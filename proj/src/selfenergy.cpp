#include "becpol/selfenergy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace becpol {
namespace {

constexpr double kPi = std::numbers::pi;

void need(bool ok, const char* what)
{
    if (!ok) throw InputError(what);
}

void check_model(const SelfEnergyModel& m)
{
    need(std::isfinite(m.z) && m.z > 0.0, "selfenergy: mass ratio z must be positive");
    need(std::isfinite(m.n) && m.n >= 0.0, "selfenergy: density must be non-negative");
    need(std::isfinite(m.g), "selfenergy: coupling must be finite");
    need(std::isfinite(m.cutoff) && m.cutoff > 0.0, "selfenergy: cutoff must be positive");
}

// (1/x) log((1+x)/(1-x)) for |x| < 1, even in x.  The log difference cancels
// badly below x ~ 0.25, where the series 2 sum x^(2j)/(2j+1) is exact to
// machine precision in a dozen terms.
double log_ratio_over_x(double x)
{
    const double ax = std::abs(x);
    if (ax < 0.25) {
        const double x2 = x * x;
        double sum = 0.0, term = 1.0;
        for (int j = 0; j < 40; ++j) {
            const double add = term / (2.0 * j + 1.0);
            sum += add;
            if (add < 1e-17) break;  // sum >= 1, so this is a relative cutoff
            term *= x2;
        }
        return 2.0 * sum;
    }
    const double d = std::max(1.0 - ax, 1e-300);  // window edge: finite blow-up
    return std::log1p(2.0 * ax / d) / ax;
}

// T(x) = 2 - (1/x) log((1+x)/(1-x)) = -2 sum_{j>=1} x^(2j)/(2j+1); computed
// from that tail directly below x = 0.25 so the leading 2 never cancels
double t_kernel(double x)
{
    const double ax = std::abs(x);
    if (ax < 0.25) {
        const double x2 = x * x;
        double sum = 0.0, term = x2;
        for (int j = 1; j < 40; ++j) {
            const double add = term / (2.0 * j + 1.0);
            sum += add;
            if (add < 1e-17 * sum) break;
            term *= x2;
        }
        return -2.0 * sum;
    }
    return 2.0 - log_ratio_over_x(x);
}

// angular one-phonon kernel at fixed loop momentum k:
//   J(k) = int_-1^1 dmu / (a + b mu + i0),  a = W - z(p^2+k^2)/2 - eps(k),
//   b = z p k >= 0.  The pole sits at mu0 = -a/b.
struct Kernel1 {
    double z, g, n, p, omega;

    double a(double k) const { return omega - z * (p * p + k * k) / 2.0 - iu::eps(k); }
    double b(double k) const { return z * p * k; }
    // emission window edges: |mu0| < 1  <=>  fplus > 0 > fminus
    double fplus(double k) const { return a(k) + b(k); }   // = W - eps - z(p-k)^2/2
    double fminus(double k) const { return a(k) - b(k); }  // = W - eps - z(p+k)^2/2
    double da(double k) const { return -z * k - iu::deps(k); }
    double kw(double k) const { return k * k * iu::weight(g, n, k); }
};

// interior sign-change roots of f on (0, hi), coarse scan plus bisection;
// an exact zero at a scan node is resolved by a relative nudge
std::vector<double> scan_roots(const std::function<double(double)>& f, double hi, int panels)
{
    std::vector<double> roots;
    auto sample = [&](double x) {
        double v = f(x);
        if (v == 0.0) v = f(x + hi * 1e-13 + 1e-300);
        return v;
    };
    double x0 = 0.0, f0 = sample(hi * 1e-14);
    for (int i = 1; i <= panels; ++i) {
        double x1 = hi * double(i) / panels;
        double f1 = sample(x1);
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double lo = x0, up = x1, flo = f0;
            for (int it = 0; it < 200 && up - lo > 1e-16 * (1.0 + up); ++it) {
                double mid = 0.5 * (lo + up);
                double fm = f(mid);
                if (fm == 0.0) { lo = up = mid; break; }
                if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { up = mid; }
            }
            roots.push_back(0.5 * (lo + up));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

// keep roots strictly inside (0, hi) and separated; endpoint-touching roots
// are regularized by the k^2 w(k) numerator and need no special panel
std::vector<double> interior(std::vector<double> r, double hi)
{
    std::sort(r.begin(), r.end());
    std::vector<double> out;
    for (double x : r) {
        if (x <= hi * 1e-9 || x >= hi * (1.0 - 1e-12)) continue;
        if (!out.empty() && x - out.back() < hi * 1e-12) continue;
        out.push_back(x);
    }
    return out;
}

// S1 at p = 0: the angular integral is trivial and the k-space pole (if any)
// is handled by a 1-D principal value plus the explicit residue
ComplexEnergy sigma1_rest(double omega, const SelfEnergyModel& m, const QuadratureConfig& cfg)
{
    Kernel1 kn{m.z, m.g, m.n, 0.0, omega};
    const double L = m.cutoff;
    auto plain = [&](double k) { return kn.kw(k) / kn.a(k); };

    // a(k) decreases from a(0) = W; a root exists iff W > 0 and a(L) < 0
    if (omega <= 0.0 || kn.a(L) >= 0.0) {
        double re = integrate_1d(plain, 0.0, L, cfg);
        return {re / (2.0 * kPi * kPi), 0.0, 0.0, 0.0};
    }
    auto fr = scan_roots([&](double k) { return kn.a(k); }, L, 800);
    need(!fr.empty(), "selfenergy: lost the on-shell root at p = 0");
    const double ks = fr.front();
    const double ap = kn.da(ks);  // < 0
    const double lim = kn.kw(ks) / ap;
    auto wrapped = [&](double k) {
        if (std::abs(k - ks) < 1e-12 * (1.0 + ks)) return lim;
        return kn.kw(k) * (k - ks) / kn.a(k);
    };
    double re = principal_value_1d(wrapped, ks, 0.0, L, cfg) / (2.0 * kPi * kPi);
    double im = -kn.kw(ks) / (2.0 * kPi * std::abs(ap));
    return {re, im, 0.0, 0.0};
}

} // namespace

SelfEnergyModel born_model(const DimensionlessContext& ctx)
{
    return {ctx.z, 2.0 * kPi * ctx.a_ib * (1.0 + ctx.z), ctx.density, ctx.cutoff};
}

SelfEnergyModel cutoff_model(const DimensionlessContext& ctx)
{
    double g0 = 2.0 * kPi * ctx.a_ib * (1.0 + ctx.z);
    return {ctx.z, g0 * (1.0 + 2.0 * ctx.a_ib * ctx.cutoff / kPi), ctx.density, ctx.cutoff};
}

ComplexEnergy sigma1(double p, double omega, const SelfEnergyModel& m, const QuadratureConfig& cfg)
{
    check_model(m);
    need(std::isfinite(p) && p >= 0.0, "selfenergy: momentum must be non-negative");
    need(std::isfinite(omega), "selfenergy: omega must be finite");
    if (m.g == 0.0 || m.n == 0.0) return {};
    if (p == 0.0) return sigma1_rest(omega, m, cfg);

    Kernel1 kn{m.z, m.g, m.n, p, omega};
    const double L = m.cutoff;

    // the angular pole crosses the interval edges where fplus or fminus
    // vanish; between those momenta the branch of J is fixed
    auto edges = scan_roots([&](double k) { return kn.fplus(k); }, L, 800);
    auto e2 = scan_roots([&](double k) { return kn.fminus(k); }, L, 800);
    edges.insert(edges.end(), e2.begin(), e2.end());
    edges = interior(std::move(edges), L);
    std::vector<double> cuts{0.0};
    cuts.insert(cuts.end(), edges.begin(), edges.end());
    cuts.push_back(L);

    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const double km = 0.5 * (lo + hi);
        const bool inside = kn.fplus(km) > 0.0 && kn.fminus(km) < 0.0;

        auto re_integrand = [&](double k) {
            const double kw = kn.kw(k);
            if (kw == 0.0) return 0.0;
            const double av = kn.a(k), bv = kn.b(k);
            if (inside) {
                const double mu0 = -av / bv;
                if (std::abs(mu0) < 1.0 - 1e-12) {
                    auto one = [](double) { return 1.0; };
                    return kw * principal_value_1d(one, mu0, -1.0, 1.0, cfg) / bv;
                }
                // stray node within rounding of the window edge: the closed
                // principal value is still exact
                return kw * std::log(std::abs(kn.fplus(k) / kn.fminus(k))) / bv;
            }
            if (std::abs(av) > bv) return kw * log_ratio_over_x(bv / av) / av;
            return kw * std::log(std::abs(kn.fplus(k) / kn.fminus(k))) / bv;
        };
        re += integrate_1d(re_integrand, lo, hi, cfg);

        if (inside) {
            auto im_integrand = [&](double k) {
                const double kw = kn.kw(k);
                return kw == 0.0 ? 0.0 : kw / kn.b(k);
            };
            im += -kPi * integrate_1d(im_integrand, lo, hi, cfg);
        }
    }
    const double scale = 1.0 / (4.0 * kPi * kPi);
    return {scale * re, scale * im, 0.0, 0.0};
}

ComplexEnergy sigma1_domega(double p, double omega, const SelfEnergyModel& m,
                            const QuadratureConfig& cfg)
{
    check_model(m);
    need(std::isfinite(p) && p >= 0.0, "selfenergy: momentum must be non-negative");
    need(std::isfinite(omega), "selfenergy: omega must be finite");
    if (m.g == 0.0 || m.n == 0.0) return {};

    Kernel1 kn{m.z, m.g, m.n, p, omega};
    const double L = m.cutoff;
    const double scale = 1.0 / (4.0 * kPi * kPi);

    // dJ/dW = -2 / ((fplus + i0)(fminus + i0)); at p = 0 the two factors
    // coincide and an interior root would be a non-integrable double pole
    if (p == 0.0) {
        need(omega <= 0.0 || kn.a(L) >= 0.0,
             "selfenergy: dS1/dW at p = 0 is undefined on the emission continuum");
        auto f = [&](double k) {
            const double av = kn.a(k);
            return -2.0 * kn.kw(k) / (av * av);
        };
        return {scale * integrate_1d(f, 0.0, L, cfg), 0.0, 0.0, 0.0};
    }

    auto rp = interior(scan_roots([&](double k) { return kn.fplus(k); }, L, 800), L);
    auto rm = interior(scan_roots([&](double k) { return kn.fminus(k); }, L, 800), L);
    struct Pole { double k; bool plus; };
    std::vector<Pole> poles;
    for (double r : rp) poles.push_back({r, true});
    for (double r : rm) poles.push_back({r, false});
    std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) { return a.k < b.k; });

    auto regular = [&](double k) {
        return -2.0 * kn.kw(k) / (kn.fplus(k) * kn.fminus(k));
    };

    double re = 0.0, im = 0.0;
    if (poles.empty()) {
        re = integrate_1d(regular, 0.0, L, cfg);
    } else {
        // one cell per pole, bounded by midpoints between neighbours, so each
        // principal value sees exactly one singular factor
        std::vector<double> walls{0.0};
        for (std::size_t i = 0; i + 1 < poles.size(); ++i)
            walls.push_back(0.5 * (poles[i].k + poles[i + 1].k));
        walls.push_back(L);
        for (std::size_t i = 0; i < poles.size(); ++i) {
            const double r = poles[i].k;
            const bool plus = poles[i].plus;
            const double dsing = plus ? kn.da(r) + kn.z * p : kn.da(r) - kn.z * p;
            const double other = plus ? kn.fminus(r) : kn.fplus(r);
            const double lim = -2.0 * kn.kw(r) / (dsing * other);
            auto wrapped = [&](double k) {
                if (std::abs(k - r) < 1e-12 * (1.0 + r)) return lim;
                return regular(k) * (k - r);
            };
            re += principal_value_1d(wrapped, r, walls[i], walls[i + 1], cfg);
            im += 2.0 * kPi * kn.kw(r) / (other * std::abs(dsing));
        }
    }
    return {scale * re, scale * im, 0.0, 0.0};
}

double golden_rule_rate(double p, const SelfEnergyModel& m, const QuadratureConfig& cfg)
{
    check_model(m);
    need(std::isfinite(p) && p >= 0.0, "selfenergy: momentum must be non-negative");
    const double pc = 1.0 / m.z;
    if (p <= pc || m.g == 0.0 || m.n == 0.0) return 0.0;

    // the emission delta fixes cos(theta) = k/(2p) + sqrt(k^2+4)/(2 z p),
    // monotone in k with value p_c/p < 1 at k = 0; the window closes where it
    // reaches 1, strictly below k = 2p
    auto excess = [&](double k) {
        return k / (2.0 * p) + std::sqrt(k * k + 4.0) / (2.0 * m.z * p) - 1.0;
    };
    double lo = 0.0, hi = 2.0 * p;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    const double kmax = std::min(0.5 * (lo + hi), m.cutoff);
    auto body = [](double k) { return 2.0 * k * k / std::sqrt(k * k + 4.0); };  // k^3/eps
    const double val = integrate_1d(body, 0.0, kmax, cfg);
    return m.g * m.g * m.n / (4.0 * kPi * m.z * p) * val;
}

bool below_emission_thresholds(double p, double omega, const SelfEnergyModel& m)
{
    check_model(m);
    need(std::isfinite(p) && p >= 0.0, "selfenergy: momentum must be non-negative");
    const double L = m.cutoff;

    // minimize a 1-D energy denominator on [lo, hi]: coarse grid, then golden
    // section inside the best bracket
    auto minimize = [](const std::function<double(double)>& f, double lo, double hi) {
        const int grid = 1024;
        int best = 0;
        double fbest = f(lo);
        for (int i = 1; i <= grid; ++i) {
            double v = f(lo + (hi - lo) * double(i) / grid);
            if (v < fbest) { fbest = v; best = i; }
        }
        double a = lo + (hi - lo) * double(std::max(0, best - 1)) / grid;
        double b = lo + (hi - lo) * double(std::min(grid, best + 1)) / grid;
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - r * (b - a), x2 = a + r * (b - a);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - r * (b - a); f1 = f(x1); }
            else         { a = x1; x1 = x2; f1 = f2; x2 = a + r * (b - a); f2 = f(x2); }
        }
        return std::min(f1, f2);
    };

    // infimum at k = 0 is allowed: the k^2 w(k) numerator regularizes the
    // boundary, so only interior resonances matter
    const double delta = 1e-6 * L;
    auto one = [&](double k) { return iu::eps(k) + m.z * (p - k) * (p - k) / 2.0; };
    auto two = [&](double K) { return 2.0 * iu::eps(K / 2.0) + m.z * (p - K) * (p - K) / 2.0; };
    const double t1 = minimize(one, delta, L);
    const double t2 = minimize(two, 2.0 * delta, 2.0 * L);
    const double scale = std::max({1.0, std::abs(omega), m.z * p * p / 2.0});
    return omega < std::min(t1, t2) - 1e-12 * scale;
}

Sigma2Result sigma2(double p, double omega, const SelfEnergyModel& m, const McConfig& mc,
                    const std::vector<double>& eta_grid, const QuadratureConfig& cfg)
{
    (void)cfg;
    check_model(m);
    need(std::isfinite(p) && p >= 0.0, "selfenergy: momentum must be non-negative");
    need(std::isfinite(omega), "selfenergy: omega must be finite");
    if (m.g == 0.0 || m.n == 0.0) return {};

    const double L = m.cutoff;
    const double z = m.z;
    // cubic stretch concentrates samples at small momenta where the
    // integrand varies fastest; the jacobian keeps the measure exact
    auto mapped = [&](double eta) {
        return std::function<std::complex<double>(const double*)>([=](const double* u) {
            const double k = L * u[0] * u[0] * u[0];
            const double q = L * u[1] * u[1] * u[1];
            if (k < 1e-12 || q < 1e-12) return std::complex<double>(0.0, 0.0);
            const double jac = 9.0 * L * L * u[0] * u[0] * u[1] * u[1] * 8.0 * kPi;
            const double mu = 2.0 * u[2] - 1.0, nu = 2.0 * u[3] - 1.0;
            const double phi = 2.0 * kPi * u[4];
            const double cross = mu * nu + std::sqrt(std::max(0.0, (1.0 - mu * mu) * (1.0 - nu * nu)))
                                           * std::cos(phi);
            const double pk = p * p + k * k - 2.0 * p * k * mu;
            const double pq = p * p + q * q - 2.0 * p * q * nu;
            const double pkq = std::max(0.0, pk + q * q - 2.0 * p * q * nu + 2.0 * k * q * cross);
            const std::complex<double> ieta(0.0, eta);
            const std::complex<double> A = iu::eps(k) + z * pk / 2.0 - omega - ieta;
            const std::complex<double> C = iu::eps(q) + z * pq / 2.0 - omega - ieta;
            const std::complex<double> B = iu::eps(k) + iu::eps(q) + z * pkq / 2.0 - omega - ieta;
            const double num = k * k * iu::weight(m.g, m.n, k) * q * q * iu::weight(m.g, m.n, q);
            const std::complex<double> val = num * (A + C) / (A * A * B * C);
            return -jac / std::pow(2.0 * kPi, 5) * val;
        });
    };

    Sigma2Result out;
    if (below_emission_thresholds(p, omega, m)) {
        out.value = mc_integrate_complex(mapped(0.0), 5, mc);
        return out;
    }
    IepsResult ir = ieps_extrapolate(
        [&](double eta) { return mc_integrate_complex(mapped(eta), 5, mc); }, eta_grid);
    out.value = ir.value;
    out.eta_extrapolated = true;
    out.diverging = ir.diverging;
    return out;
}

ComplexEnergy sigma(const SelfEnergyRequest& req, const SelfEnergyModel& m)
{
    need(req.order == 1 || req.order == 2, "selfenergy: order must be 1 or 2");
    ComplexEnergy s1 = sigma1(req.p, req.omega, m, req.quad);
    if (req.order == 1) return s1;
    Sigma2Result s2 = sigma2(req.p, req.omega, m, req.mc, req.eta_grid, req.quad);
    return {s1.re + s2.value.re, s1.im + s2.value.im, s2.value.stderr_re, s2.value.stderr_im};
}

double second_order_zero_point(const SelfEnergyModel& m, const QuadratureConfig& cfg)
{
    check_model(m);
    if (m.g == 0.0 || m.n == 0.0) return 0.0;
    const double L = m.cutoff, z = m.z;
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-13);

    // at p = 0, W = 0 the angular average of (A+C)/(A^2 B C) closes to
    //   (A+C) T / (2 A^2 C^2),  T = 2 - (B0/beta) log((B0+beta)/(B0-beta)),
    // B0 = A + C, beta = z k k'; AM-GM keeps beta < B0, so x stays inside the
    // unit interval
    auto pair_term = [&](double A, double C, double beta) {
        const double B0 = A + C;
        return B0 * t_kernel(beta / B0) / (2.0 * A * A * C * C);
    };

    auto outer = [&](double k) {
        if (k == 0.0) return 0.0;
        const double A = iu::eps(k) + z * k * k / 2.0;
        const double wk = k * k * iu::weight(m.g, m.n, k);
        auto row = [&](double q) {
            if (q == 0.0) return 0.0;
            const double C = iu::eps(q) + z * q * q / 2.0;
            const double wq = q * q * iu::weight(m.g, m.n, q);
            return wq * pair_term(A, C, z * k * q);
        };
        return wk * integrate_1d(row, 0.0, L, inner);
    };
    return integrate_1d(outer, 0.0, L, cfg) / (8.0 * kPi * kPi * kPi * kPi);
}

double second_order_zero_point_printed(const SelfEnergyModel& m, const QuadratureConfig& cfg)
{
    check_model(m);
    if (m.g == 0.0 || m.n == 0.0) return 0.0;
    const double L = m.cutoff, z = m.z;
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-13);

    // the closed printed form, assembled from its own algebra (note: twice
    // the combined evaluator above; the ratio is reported as a diagnostic)
    auto outer = [&](double k) {
        if (k == 0.0) return 0.0;
        const double A = iu::eps(k) + z * k * k / 2.0;
        const double wk = k * k * iu::weight(m.g, m.n, k);
        auto row = [&](double q) {
            if (q == 0.0) return 0.0;
            const double C = iu::eps(q) + z * q * q / 2.0;
            const double wq = q * q * iu::weight(m.g, m.n, q);
            const double B0 = A + C, beta = z * k * q;
            return wq * B0 * t_kernel(beta / B0) / (A * A * C * C);
        };
        return wk * integrate_1d(row, 0.0, L, inner);
    };
    return integrate_1d(outer, 0.0, L, cfg) / (8.0 * kPi * kPi * kPi * kPi);
}

double i0_finite(double z, double cutoff, const QuadratureConfig& cfg)
{
    need(std::isfinite(z) && z >= 0.0, "selfenergy: mass ratio z must be non-negative");
    need(std::isfinite(cutoff) && cutoff > 0.0, "selfenergy: cutoff must be positive");
    // L - (1+z) int l^2/(s(s+zl)) collapsed to one convergent integrand;
    // s - l is computed as 4/(s + l) to avoid cancellation at large l
    auto f = [z](double l) {
        const double s = std::sqrt(l * l + 4.0);
        return 4.0 * (1.0 + z * l / (s + l)) / (s * (s + z * l));
    };
    QuadratureConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1e-12);
    return integrate_1d(f, 0.0, cutoff, tight);
}

double i0_numeric(double z, const QuadratureConfig& cfg)
{
    // tail of the defining integrand is (4+2z)/((1+z) l^2) + O(l^-4), so one
    // Richardson step in 1/L leaves O(L^-3); L = 8192 puts that below 1e-11
    const double L = 8192.0;
    return 2.0 * i0_finite(z, 2.0 * L, cfg) - i0_finite(z, L, cfg);
}

double i0_closed(double z)
{
    need(std::isfinite(z) && z >= 0.0, "selfenergy: mass ratio z must be non-negative");
    const double t = z - 1.0;
    if (std::abs(t) < 1e-4) {
        const double r2 = std::sqrt(2.0);
        return 2.0 * r2 / 3.0 - 11.0 * r2 / 15.0 * t + 43.0 * r2 / 84.0 * t * t;
    }
    const double s = std::sqrt(z * z + 1.0);
    if (z > 1.0) {
        const double r = std::sqrt((z - 1.0) * (z + 1.0));
        return (2.0 * z * r - 2.0 * std::log(z + r)) / (r * r * r * s);
    }
    const double r = std::sqrt((1.0 - z) * (1.0 + z));
    return 2.0 * (std::acos(z) - z * r) / (r * r * r * s);
}

double zero_point_energy_order1(const DimensionlessContext& ctx, const QuadratureConfig& cfg)
{
    SelfEnergyModel born = born_model(ctx);
    SelfEnergyModel cut = cutoff_model(ctx);
    ComplexEnergy s1 = sigma1(0.0, 0.0, born, cfg);
    // first Born correction in the contact term cancels the linear cutoff
    // growth of S1; the imaginary part vanishes identically at W = 0
    return cut.g * ctx.density + s1.re;
}

I0Report i0_report(const DimensionlessContext& ctx, const QuadratureConfig& cfg)
{
    I0Report rep;
    rep.z = ctx.z;
    rep.cutoff = ctx.cutoff;
    rep.e1 = zero_point_energy_order1(ctx, cfg);
    DimensionlessContext doubled = ctx;
    doubled.cutoff *= 2.0;
    rep.e1_doubled = zero_point_energy_order1(doubled, cfg);
    rep.rel_drift = rep.e1 == 0.0 ? 0.0 : std::abs(rep.e1_doubled / rep.e1 - 1.0);
    rep.prefactor = 2.0 * kPi * ctx.a_ib * ctx.density * (1.0 + ctx.z);
    rep.i0_extracted = (rep.prefactor == 0.0 || ctx.a_ib == 0.0)
                           ? std::numeric_limits<double>::quiet_NaN()
                           : (rep.e1 / rep.prefactor - 1.0) * kPi / (2.0 * ctx.a_ib);
    rep.i0_num = i0_numeric(ctx.z, cfg);
    rep.i0_cl = i0_closed(ctx.z);
    const double gp = ctx.a_bb * ctx.a_bb * ctx.a_bb * ctx.density;
    rep.mu_b_reduced = 4.0 * kPi * ctx.a_bb * ctx.density
                       * (1.0 + 32.0 / 3.0 * std::sqrt(gp / kPi));
    rep.matches_mu_b_case = std::abs(ctx.z - 1.0) < 1e-12
                            && std::abs(ctx.a_bb - ctx.a_ib) < 1e-12 * std::max(ctx.a_bb, 1e-300);
    return rep;
}

} // namespace becpol
