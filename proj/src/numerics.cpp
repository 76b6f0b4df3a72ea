#include "becpol/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <thread>

namespace becpol {

namespace {

// 15-point Kronrod extension of 7-point Gauss; positive half of the rule
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double val;
    double err;
    bool finite;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    bool ok = true;
    const double fc = f(mid);
    ok = ok && std::isfinite(fc);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        ok = ok && std::isfinite(f1) && std::isfinite(f2);
        const double fsum = f1 + f2;
        kron += wgk[j] * fsum;
        if (j % 2 == 1) gauss += wg[j / 2] * fsum;
    }
    const double val = kron * h;
    const double err = std::abs((kron - gauss) * h);
    return {val, err, ok};
}

struct Interval {
    double a, b, val, err;
    bool operator<(const Interval& o) const { return err < o.err; }
};

} // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureConfig& cfg) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw InputError("integrate_1d: endpoints must be finite");
    if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0) || cfg.max_subdiv < 1)
        throw InputError("integrate_1d: tolerances must be positive");
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);

    auto first = gk15(f, lo, hi);
    if (!first.finite)
        throw ConvergenceError("integrate_1d: non-finite integrand value", sign * first.val, first.err);

    std::priority_queue<Interval> heap;
    heap.push({lo, hi, first.val, first.err});
    double frozen_val = 0.0, frozen_err = 0.0;  // panels too narrow to split further
    int splits = 0;
    double sum_val = first.val, sum_err = first.err;  // running totals over the heap
    while (sum_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum_val + frozen_val)) &&
           !heap.empty()) {
        if (splits >= cfg.max_subdiv)
            throw ConvergenceError("integrate_1d: max_subdiv exhausted",
                                   sign * (sum_val + frozen_val), sum_err + frozen_err);
        Interval worst = heap.top();
        heap.pop();
        sum_val -= worst.val;
        sum_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        const double width_floor =
            50.0 * std::numeric_limits<double>::epsilon() *
            std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
        if (worst.b - worst.a < width_floor) {
            frozen_val += worst.val;
            frozen_err += worst.err;
            continue;
        }
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        if (!left.finite || !right.finite)
            throw ConvergenceError("integrate_1d: non-finite integrand value",
                                   sign * (sum_val + frozen_val + left.val + right.val),
                                   sum_err + frozen_err);
        heap.push({worst.a, mid, left.val, left.err});
        heap.push({mid, worst.b, right.val, right.err});
        sum_val += left.val + right.val;
        sum_err += left.err + right.err;
        ++splits;
    }
    if (heap.empty() && frozen_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(frozen_val)))
        throw ConvergenceError("integrate_1d: panels hit width floor before tolerance",
                               sign * frozen_val, frozen_err);
    return sign * (sum_val + frozen_val);
}

double principal_value_1d(const std::function<double(double)>& f, double x0,
                          double a, double b, const QuadratureConfig& cfg) {
    if (!(a < b)) throw InputError("principal_value_1d: requires a < b");
    if (!(x0 > a && x0 < b)) {
        // pole outside the open interval: the integrand is regular there
        return integrate_1d([&](double x) { return f(x) / (x - x0); }, a, b, cfg);
    }
    const double fx0 = f(x0);
    auto sub = [&](double x) {
        if (x == x0) return 0.0;  // not hit by interior nodes; belt and braces
        return (f(x) - fx0) / (x - x0);
    };
    const double left = integrate_1d(sub, a, x0, cfg);
    const double right = integrate_1d(sub, x0, b, cfg);
    return left + right + fx0 * std::log((b - x0) / (x0 - a));
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

// Joe-Kuo primitive polynomials and initial direction numbers for dims 2..6
// (dim 1 is the van der Corput sequence)
struct SobolDim {
    int s;                // polynomial degree
    std::uint32_t a;      // coefficient bits a_1..a_{s-1}, MSB first
    std::uint32_t m[4];   // initial m_1..m_s
};
constexpr SobolDim kSobolDims[5] = {
    {1, 0, {1, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0}},
    {3, 1, {1, 3, 1, 0}},
    {3, 2, {1, 1, 1, 0}},
    {4, 1, {1, 1, 3, 3}},
};

} // namespace

SobolSequence::SobolSequence(int dim, std::uint64_t shift_key) : dim_(dim) {
    if (dim < 1 || dim > 6) throw InputError("SobolSequence: dim must be in [1, 6]");
    for (int k = 0; k < 32; ++k) v_[0][k] = 1u << (31 - k);
    for (int d = 1; d < dim; ++d) {
        const SobolDim& sd = kSobolDims[d - 1];
        for (int k = 0; k < sd.s; ++k) v_[d][k] = sd.m[k] << (31 - k);
        for (int k = sd.s; k < 32; ++k) {
            std::uint32_t vk = v_[d][k - sd.s] ^ (v_[d][k - sd.s] >> sd.s);
            for (int i = 1; i < sd.s; ++i)
                if ((sd.a >> (sd.s - 1 - i)) & 1u) vk ^= v_[d][k - i];
            v_[d][k] = vk;
        }
    }
    std::uint64_t st = shift_key;
    for (int d = 0; d < dim; ++d)
        shift_[d] = shift_key == 0 ? 0u : static_cast<std::uint32_t>(splitmix64(st) >> 32);
}

void SobolSequence::point(std::uint64_t index, double* out) const {
    const std::uint64_t gray = index ^ (index >> 1);
    for (int d = 0; d < dim_; ++d) {
        std::uint32_t x = 0;
        std::uint64_t g = gray;
        int bit = 0;
        while (g) {
            if (g & 1ull) x ^= v_[d][bit];
            g >>= 1;
            ++bit;
        }
        x ^= shift_[d];
        out[d] = static_cast<double>(x) * 0x1.0p-32;
    }
}

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("BECPOLARON_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) hw = std::min<long>(hw, v);
    }
    return hw;
}

void parallel_for_index(int n, const std::function<void(int)>& fn) {
    const int threads = std::min(thread_budget(), std::max(n, 1));
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        futs.push_back(std::async(std::launch::async, [&, t] {
            for (int i = t; i < n; i += threads) fn(i);
        }));
    }
    for (auto& fu : futs) fu.get();
}

namespace {

void check_mc(const McConfig& cfg, int dim) {
    if (dim < 1 || dim > 6) throw InputError("mc_integrate: dim must be in [1, 6]");
    if (cfg.batches < 2) throw InputError("mc_integrate: batches must be >= 2");
    if (cfg.samples < static_cast<std::uint64_t>(cfg.batches))
        throw InputError("mc_integrate: samples must be >= batches");
}

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t batch, std::uint64_t salt) {
    std::uint64_t st = seed ^ (0x9E3779B97F4A7C15ull * (batch + 1)) ^ salt;
    return splitmix64(st);
}

// per-batch mean of a complex integrand; the two MC kinds share this shape
std::complex<double> batch_mean(const std::function<std::complex<double>(const double*)>& f,
                                int dim, const McConfig& cfg, std::uint64_t per_batch,
                                int batch) {
    double pt[6];
    std::complex<double> acc{0.0, 0.0};
    if (cfg.kind == McConfig::Kind::sobol) {
        SobolSequence seq(dim, mix_key(cfg.seed, batch, 0xA5A5A5A5ull));
        for (std::uint64_t i = 0; i < per_batch; ++i) {
            seq.point(i, pt);
            acc += f(pt);
        }
    } else {
        std::mt19937_64 eng(mix_key(cfg.seed, batch, 0x5EEDull));
        for (std::uint64_t i = 0; i < per_batch; ++i) {
            for (int d = 0; d < dim; ++d)
                pt[d] = static_cast<double>(eng() >> 11) * 0x1.0p-53;
            acc += f(pt);
        }
    }
    return acc / static_cast<double>(per_batch);
}

} // namespace

ComplexEnergy mc_integrate_complex(const std::function<std::complex<double>(const double*)>& f,
                                   int dim, const McConfig& cfg) {
    check_mc(cfg, dim);
    const int B = cfg.batches;
    const std::uint64_t per_batch = (cfg.samples + B - 1) / B;
    std::vector<std::complex<double>> means(B);
    parallel_for_index(B, [&](int b) { means[b] = batch_mean(f, dim, cfg, per_batch, b); });

    std::complex<double> mean{0.0, 0.0};
    for (const auto& m : means) mean += m;
    mean /= static_cast<double>(B);
    double var_re = 0.0, var_im = 0.0;
    for (const auto& m : means) {
        var_re += (m.real() - mean.real()) * (m.real() - mean.real());
        var_im += (m.imag() - mean.imag()) * (m.imag() - mean.imag());
    }
    const double norm = 1.0 / (static_cast<double>(B) * (B - 1));
    ComplexEnergy out;
    out.re = mean.real();
    out.im = mean.imag();
    out.stderr_re = std::sqrt(var_re * norm);
    out.stderr_im = std::sqrt(var_im * norm);
    return out;
}

McEstimate mc_integrate(const std::function<double(const double*)>& f, int dim,
                        const McConfig& cfg) {
    auto wrapped = [&](const double* x) { return std::complex<double>(f(x), 0.0); };
    const ComplexEnergy ce = mc_integrate_complex(wrapped, dim, cfg);
    const int B = cfg.batches;
    const std::uint64_t per_batch = (cfg.samples + B - 1) / B;
    return {ce.re, ce.stderr_re, per_batch * static_cast<std::uint64_t>(B)};
}

IepsResult ieps_extrapolate(const std::function<ComplexEnergy(double)>& evaluator,
                            const std::vector<double>& eta_grid) {
    const int n = static_cast<int>(eta_grid.size());
    if (n < 2) throw InputError("ieps_extrapolate: need at least two eta values");
    for (int i = 0; i < n; ++i) {
        if (!(eta_grid[i] > 0)) throw InputError("ieps_extrapolate: eta values must be > 0");
        if (i && !(eta_grid[i] < eta_grid[i - 1]))
            throw InputError("ieps_extrapolate: eta grid must be strictly decreasing");
    }
    std::vector<ComplexEnergy> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = evaluator(eta_grid[i]);

    // least-squares intercept of a + b*eta; w_i are the intercept weights
    double S0 = n, S1 = 0, S2 = 0;
    for (double e : eta_grid) { S1 += e; S2 += e * e; }
    const double det = S0 * S2 - S1 * S1;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = (S2 - eta_grid[i] * S1) / det;

    auto fit = [&](auto get_y, auto get_s) {
        double a = 0, var = 0;
        for (int i = 0; i < n; ++i) {
            a += w[i] * get_y(vals[i]);
            var += w[i] * w[i] * get_s(vals[i]) * get_s(vals[i]);
        }
        const double slope_num = [&] {
            double s = 0;
            for (int i = 0; i < n; ++i) s += (S0 * eta_grid[i] - S1) / det * get_y(vals[i]);
            return s;
        }();
        double res2 = 0;
        for (int i = 0; i < n; ++i) {
            const double fit_i = a + slope_num * eta_grid[i];
            res2 += (get_y(vals[i]) - fit_i) * (get_y(vals[i]) - fit_i);
        }
        const double resid = std::sqrt(res2 / std::max(n - 2, 1));
        return std::pair<double, double>(a, std::hypot(std::sqrt(var), resid));
    };
    auto [are, sre] = fit([](const ComplexEnergy& v) { return v.re; },
                          [](const ComplexEnergy& v) { return v.stderr_re; });
    auto [aim, sim] = fit([](const ComplexEnergy& v) { return v.im; },
                          [](const ComplexEnergy& v) { return v.stderr_im; });

    IepsResult out;
    out.value = {are, aim, sre, sim};
    const double mag_first = std::hypot(vals.front().re, vals.front().im);
    const double mag_last = std::hypot(vals.back().re, vals.back().im);
    const double noise = 10.0 * std::hypot(vals.back().stderr_re, vals.back().stderr_im);
    out.diverging = mag_last > 2.0 * mag_first && mag_last > noise;
    return out;
}

} // namespace becpol
