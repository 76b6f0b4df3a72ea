#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "becpol/errors.hpp"

namespace becpol {

// a complex value with batch-statistics uncertainties; deterministic
// quadratures report zero stderr
struct ComplexEnergy {
    double re = 0.0;
    double im = 0.0;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    std::complex<double> value() const { return {re, im}; }
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;  // positive but never binding by default
    int max_subdiv = 2000;
};

struct McConfig {
    enum class Kind { sobol, pseudo };
    std::uint64_t samples = 1u << 17;  // total across batches, rounded up to a multiple
    int batches = 16;                  // >= 2, for the variance estimate
    std::uint64_t seed = 12345;
    Kind kind = Kind::sobol;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples_used = 0;
};

// adaptive Gauss-Kronrod (G7,K15) with worst-interval-first subdivision;
// throws ConvergenceError (carrying the best estimate) when max_subdiv is
// exhausted or the integrand returns non-finite values
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureConfig& cfg);

// Cauchy principal value of  int_a^b f(x)/(x - x0) dx  by singularity
// subtraction:  int (f(x)-f(x0))/(x-x0) dx + f(x0) ln((b-x0)/(x0-a)),
// split at x0 so quadrature nodes never touch the pole.  When x0 lies
// outside (a,b) the integrand is regular and plain quadrature is used.
double principal_value_1d(const std::function<double(double)>& f, double x0,
                          double a, double b, const QuadratureConfig& cfg);

// Monte Carlo mean of f over the unit cube [0,1)^dim (dim <= 6).
// kind = sobol: digitally shifted Sobol points, an independent shift per
// batch, so batch means are independent and the stderr is honest.
// kind = pseudo: mt19937_64 per batch.
// The batch partition is fixed by (samples, batches, seed) alone, so results
// are bit-identical for any thread count.
McEstimate mc_integrate(const std::function<double(const double*)>& f, int dim,
                        const McConfig& cfg);

// same engine evaluating a complex integrand in one pass
ComplexEnergy mc_integrate_complex(const std::function<std::complex<double>(const double*)>& f,
                                   int dim, const McConfig& cfg);

// linear-in-eta extrapolation of F(eta) to eta -> 0+ over a decreasing grid;
// uncertainty combines the fit residual with the propagated point errors.
// diverging is set when |F| keeps growing as eta shrinks (no limit in sight).
struct IepsResult {
    ComplexEnergy value;
    bool diverging = false;
};
IepsResult ieps_extrapolate(const std::function<ComplexEnergy(double)>& evaluator,
                            const std::vector<double>& eta_grid);

// raw digitally-shiftable Sobol generator (Joe-Kuo directions, dim <= 6),
// exposed for tests; coordinate j of point i, shift = 0 gives the classic
// unscrambled sequence
class SobolSequence {
public:
    SobolSequence(int dim, std::uint64_t shift_key);  // shift_key = 0: unshifted
    void point(std::uint64_t index, double* out) const;
    int dim() const { return dim_; }

private:
    int dim_;
    std::uint32_t v_[6][32];
    std::uint32_t shift_[6];
};

std::uint64_t splitmix64(std::uint64_t& state);

// min(BECPOLARON_THREADS, hardware concurrency), at least 1
int thread_budget();

// deterministic parallel map: fn(i) for i in [0,n), any thread count
void parallel_for_index(int n, const std::function<void(int)>& fn);

} // namespace becpol
