#include "becpol/model.hpp"

#include <cmath>
#include <string>

namespace becpol {

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) throw InputError("invalid parameter '" + field + "': " + why);
}
} // namespace

bool validate(const PhysicalParams& p) {
    require(std::isfinite(p.boson_mass) && p.boson_mass > 0, "boson_mass", "must be finite and > 0");
    require(std::isfinite(p.impurity_mass) && p.impurity_mass > 0, "impurity_mass", "must be finite and > 0");
    require(std::isfinite(p.density) && p.density > 0, "density", "must be finite and > 0");
    require(std::isfinite(p.scattering_length_bb) && p.scattering_length_bb > 0,
            "scattering_length_bb", "condensate must be repulsive (> 0)");
    require(std::isfinite(p.scattering_length_ib) && p.scattering_length_ib >= 0,
            "scattering_length_ib", "must be finite and >= 0");
    require(std::isfinite(p.uv_cutoff) && p.uv_cutoff > 0, "uv_cutoff", "must be finite and > 0");
    // dilute-gas sanity: the Bogoliubov description needs a_s n^(1/3) small
    return p.scattering_length_bb * std::cbrt(p.density) > 0.1;
}

double boson_interaction(const PhysicalParams& p) {
    return 4.0 * pi * p.scattering_length_bb / p.boson_mass;
}

double speed_of_sound(const PhysicalParams& p) {
    return std::sqrt(p.density * boson_interaction(p) / p.boson_mass);
}

double reduced_mass(const PhysicalParams& p) {
    return p.boson_mass * p.impurity_mass / (p.boson_mass + p.impurity_mass);
}

double healing_momentum(const PhysicalParams& p) {
    return p.boson_mass * speed_of_sound(p);
}

double landau_momentum(const PhysicalParams& p) {
    return p.impurity_mass * speed_of_sound(p);
}

double bogoliubov_dispersion(double k, const PhysicalParams& p) {
    const double kin = k * k / (2.0 * p.boson_mass);
    const double c = speed_of_sound(p);
    return std::sqrt(kin * kin + c * c * k * k);
}

double impurity_dispersion(double k, const PhysicalParams& p) {
    return k * k / (2.0 * p.impurity_mass);
}

double interaction_weight(double k, const PhysicalParams& p, double g) {
    if (k == 0.0) return 0.0;  // vanishes like k at small k
    return g * g * p.density * k * k / (2.0 * p.boson_mass * bogoliubov_dispersion(k, p));
}

double renormalized_coupling(double a, double cutoff, const PhysicalParams& p) {
    require(std::isfinite(a) && a >= 0, "scattering_length", "must be finite and >= 0");
    require(std::isfinite(cutoff) && cutoff > 0, "uv_cutoff", "must be finite and > 0");
    const double lam = cutoff * healing_momentum(p);
    return (2.0 * pi * a / reduced_mass(p)) * (1.0 + 2.0 * a * lam / pi);
}

double chemical_potential_bogoliubov(const PhysicalParams& p) {
    const double a = p.scattering_length_bb;
    const double lhy = (32.0 / 3.0) * std::sqrt(a * a * a * p.density / pi);
    return (4.0 * pi * a * p.density / p.boson_mass) * (1.0 + lhy);
}

TransformCoefficients transform_coefficients(double k, const PhysicalParams& p) {
    require(std::isfinite(k) && k > 0, "k", "transform coefficients need k > 0");
    const double l = k / healing_momentum(p);
    const double mu = iu::mu_of(l);
    // mu < -1 for all k > 0, so mu^2 - 1 > 0; computed as a product to keep
    // precision when mu is close to -1 (small k)
    const double disc = (mu - 1.0) * (mu + 1.0);
    const double s = std::sqrt(disc);
    return {mu / s, 1.0 / s, mu};
}

DimensionlessContext to_dimensionless(const PhysicalParams& p) {
    const bool warn = validate(p);
    DimensionlessContext ctx;
    ctx.mass_scale = p.boson_mass;
    ctx.sound_speed = speed_of_sound(p);
    const double mc = p.boson_mass * ctx.sound_speed;
    ctx.z = p.boson_mass / p.impurity_mass;
    ctx.density = p.density / (mc * mc * mc);
    ctx.a_bb = p.scattering_length_bb * mc;
    ctx.a_ib = p.scattering_length_ib * mc;
    ctx.cutoff = p.uv_cutoff;
    ctx.gas_parameter = std::sqrt(std::pow(p.scattering_length_bb, 3) * p.density);
    // g_M = a^2 n / p_c * (m/m_r)^2 with p_c = M c; in m*c units p_c = 1/z
    ctx.p_c = 1.0 / ctx.z;
    const double mass_ratio = 1.0 + ctx.z;  // m / m_r
    ctx.g_mass = ctx.a_ib * ctx.a_ib * ctx.density * ctx.z * mass_ratio * mass_ratio;
    ctx.diluteness_warning = warn;
    return ctx;
}

PhysicalParams from_dimensionless(const DimensionlessContext& ctx) {
    PhysicalParams p;
    const double mc = ctx.mass_scale * ctx.sound_speed;
    p.boson_mass = ctx.mass_scale;
    p.impurity_mass = ctx.mass_scale / ctx.z;
    p.density = ctx.density * mc * mc * mc;
    p.scattering_length_bb = ctx.a_bb / mc;
    p.scattering_length_ib = ctx.a_ib / mc;
    p.uv_cutoff = ctx.cutoff;
    return p;
}

namespace iu {

double eps(double l) { return 0.5 * l * std::sqrt(l * l + 4.0); }

double deps(double l) {
    const double r = std::sqrt(l * l + 4.0);
    return 0.5 * r + 0.5 * l * l / r;
}

double imp(double z, double l) { return 0.5 * z * l * l; }

double weight(double g, double n, double l) {
    if (l == 0.0) return 0.0;
    return g * g * n * l * l / (2.0 * eps(l));
}

double mu_of(double l) { return -(eps(l) + 0.5 * l * l + 1.0); }

} // namespace iu

} // namespace becpol
