#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "becpol/diagrams.hpp"
#include "becpol/model.hpp"
#include "becpol/selfenergy.hpp"
#include "becpol/spectrum.hpp"

namespace py = pybind11;
using namespace becpol;

namespace {

struct Knobs {
    QuadratureConfig quad;
    McConfig mc;
    std::vector<double> eta;
};

Knobs make_knobs(double rel_tol, std::uint64_t samples, int batches, std::uint64_t seed,
                 const std::string& sampler, const std::vector<double>& eta)
{
    Knobs k;
    k.quad.rel_tol = rel_tol;
    k.mc.samples = samples;
    k.mc.batches = batches;
    k.mc.seed = seed;
    if (sampler == "sobol")
        k.mc.kind = McConfig::Kind::sobol;
    else if (sampler == "pseudo")
        k.mc.kind = McConfig::Kind::pseudo;
    else
        throw InputError("sampler must be 'sobol' or 'pseudo'");
    k.eta = eta;
    return k;
}

py::dict energy_dict(const ComplexEnergy& e)
{
    py::dict d;
    d["re"] = e.re;
    d["im"] = e.im;
    d["stderr_re"] = e.stderr_re;
    d["stderr_im"] = e.stderr_im;
    return d;
}

} // namespace

PYBIND11_MODULE(becpolaron, mod)
{
    mod.doc() = "second-order perturbation theory for an impurity in a dilute condensate";

    py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

    py::class_<PhysicalParams>(mod, "PhysicalParams")
        .def(py::init([](double boson_mass, double impurity_mass, double density,
                         double scattering_length_bb, double scattering_length_ib,
                         double uv_cutoff) {
                 PhysicalParams p{boson_mass, impurity_mass, density, scattering_length_bb,
                                  scattering_length_ib, uv_cutoff};
                 validate(p);
                 return p;
             }),
             py::arg("boson_mass") = 1.0, py::arg("impurity_mass") = 1.0,
             py::arg("density") = 1.0, py::arg("scattering_length_bb") = 0.01,
             py::arg("scattering_length_ib") = 0.01, py::arg("uv_cutoff") = 200.0)
        .def_readwrite("boson_mass", &PhysicalParams::boson_mass)
        .def_readwrite("impurity_mass", &PhysicalParams::impurity_mass)
        .def_readwrite("density", &PhysicalParams::density)
        .def_readwrite("scattering_length_bb", &PhysicalParams::scattering_length_bb)
        .def_readwrite("scattering_length_ib", &PhysicalParams::scattering_length_ib)
        .def_readwrite("uv_cutoff", &PhysicalParams::uv_cutoff)
        .def("__repr__", [](const PhysicalParams& p) {
            return "PhysicalParams(boson_mass=" + std::to_string(p.boson_mass)
                   + ", impurity_mass=" + std::to_string(p.impurity_mass)
                   + ", density=" + std::to_string(p.density)
                   + ", scattering_length_bb=" + std::to_string(p.scattering_length_bb)
                   + ", scattering_length_ib=" + std::to_string(p.scattering_length_ib)
                   + ", uv_cutoff=" + std::to_string(p.uv_cutoff) + ")";
        });

    py::class_<DimensionlessContext>(mod, "DimensionlessContext")
        .def_readonly("mass_scale", &DimensionlessContext::mass_scale)
        .def_readonly("sound_speed", &DimensionlessContext::sound_speed)
        .def_readonly("z", &DimensionlessContext::z)
        .def_readonly("density", &DimensionlessContext::density)
        .def_readonly("a_bb", &DimensionlessContext::a_bb)
        .def_readonly("a_ib", &DimensionlessContext::a_ib)
        .def_readonly("cutoff", &DimensionlessContext::cutoff)
        .def_readonly("gas_parameter", &DimensionlessContext::gas_parameter)
        .def_readonly("g_mass", &DimensionlessContext::g_mass)
        .def_readonly("p_c", &DimensionlessContext::p_c)
        .def_readonly("diluteness_warning", &DimensionlessContext::diluteness_warning);

    mod.def("validate", &validate, py::arg("params"),
            "raise on non-physical input; True flags a strained dilute-gas assumption");
    mod.def("to_dimensionless", &to_dimensionless, py::arg("params"));
    mod.def("speed_of_sound", &speed_of_sound, py::arg("params"));
    mod.def("landau_momentum", &landau_momentum, py::arg("params"));

    mod.def("diagram_counts", [](int order) {
        const DiagramCounts c = diagram_counts(order);
        py::dict d;
        d["total_labeled"] = c.total_labeled;
        d["pairings"] = c.pairings;
        d["irreducible"] = c.irreducible;
        return d;
    }, py::arg("order"));

    mod.def("enumerate_pairings", [](int order) {
        py::list out;
        for (const Pairing& p : enumerate_pairings(order)) {
            py::list arcs;
            for (const auto& [a, b] : p.arcs) arcs.append(py::make_tuple(a, b));
            out.append(arcs);
        }
        return out;
    }, py::arg("order"));

    const auto eta_default = std::vector<double>{0.08, 0.04, 0.02, 0.01};

    mod.def(
        "self_energy",
        [eta_default](const PhysicalParams& params, double p, py::object omega, int order,
                      double rel_tol, std::uint64_t samples, int batches, std::uint64_t seed,
                      const std::string& sampler, py::object eta) {
            validate(params);
            const DimensionlessContext ctx = to_dimensionless(params);
            const SelfEnergyModel m = born_model(ctx);
            const double w = omega.is_none() ? iu::imp(ctx.z, p) : omega.cast<double>();
            const Knobs k = make_knobs(rel_tol, samples, batches, seed, sampler,
                                       eta.is_none() ? eta_default
                                                     : eta.cast<std::vector<double>>());
            ComplexEnergy total = sigma1(p, w, m, k.quad);
            bool extrapolated = false, diverging = false;
            if (order == 2) {
                const Sigma2Result r = sigma2(p, w, m, k.mc, k.eta, k.quad);
                total.re += r.value.re;
                total.im += r.value.im;
                total.stderr_re = r.value.stderr_re;
                total.stderr_im = r.value.stderr_im;
                extrapolated = r.eta_extrapolated;
                diverging = r.diverging;
            } else if (order != 1) {
                throw InputError("order must be 1 or 2");
            }
            py::dict d = energy_dict(total);
            d["p"] = p;
            d["omega"] = w;
            d["eta_extrapolated"] = extrapolated;
            d["diverging"] = diverging;
            return d;
        },
        py::arg("params"), py::arg("p"), py::arg("omega") = py::none(), py::arg("order") = 1,
        py::arg("rel_tol") = 1e-10, py::arg("samples") = std::uint64_t(1) << 17,
        py::arg("batches") = 16, py::arg("seed") = 12345, py::arg("sampler") = "sobol",
        py::arg("eta") = py::none(),
        "self-energy at (p, omega); p in units m*c, omega in m*c^2, default on shell");

    mod.def(
        "golden_rule_rate",
        [](const PhysicalParams& params, double p, double rel_tol) {
            validate(params);
            const DimensionlessContext ctx = to_dimensionless(params);
            QuadratureConfig quad;
            quad.rel_tol = rel_tol;
            return golden_rule_rate(p, born_model(ctx), quad);
        },
        py::arg("params"), py::arg("p"), py::arg("rel_tol") = 1e-10,
        "phonon emission rate at momentum p (units m*c); exactly 0 below the Landau momentum");

    mod.def(
        "pole",
        [eta_default](const PhysicalParams& params, double p, int order, double rel_tol,
                      std::uint64_t samples, int batches, std::uint64_t seed,
                      const std::string& sampler, py::object eta) {
            validate(params);
            const DimensionlessContext ctx = to_dimensionless(params);
            const SelfEnergyModel m = born_model(ctx);
            const Knobs k = make_knobs(rel_tol, samples, batches, seed, sampler,
                                       eta.is_none() ? eta_default
                                                     : eta.cast<std::vector<double>>());
            PoleResult r;
            if (order == 1)
                r = pole_order1(p, m, k.quad);
            else if (order == 2)
                r = pole_order2(p, m, k.quad, k.mc, k.eta);
            else
                throw InputError("order must be 1 or 2");
            py::dict d;
            d["p"] = r.p;
            d["e_free"] = r.e_free;
            d["s1"] = energy_dict(r.s1);
            d["s1_correction"] = energy_dict(r.s1_correction);
            d["s2"] = energy_dict(r.s2);
            d["omega"] = energy_dict(r.omega);
            d["eta_extrapolated"] = r.eta_extrapolated;
            d["diverging"] = r.diverging;
            return d;
        },
        py::arg("params"), py::arg("p"), py::arg("order") = 1, py::arg("rel_tol") = 1e-10,
        py::arg("samples") = std::uint64_t(1) << 17, py::arg("batches") = 16,
        py::arg("seed") = 12345, py::arg("sampler") = "sobol", py::arg("eta") = py::none(),
        "on-shell quasiparticle pole and its pieces");

    mod.def(
        "effective_mass",
        [eta_default](const PhysicalParams& params, int order, double rel_tol,
                      std::uint64_t samples, int batches, std::uint64_t seed,
                      const std::string& sampler, py::object eta, double h_factor) {
            validate(params);
            const DimensionlessContext ctx = to_dimensionless(params);
            const Knobs k = make_knobs(rel_tol, samples, batches, seed, sampler,
                                       eta.is_none() ? eta_default
                                                     : eta.cast<std::vector<double>>());
            const EffectiveMassResult r = effective_mass(order, ctx, k.quad, k.mc, k.eta, h_factor);
            py::dict d;
            d["z"] = r.z;
            d["g_mass"] = r.g_mass;
            d["h"] = r.h;
            d["ratio_order1"] = r.ratio_order1;
            d["ratio"] = r.ratio;
            d["ratio_stderr"] = r.ratio_stderr;
            d["m_eff"] = r.m_eff;
            d["i1"] = r.i1;
            d["i2"] = r.i2;
            d["i2_stderr"] = r.i2_stderr;
            d["linear_coeff"] = r.linear_coeff;
            return d;
        },
        py::arg("params"), py::arg("order") = 1, py::arg("rel_tol") = 1e-10,
        py::arg("samples") = std::uint64_t(1) << 17, py::arg("batches") = 16,
        py::arg("seed") = 12345, py::arg("sampler") = "sobol", py::arg("eta") = py::none(),
        py::arg("h_factor") = 0.05, "curvature of the pole at p = 0; m_eff in units of M");

    mod.def(
        "zero_point_energy",
        [](const PhysicalParams& params, double rel_tol) {
            validate(params);
            QuadratureConfig quad;
            quad.rel_tol = rel_tol;
            return zero_point_energy_order1(to_dimensionless(params), quad);
        },
        py::arg("params"), py::arg("rel_tol") = 1e-10,
        "order-a^2 impurity zero-point energy, units m*c^2");

    mod.def(
        "i0_report",
        [](const PhysicalParams& params, double rel_tol) {
            validate(params);
            QuadratureConfig quad;
            quad.rel_tol = rel_tol;
            const I0Report r = i0_report(to_dimensionless(params), quad);
            py::dict d;
            d["z"] = r.z;
            d["cutoff"] = r.cutoff;
            d["e1"] = r.e1;
            d["e1_doubled"] = r.e1_doubled;
            d["rel_drift"] = r.rel_drift;
            d["prefactor"] = r.prefactor;
            d["i0_extracted"] = r.i0_extracted;
            d["i0_numeric"] = r.i0_num;
            d["i0_closed"] = r.i0_cl;
            d["mu_b_reduced"] = r.mu_b_reduced;
            d["matches_mu_b_case"] = r.matches_mu_b_case;
            return d;
        },
        py::arg("params"), py::arg("rel_tol") = 1e-10,
        "zero-point energy versus the condensate chemical potential, side by side");

    mod.def("default_z_grid", &default_z_grid);
}
