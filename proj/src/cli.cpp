#include "becpol/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "becpol/diagrams.hpp"
#include "becpol/io.hpp"
#include "becpol/model.hpp"
#include "becpol/selfenergy.hpp"
#include "becpol/spectrum.hpp"

namespace becpol {
namespace {

struct CommonOpts {
    std::string params_path;
    std::string out_path;
    double cutoff = 0.0;  // > 0 overrides the parameter file, units m*c
    std::uint64_t samples = std::uint64_t(1) << 17;
    int batches = 16;
    std::uint64_t seed = 12345;
    std::string sampler = "sobol";
    std::string eta_text = "0.08,0.04,0.02,0.01";
    double rel_tol = 1e-10;
};

void add_common(CLI::App* sub, CommonOpts& o)
{
    sub->add_option("--params", o.params_path, "parameter file (key = value, natural units)");
    sub->add_option("--out", o.out_path, "write the table to this file instead of stdout");
    sub->add_option("--cutoff", o.cutoff, "override the loop-momentum cutoff, units m*c");
    sub->add_option("--samples", o.samples, "Monte Carlo samples, total across batches");
    sub->add_option("--batches", o.batches, "Monte Carlo batches for the variance estimate");
    sub->add_option("--seed", o.seed, "Monte Carlo seed");
    sub->add_option("--sampler", o.sampler, "low-discrepancy or pseudo-random sampling")
        ->check(CLI::IsMember({"sobol", "pseudo"}));
    sub->add_option("--eta-grid", o.eta_text,
                    "decreasing resolvent shifts for the on-resonance extrapolation");
    sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
}

// momenta may carry a "pc" suffix: multiples of the Landau momentum M c
double parse_momentum(const std::string& text, double p_c)
{
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw InputError("bad momentum '" + text + "'");
    const std::string suffix(end);
    if (suffix.empty()) return v;
    if (suffix == "pc") return v * p_c;
    throw InputError("bad momentum suffix in '" + text + "' (use a plain number or e.g. 1.2pc)");
}

std::vector<double> parse_eta(const std::string& text)
{
    std::vector<double> eta;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const char* begin = item.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw InputError("--eta-grid: bad entry '" + item + "'");
        eta.push_back(v);
    }
    if (eta.size() < 2) throw InputError("--eta-grid needs at least two entries");
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (eta[i] <= 0.0) throw InputError("--eta-grid entries must be positive");
        if (i && eta[i] >= eta[i - 1]) throw InputError("--eta-grid must decrease strictly");
    }
    return eta;
}

struct Session {
    PhysicalParams params;
    DimensionlessContext ctx;
    SelfEnergyModel model;  // Born coupling
    QuadratureConfig quad;
    McConfig mc;
    std::vector<double> eta;
    std::vector<std::string> comments;
};

Session make_session(const CommonOpts& o, const std::string& sub,
                     std::vector<std::pair<std::string, std::string>> items)
{
    if (!(o.rel_tol > 0.0 && o.rel_tol < 1.0)) throw InputError("--rel-tol must be in (0, 1)");
    if (o.batches < 2) throw InputError("--batches must be at least 2");
    if (o.samples < std::uint64_t(o.batches)) throw InputError("--samples must cover all batches");

    Session s;
    s.params = o.params_path.empty() ? PhysicalParams{} : load_params(o.params_path);
    if (o.cutoff > 0.0) s.params.uv_cutoff = o.cutoff;
    const bool warn = validate(s.params);
    s.ctx = to_dimensionless(s.params);
    s.model = born_model(s.ctx);
    s.quad.rel_tol = o.rel_tol;
    s.mc.samples = o.samples;
    s.mc.batches = o.batches;
    s.mc.seed = o.seed;
    s.mc.kind = o.sampler == "pseudo" ? McConfig::Kind::pseudo : McConfig::Kind::sobol;
    s.eta = parse_eta(o.eta_text);

    items.emplace_back("cutoff", format_g12(s.params.uv_cutoff));
    items.emplace_back("samples", std::to_string(s.mc.samples));
    items.emplace_back("batches", std::to_string(s.mc.batches));
    items.emplace_back("seed", std::to_string(s.mc.seed));
    items.emplace_back("sampler", o.sampler);
    items.emplace_back("eta", o.eta_text);
    items.emplace_back("rel_tol", format_g12(o.rel_tol));
    items.emplace_back("params", params_signature(s.params));
    s.comments.push_back(provenance(sub, items));
    if (warn)
        s.comments.push_back("warning: dilute-gas parameter a_s n^(1/3) exceeds 0.1");
    return s;
}

// build rows, then write everything in one pass; a convergence failure keeps
// the rows finished so far and appends an explanatory comment
int emit(const CommonOpts& o, const std::vector<std::string>& comments,
         const std::vector<std::string>& header,
         const std::function<void(std::vector<std::vector<std::string>>&)>& build)
{
    std::vector<std::vector<std::string>> rows;
    std::string failure;
    int code = 0;
    try {
        build(rows);
    } catch (const ConvergenceError& e) {
        failure = e.what();
        code = 2;
    }
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.out_path.empty()) {
        file.open(o.out_path, std::ios::binary);
        if (!file) throw InputError("cannot open output file '" + o.out_path + "'");
        out = &file;
    }
    write_table(*out, comments, header, rows);
    if (code != 0) *out << "# error: " << failure << "\n";
    out->flush();
    return code;
}

std::string arcs_text(const Pairing& pairing)
{
    std::string s;
    for (const auto& [a, b] : pairing.arcs) {
        if (!s.empty()) s += ';';
        s += std::to_string(a) + "-" + std::to_string(b);
    }
    return s;
}

} // namespace

int run_cli(int argc, const char* const* argv)
{
    CLI::App app{"second-order perturbation theory for an impurity in a dilute condensate"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* cmd_diagrams = app.add_subcommand("diagrams", "pairing and diagram counts");
    int dg_order = 2;
    bool dg_list = false;
    cmd_diagrams->add_option("--order", dg_order, "diagram order n (1..8)")->required();
    cmd_diagrams->add_flag("--list", dg_list, "list the pairings of that order");
    cmd_diagrams->add_option("--out", opts.out_path, "write the table to this file");

    auto* cmd_sigma = app.add_subcommand("selfenergy", "self-energy at one (p, omega) point");
    int se_order = 1;
    std::string se_p = "0";
    double se_omega = 0.0;
    cmd_sigma->add_option("--order", se_order, "1: order g^2; 2: adds the g^4 block");
    cmd_sigma->add_option("--p", se_p, "momentum, units m*c (suffix pc = Landau momentum)");
    auto* se_omega_opt =
        cmd_sigma->add_option("--omega", se_omega, "probe energy, units m*c^2 (default: on shell)");
    add_common(cmd_sigma, opts);

    auto* cmd_spectrum = app.add_subcommand("spectrum", "quasiparticle pole across momenta");
    int sp_order = 1, sp_steps = 20;
    std::string sp_min = "0", sp_max = "0.95pc";
    cmd_spectrum->add_option("--order", sp_order, "perturbative order, 1 or 2");
    cmd_spectrum->add_option("--p-min", sp_min, "lowest momentum");
    cmd_spectrum->add_option("--p-max", sp_max, "highest momentum");
    cmd_spectrum->add_option("--steps", sp_steps, "number of grid points");
    add_common(cmd_spectrum, opts);

    auto* cmd_rate = app.add_subcommand("rate", "golden-rule emission rate across momenta");
    int rt_steps = 61;
    std::string rt_min = "0", rt_max = "1.5pc";
    cmd_rate->add_option("--p-min", rt_min, "lowest momentum");
    cmd_rate->add_option("--p-max", rt_max, "highest momentum");
    cmd_rate->add_option("--steps", rt_steps, "number of grid points");
    add_common(cmd_rate, opts);

    auto* cmd_effmass = app.add_subcommand("effmass", "effective mass versus mass ratio");
    int em_order = 1;
    std::string em_grid = "default";
    double em_stencil = 0.05;
    cmd_effmass->add_option("--order", em_order, "perturbative order, 1 or 2");
    cmd_effmass->add_option("--z-grid", em_grid,
                            "comma list of mass ratios m/M, or 'default' (64 log-spaced on [0.25,4])");
    cmd_effmass->add_option("--stencil", em_stencil, "stencil spacing as a fraction of p_c");
    add_common(cmd_effmass, opts);

    auto* cmd_i0 = app.add_subcommand("i0", "zero-point energy and its cutoff coefficient");
    add_common(cmd_i0, opts);

    auto* cmd_zp = app.add_subcommand("zeropoint", "order-g^4 zero-point piece at the cutoff");
    add_common(cmd_zp, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*cmd_diagrams) {
            std::vector<std::pair<std::string, std::string>> items{
                {"order", std::to_string(dg_order)}, {"list", dg_list ? "1" : "0"}};
            std::vector<std::string> comments{provenance("diagrams", items)};
            if (dg_list) {
                return emit(opts, comments, {"order", "index", "arcs", "irreducible"},
                            [&](std::vector<std::vector<std::string>>& rows) {
                                const auto pairings = enumerate_pairings(dg_order);
                                for (std::size_t i = 0; i < pairings.size(); ++i)
                                    rows.push_back({std::to_string(dg_order), std::to_string(i),
                                                    arcs_text(pairings[i]),
                                                    is_irreducible(pairings[i]) ? "1" : "0"});
                            });
            }
            return emit(opts, comments, {"order", "total_labeled", "pairings", "irreducible"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            for (int n = 1; n <= dg_order; ++n) {
                                const DiagramCounts c = diagram_counts(n);
                                rows.push_back({std::to_string(n), std::to_string(c.total_labeled),
                                                std::to_string(c.pairings),
                                                std::to_string(c.irreducible)});
                            }
                        });
        }

        if (*cmd_sigma) {
            if (se_order != 1 && se_order != 2) throw InputError("--order must be 1 or 2");
            Session s = make_session(opts, "selfenergy",
                                     {{"order", std::to_string(se_order)},
                                      {"p", se_p},
                                      {"omega", se_omega_opt->count() ? format_g12(se_omega)
                                                                      : std::string("onshell")}});
            const double p = parse_momentum(se_p, s.ctx.p_c);
            const double omega = se_omega_opt->count() ? se_omega : iu::imp(s.ctx.z, p);
            return emit(opts, s.comments,
                        {"p", "omega", "sigma_re", "sigma_im", "stderr_re", "stderr_im",
                         "eta_extrapolated", "diverging"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            ComplexEnergy total = sigma1(p, omega, s.model, s.quad);
                            bool extr = false, div = false;
                            if (se_order == 2) {
                                const Sigma2Result r =
                                    sigma2(p, omega, s.model, s.mc, s.eta, s.quad);
                                total.re += r.value.re;
                                total.im += r.value.im;
                                total.stderr_re = r.value.stderr_re;
                                total.stderr_im = r.value.stderr_im;
                                extr = r.eta_extrapolated;
                                div = r.diverging;
                            }
                            auto cells = to_cells({p, omega, total.re, total.im, total.stderr_re,
                                                   total.stderr_im});
                            cells.push_back(extr ? "1" : "0");
                            cells.push_back(div ? "1" : "0");
                            rows.push_back(cells);
                        });
        }

        if (*cmd_spectrum) {
            if (sp_order != 1 && sp_order != 2) throw InputError("--order must be 1 or 2");
            Session s = make_session(opts, "spectrum",
                                     {{"order", std::to_string(sp_order)},
                                      {"p_min", sp_min},
                                      {"p_max", sp_max},
                                      {"steps", std::to_string(sp_steps)}});
            const double lo = parse_momentum(sp_min, s.ctx.p_c);
            const double hi = parse_momentum(sp_max, s.ctx.p_c);
            // the scan runs before emit so the monotonicity verdict can sit
            // in the comments ahead of the rows
            const SpectrumScan scan =
                spectrum_scan(sp_order, s.model, lo, hi, sp_steps, s.quad, s.mc, s.eta);
            auto comments = s.comments;
            comments.push_back(std::string("re_monotone = ") + (scan.re_monotone ? "1" : "0"));
            return emit(opts, comments,
                        {"p", "e_free", "s1_re", "s1_im", "s1_correction_re", "s1_correction_im",
                         "s2_re", "s2_im", "omega_re", "omega_im", "stderr_re", "stderr_im",
                         "eta_extrapolated", "diverging"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            for (const PoleResult& q : scan.points) {
                                auto cells = to_cells({q.p, q.e_free, q.s1.re, q.s1.im,
                                                       q.s1_correction.re, q.s1_correction.im,
                                                       q.s2.re, q.s2.im, q.omega.re, q.omega.im,
                                                       q.omega.stderr_re, q.omega.stderr_im});
                                cells.push_back(q.eta_extrapolated ? "1" : "0");
                                cells.push_back(q.diverging ? "1" : "0");
                                rows.push_back(cells);
                            }
                        });
        }

        if (*cmd_rate) {
            Session s = make_session(opts, "rate",
                                     {{"p_min", rt_min},
                                      {"p_max", rt_max},
                                      {"steps", std::to_string(rt_steps)}});
            const double lo = parse_momentum(rt_min, s.ctx.p_c);
            const double hi = parse_momentum(rt_max, s.ctx.p_c);
            auto comments = s.comments;
            comments.push_back("p_c = " + format_g12(s.ctx.p_c));
            return emit(opts, comments, {"p", "rate"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            for (const RatePoint& pt : rate_curve(s.model, lo, hi, rt_steps, s.quad))
                                rows.push_back(to_cells({pt.p, pt.rate}));
                        });
        }

        if (*cmd_effmass) {
            if (em_order != 1 && em_order != 2) throw InputError("--order must be 1 or 2");
            Session s = make_session(opts, "effmass",
                                     {{"order", std::to_string(em_order)},
                                      {"z_grid", em_grid},
                                      {"stencil", format_g12(em_stencil)}});
            std::vector<double> grid;
            if (em_grid == "default") {
                grid = default_z_grid();
            } else {
                std::stringstream ss(em_grid);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    if (item.empty()) continue;
                    const char* begin = item.c_str();
                    char* end = nullptr;
                    const double v = std::strtod(begin, &end);
                    if (end == begin || *end != '\0' || v <= 0.0)
                        throw InputError("--z-grid: bad entry '" + item + "'");
                    grid.push_back(v);
                }
                if (grid.empty()) throw InputError("--z-grid is empty");
            }
            return emit(opts, s.comments,
                        {"z", "g_mass", "ratio", "m_eff", "i1", "i2", "i2_stderr", "linear_coeff"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            std::vector<EffectiveMassResult> res(grid.size());
                            auto at = [&](int i) {
                                PhysicalParams varied = s.params;
                                varied.impurity_mass = s.params.boson_mass / grid[i];
                                res[i] = effective_mass(em_order, to_dimensionless(varied), s.quad,
                                                        s.mc, s.eta, em_stencil);
                            };
                            if (em_order == 1)
                                parallel_for_index(int(grid.size()), at);
                            else
                                for (int i = 0; i < int(grid.size()); ++i) at(i);
                            for (const EffectiveMassResult& r : res)
                                rows.push_back(to_cells({r.z, r.g_mass, r.ratio, r.m_eff, r.i1,
                                                         r.i2, r.i2_stderr, r.linear_coeff}));
                        });
        }

        if (*cmd_i0) {
            Session s = make_session(opts, "i0", {});
            return emit(opts, s.comments,
                        {"z", "cutoff", "e1", "e1_doubled", "rel_drift", "prefactor",
                         "i0_extracted", "i0_numeric", "i0_closed", "mu_b_reduced",
                         "matches_mu_b_case"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            const I0Report r = i0_report(s.ctx, s.quad);
                            auto cells = to_cells({r.z, r.cutoff, r.e1, r.e1_doubled, r.rel_drift,
                                                   r.prefactor, r.i0_extracted, r.i0_num, r.i0_cl,
                                                   r.mu_b_reduced});
                            cells.push_back(r.matches_mu_b_case ? "1" : "0");
                            rows.push_back(cells);
                        });
        }

        if (*cmd_zp) {
            Session s = make_session(opts, "zeropoint", {});
            return emit(opts, s.comments,
                        {"cutoff", "e1", "g4_combined", "g4_printed", "printed_ratio"},
                        [&](std::vector<std::vector<std::string>>& rows) {
                            const double e1 = zero_point_energy_order1(s.ctx, s.quad);
                            const double comb = second_order_zero_point(s.model, s.quad);
                            const double printed =
                                second_order_zero_point_printed(s.model, s.quad);
                            const double ratio = printed == 0.0 ? 0.0 : comb / printed;
                            rows.push_back(
                                to_cells({s.ctx.cutoff, e1, comb, printed, ratio}));
                        });
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace becpol
