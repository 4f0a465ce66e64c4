// pdm-isospec: partner-potential construction and spectral verification for
// the position-dependent-mass solvable family.
//
//   figure    write a reference-figure CSV (x, V, Vbar[, Vbar2]) + sidecar
//   partner   construct a partner potential for user parameters
//   spectrum  analytic / numerical / partner spectra with the law verdict
//   verify    run the verification suite, JSON-lines report

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdmiso/checks.hpp"
#include "pdmiso/intertwine1.hpp"
#include "pdmiso/intertwine2.hpp"
#include "pdmiso/numspec.hpp"
#include "pdmiso/presets.hpp"

namespace {

using namespace pdmiso;
using njson = nlohmann::json;

struct ParamArgs {
    std::string a = "1", b = "1", c = "1";
    std::string alpha = "1", beta = "0";
    double nu = 0.0;
    double p = 1.0, lam = 1.0;

    model::ModelParams build() const {
        model::ModelParams mp;
        mp.a = presets::parse_complex(a);
        mp.b = presets::parse_complex(b);
        mp.c = presets::parse_complex(c);
        mp.alpha = presets::parse_complex(alpha);
        mp.beta = presets::parse_complex(beta);
        mp.nu = nu;
        mp.p = p;
        mp.lam = lam;
        return mp;
    }
};

void add_param_options(CLI::App* cmd, ParamArgs& args) {
    cmd->add_option("--a", args.a, "parameter a (complex, e.g. 6.1-5i)")
        ->required();
    cmd->add_option("--b", args.b, "parameter b (complex)")->required();
    cmd->add_option("--c", args.c, "parameter c (complex)")->required();
    cmd->add_option("--alpha", args.alpha, "first branch weight");
    cmd->add_option("--beta", args.beta, "second branch weight");
    cmd->add_option("--nu", args.nu,
                    "seed shift (a,b) -> (a+nu, b-nu); second seed shift for "
                    "order 2");
    cmd->add_option("--p", args.p, "mass steepness parameter (default 1)");
    cmd->add_option("--lam", args.lam, "mass scale parameter (default 1)");
}

struct Range {
    double lo = -5.0, hi = 5.0;
};

Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw DomainError("range must be LO:HI, got " + text);
    Range r;
    r.lo = std::stod(text.substr(0, colon));
    r.hi = std::stod(text.substr(colon + 1));
    if (!(r.lo < r.hi)) throw DomainError("range must satisfy LO < HI");
    return r;
}

int grid_n_default() { return checks::default_context().grid_n; }

// ---- figure ----------------------------------------------------------------

int cmd_figure(const std::string& id, std::string out_path, int samples,
               double nu_override) {
    const auto& preset = presets::figure_preset(id);
    presets::FigurePreset used = preset;
    if (nu_override != 0.0) used.nu2 = nu_override;
    const auto curves = presets::figure_curves(used, samples);
    if (out_path.empty()) out_path = id + ".csv";
    {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw DomainError("cannot open " + out_path);
        os << presets::figure_csv(curves);
    }
    {
        std::ofstream os(out_path + ".json", std::ios::binary);
        os << presets::figure_sidecar_json(used, curves) << "\n";
    }
    std::printf("%s: wrote %s (%d rows) and %s.json\n", id.c_str(),
                out_path.c_str(), samples, out_path.c_str());
    return 0;
}

// ---- partner / spectrum ----------------------------------------------------

struct Construction {
    int order = 1;
    std::optional<intertwine1::FirstOrderPartner> first;
    std::optional<intertwine2::SecondOrderPartner> second;
    std::string classification;
    njson info;

    double partner_potential(double x) const {
        return order == 1 ? first->partner_potential(x)
                          : second->partner_potential(x);
    }
    numspec::IsospectralLaw law() const {
        return order == 1 ? first->law() : second->law();
    }
};

Construction build_construction(const model::ModelParams& mp, int order,
                                const std::string& mode) {
    Construction c;
    c.order = order;
    if (order == 1) {
        model::SeedSolution seed;
        if (mode == "delete") {
            seed = model::bound_state_seed(mp, 0);
        } else {
            seed = model::seed(mp);
        }
        c.first.emplace(intertwine1::first_order_partner(seed));
        c.classification = model::to_string(*c.first->modification);
        c.info["mu"] = {seed.mu.real(), seed.mu.imag()};
    } else {
        if (mode == "delete") {
            c.second.emplace(intertwine2::second_order_partner(
                model::bound_state_seed(mp, 0), model::bound_state_seed(mp, 1)));
        } else if (std::abs(mp.a.imag()) > 1e-12 ||
                   std::abs(mp.b.imag()) > 1e-12) {
            c.second.emplace(
                intertwine2::second_order_partner_conjugate(model::seed(mp)));
        } else {
            if (mp.nu == 0.0)
                throw DomainError(
                    "order-2 construction needs --nu != 0 for the second "
                    "seed (or --mode delete)");
            model::ModelParams first_params = mp;
            first_params.nu = 0.0;
            c.second.emplace(intertwine2::second_order_partner(
                model::seed(first_params), model::seed(mp)));
        }
        c.classification = intertwine2::to_string(c.second->modification);
        c.info["mu1"] = {c.second->mu1.real(), c.second->mu1.imag()};
        c.info["mu2"] = {c.second->mu2.real(), c.second->mu2.imag()};
    }
    c.info["order"] = order;
    c.info["classification"] = c.classification;
    return c;
}

bool classification_matches(const std::string& mode,
                            const std::string& classification) {
    if (mode == "auto") return classification != "invalid";
    if (mode == "delete")
        return classification == "delete-ground" ||
               classification == "delete-two";
    if (mode == "iso") return classification == "strict-isospectral";
    if (mode == "create")
        return classification == "create-below-ground" ||
               classification == "create-two";
    return false;
}

int cmd_partner(const ParamArgs& args, int order, const std::string& mode,
                const std::string& range_text, int samples,
                const std::string& out_path) {
    const auto mp = args.build();
    const Range range = parse_range(range_text);
    auto c = build_construction(mp, order, mode);

    std::vector<double> xs(samples), vs(samples), vbs(samples);
    par::parallel_for(samples, par::default_exec(), [&](long i) {
        const double x =
            range.lo + (range.hi - range.lo) * double(i) / (samples - 1);
        xs[i] = x;
        vs[i] = model::potential(mp, x);
        vbs[i] = c.partner_potential(x);
    });
    std::ostringstream csv;
    csv << "x,V,Vbar\r\n";
    char buf[96];
    for (int i = 0; i < samples; ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\r\n", xs[i], vs[i],
                      vbs[i]);
        csv << buf;
    }
    if (out_path.empty()) {
        std::fputs(csv.str().c_str(), stdout);
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw DomainError("cannot open " + out_path);
        os << csv.str();
    }
    std::cerr << c.info.dump() << "\n";
    if (!classification_matches(mode, c.classification)) {
        std::cerr << "requested mode '" << mode
                  << "' but the seed classifies as '" << c.classification
                  << "'\n";
        return 1;
    }
    return 0;
}

int cmd_spectrum(const ParamArgs& args, int order, const std::string& mode,
                 int k, const std::string& json_path) {
    const auto mp = args.build();
    njson out;
    out["k"] = k;

    std::vector<double> analytic;
    for (int n = 0; n < k; ++n) analytic.push_back(model::energy(mp, n));
    out["analytic"] = analytic;

    const int n_grid = grid_n_default();
    const auto base = numspec::compute_spectrum(
        [mp](double x) { return model::mass(mp, x); },
        [mp](double x) { return model::potential(mp, x); }, -12.0, 12.0,
        n_grid, k);
    out["numerical"] = base.eigenvalues;
    out["grid_n"] = n_grid;
    out["converged"] = base.converged;

    auto c = build_construction(mp, order, mode);
    const auto part = numspec::compute_spectrum(
        [mp](double x) { return model::mass(mp, x); },
        [&c](double x) { return c.partner_potential(x); }, -12.0, 12.0,
        n_grid, k);
    out["partner_numerical"] = part.eigenvalues;
    out["classification"] = c.classification;
    const auto law = c.law();
    const auto verdict = numspec::verify_isospectral(base, part, law, 1e-3);
    out["law"] = law.name();
    out["law_pass"] = verdict.pass;
    out["law_max_rel_dev"] = verdict.max_rel_dev;

    std::printf("  n %14s %14s %14s\n", "analytic", "numerical",
                "partner-num");
    for (int n = 0; n < k; ++n) {
        std::printf("%3d %14.8f %14.8f %14s\n", n, analytic[n],
                    base.eigenvalues[n],
                    n < int(part.eigenvalues.size())
                        ? (std::ostringstream()
                           << std::fixed << part.eigenvalues[n])
                              .str()
                              .c_str()
                        : "-");
    }
    std::printf("classification: %s   law: %s   verdict: %s (max rel dev %.3e)\n",
                c.classification.c_str(), law.name().c_str(),
                verdict.pass ? "pass" : "FAIL", verdict.max_rel_dev);
    if (!json_path.empty()) {
        std::ofstream os(json_path, std::ios::binary);
        os << out.dump(2) << "\n";
    }
    return verdict.pass ? 0 : 1;
}

int cmd_verify(const std::string& suite, double tol_scale,
               const std::string& json_path) {
    auto ctx = checks::default_context();
    ctx.tol_scale = tol_scale;
    const auto results = checks::run_suite(suite, ctx);
    std::ofstream json_file;
    std::ostream* json_out = &std::cout;
    if (!json_path.empty()) {
        json_file.open(json_path, std::ios::binary);
        if (!json_file) throw DomainError("cannot open " + json_path);
        json_out = &json_file;
    }
    int failed = 0;
    for (const auto& r : results) {
        (*json_out) << r.json << "\n";
        std::fprintf(stderr, "[%s] %s  %s\n", r.pass ? "PASS" : "FAIL",
                     r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::fprintf(stderr, "%d/%zu checks passed\n",
                 int(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isospectral partner construction and verification for "
                 "position-dependent-mass Hamiltonians"};
    app.require_subcommand(1);

    // figure
    auto* fig = app.add_subcommand("figure", "write a reference-figure CSV");
    std::string fig_id;
    std::string fig_out;
    int fig_samples = 801;
    double fig_nu = 0.0;
    fig->add_option("id", fig_id, "figure id (fig1..fig7)")
        ->required()
        ->check(CLI::IsMember(
            {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}));
    fig->add_option("--out", fig_out, "output CSV path (default <id>.csv)");
    fig->add_option("--samples", fig_samples, "number of rows (default 801)")
        ->check(CLI::PositiveNumber);
    fig->add_option("--nu", fig_nu,
                    "override the second-seed shift (fig6 alternative: 10)");

    // partner
    auto* par_cmd =
        app.add_subcommand("partner", "construct a partner potential");
    ParamArgs partner_args;
    add_param_options(par_cmd, partner_args);
    int partner_order = 1;
    std::string partner_mode = "auto";
    std::string partner_range = "-5:5";
    int partner_samples = 801;
    std::string partner_out;
    par_cmd->add_option("--order", partner_order, "transform order (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    par_cmd->add_option("--mode", partner_mode,
                        "requested modification (auto|delete|iso|create)")
        ->check(CLI::IsMember({"auto", "delete", "iso", "create"}));
    par_cmd->add_option("--range", partner_range, "x range as LO:HI");
    par_cmd->add_option("--samples", partner_samples, "number of samples")
        ->check(CLI::PositiveNumber);
    par_cmd->add_option("--out", partner_out,
                        "output CSV path (default stdout)");

    // spectrum
    auto* spec_cmd = app.add_subcommand(
        "spectrum", "analytic / numerical / partner spectra");
    ParamArgs spectrum_args;
    add_param_options(spec_cmd, spectrum_args);
    int spectrum_order = 1;
    std::string spectrum_mode = "auto";
    int spectrum_k = 4;
    std::string spectrum_json;
    spec_cmd->add_option("--order", spectrum_order, "transform order (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    spec_cmd->add_option("--mode", spectrum_mode,
                         "requested modification (auto|delete|iso|create)")
        ->check(CLI::IsMember({"auto", "delete", "iso", "create"}));
    spec_cmd->add_option("-k,--levels", spectrum_k, "number of levels")
        ->check(CLI::PositiveNumber);
    spec_cmd->add_option("--json", spectrum_json, "write a JSON report here");

    // verify
    auto* ver = app.add_subcommand("verify", "run the verification suite");
    std::string suite = "all";
    double tol_scale = 1.0;
    std::string verify_json;
    ver->add_option("--suite", suite, "check suite")
        ->check(CLI::IsMember(checks::suite_names()));
    ver->add_option("--tol-scale", tol_scale,
                    "tolerance multiplier (0.1 tightens tenfold)")
        ->check(CLI::PositiveNumber);
    ver->add_option("--json", verify_json,
                    "write the JSON-lines report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        if (fig->parsed()) return cmd_figure(fig_id, fig_out, fig_samples, fig_nu);
        if (par_cmd->parsed())
            return cmd_partner(partner_args, partner_order, partner_mode,
                               partner_range, partner_samples, partner_out);
        if (spec_cmd->parsed())
            return cmd_spectrum(spectrum_args, spectrum_order, spectrum_mode,
                                spectrum_k, spectrum_json);
        if (ver->parsed()) return cmd_verify(suite, tol_scale, verify_json);
    } catch (const pdmiso::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
