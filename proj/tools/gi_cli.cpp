// Command-line interface: classification of boundary triples, contour and
// figure export, verification suites, scattering sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "gi/exports.hpp"
#include "gi/params.hpp"
#include "gi/pde_verify.hpp"
#include "gi/region.hpp"
#include "gi/scattering.hpp"

namespace {

using nlohmann::json;
using namespace gi;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitAmbiguous = 2;
constexpr int kExitResolution = 3;
constexpr int kExitVerification = 4;

struct TripleFlags {
    double alpha = 1.0;
    double omega = 0.0;
    std::string c_text = "0,0";

    ParameterTriple parse() const {
        const auto comma = c_text.find(',');
        if (comma == std::string::npos)
            throw DomainError("--c expects 're,im'");
        const double re = std::stod(c_text.substr(0, comma));
        const double im = std::stod(c_text.substr(comma + 1));
        ParameterTriple t{alpha, omega, Complex(re, im)};
        validate(t);
        return t;
    }
};

void add_triple_flags(CLI::App* cmd, TripleFlags& flags) {
    cmd->add_option("--alpha", flags.alpha, "boundary amplitude alpha > 0");
    cmd->add_option("--omega", flags.omega, "boundary frequency omega");
    cmd->add_option("--c", flags.c_text, "Neumann amplitude as 're,im'");
}

json triple_json(const ParameterTriple& t) {
    return {{"alpha", t.alpha},
            {"omega", t.omega},
            {"c", {t.c.real(), t.c.imag()}}};
}

json complex_json(Complex z) { return {z.real(), z.imag()}; }

json envelope(const std::string& command, json input, json result, json diagnostics) {
    return {{"command", command},
            {"input", std::move(input)},
            {"result", std::move(result)},
            {"diagnostics", std::move(diagnostics)},
            {"version", kVersion}};
}

void emit(const json& doc, const std::string& out_dir, const std::string& name) {
    std::cout << doc.dump(2) << "\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(out_dir + "/" + name);
        f << doc.dump(2) << "\n";
    }
}

json invariants_json(const SpectralInvariants& inv) {
    json j{{"x1", inv.x1},
           {"x2", inv.x2},
           {"x3", inv.x3},
           {"disc", inv.disc},
           {"kappa_plus", complex_json(inv.kappa_plus)},
           {"kappa_minus", complex_json(inv.kappa_minus)}};
    if (inv.b) j["b"] = *inv.b;
    return j;
}

int run_classify(const TripleFlags& flags, double tol, bool geometry,
                 double bounds, int resolution, const std::string& out_dir) {
    const ParameterTriple t = flags.parse();
    const auto inv = derive_invariants(t);
    json result = json::object();
    json diagnostics = json::object();
    int exit_code = kExitOk;
    try {
        const Verdict v = classify(t, tol);
        result["case"] = to_string(v.case_label);
        result["admissible_candidate"] = v.admissible_candidate;
        json fams = json::array();
        for (const auto f : v.family_ids) fams.push_back(to_string(f));
        result["families"] = fams;
        if (v.witness) result["witness"] = *v.witness;
        if (geometry && v.case_label != CaseLabel::OutsideScope &&
            v.case_label != CaseLabel::SolitonDiscPosX1Nonpos) {
            OmegaEvaluator ev(inv, build_branch_cuts(t, v.case_label));
            try {
                const auto obs = lemma_obstruction_test(ev, bounds, resolution);
                result["obstruction"] = {{"obstructed", obs.obstructed}};
                if (obs.witness)
                    result["obstruction"]["witness_point"] = complex_json(*obs.witness);
            } catch (const InconclusiveError& e) {
                result["obstruction"] = {{"inconclusive", true}, {"detail", e.what()}};
                exit_code = kExitAmbiguous;
            }
        }
    } catch (const AmbiguousCaseError& e) {
        result["ambiguous"] = true;
        diagnostics["detail"] = e.what();
        exit_code = kExitAmbiguous;
    }
    result["invariants"] = invariants_json(inv);
    emit(envelope("classify", triple_json(t), result, diagnostics), out_dir,
         "classify.json");
    return exit_code;
}

int run_contour(const TripleFlags& flags, double bounds, int resolution,
                const std::string& out_dir, const std::string& format) {
    const ParameterTriple t = flags.parse();
    const auto inv = derive_invariants(t);
    const Verdict v = classify(t);
    if (v.case_label == CaseLabel::OutsideScope)
        throw UnsupportedCaseError("contour: triple is outside the classified scope");
    OmegaEvaluator ev(inv, build_branch_cuts(t, v.case_label));
    const double hw = bounds > 0.0 ? bounds : default_half_width(ev);
    const auto contour = extract_contour(inv, hw, resolution);
    const auto map = build_region_map(ev, hw, resolution);

    std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);
    const std::string base = (out_dir.empty() ? "." : out_dir) + "/";
    json files = json::array();
    if (format.find("csv") != std::string::npos) {
        write_contour_csv(base + "contour.csv", contour);
        files.push_back("contour.csv");
    }
    if (format.find("svg") != std::string::npos) {
        write_figure_svg(base + "figure.svg", map, contour, ev.cuts());
        files.push_back("figure.svg");
    }
    json result{{"case", to_string(v.case_label)},
                {"polylines", contour.polylines.size()},
                {"half_width", hw},
                {"files", files}};
    const json diagnostics{{"resolution", resolution}};
    emit(envelope("contour", triple_json(t), result, diagnostics), out_dir,
         "contour.json");
    return kExitOk;
}

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

json checks_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"value", c.value},
                       {"threshold", c.threshold},
                       {"pass", c.pass}});
    return arr;
}

void run_identity_suite(const ParameterTriple& t, int samples, unsigned seed,
                        std::vector<Check>& checks) {
    const auto inv = derive_invariants(t);
    const Verdict v = classify(t);
    OmegaEvaluator ev(inv, build_branch_cuts(inv, v.case_label));
    std::mt19937_64 rng(seed);
    const double radius = 1.0 + 2.0 * ev.max_root_modulus();
    std::uniform_real_distribution<double> u(-radius, radius);
    double det_err = 0.0, sym_err = 0.0, even_err = 0.0, schwartz_err = 0.0,
           factor_err = 0.0;
    int n = 0;
    while (n < samples) {
        const Complex k(u(rng), u(rng));
        if (std::abs(k) < 1e-2 || ev.distance_to_cuts(k) < 1e-3 * radius) continue;
        ++n;
        const Complex om = ev.omega(k);
        const double om_scale = 1.0 + std::abs(om);
        even_err = std::max(even_err, std::abs(ev.omega(-k) - om) / om_scale);
        schwartz_err = std::max(
            schwartz_err, std::abs(ev.omega(std::conj(k)) - std::conj(om)) / om_scale);
        const Complex h = ev.H(t, k);
        const Complex lhs = (2.0 * om - h) * h;
        const Complex w = k * k;
        const Complex rhs = -w * (2.0 * t.alpha * w - kI * std::conj(t.c)) *
                            (2.0 * t.alpha * w + kI * t.c);
        factor_err = std::max(factor_err, std::abs(lhs - rhs) /
                                              (1.0 + std::abs(lhs) + std::abs(rhs)));
        try {
            const Matrix2 e = ev.E(t, k);
            const Matrix2 ec = ev.E(t, std::conj(k));
            det_err = std::max(det_err, std::abs(e.det() - 1.0));
            const Matrix2 s1 = Matrix2::sigma1();
            sym_err = std::max(sym_err, ((s1 * conj(ec) * s1) - e).max_norm() /
                                            (1.0 + e.max_norm()));
        } catch (const PoleError&) {
            --n;
        }
    }
    const double tol = 1e-10;
    checks.push_back({"det_E_equals_1", det_err, tol, det_err < tol});
    checks.push_back({"sigma1_conjugation_of_E", sym_err, tol, sym_err < tol});
    checks.push_back({"omega_even", even_err, tol, even_err < tol});
    checks.push_back({"omega_schwartz", schwartz_err, tol, schwartz_err < tol});
    checks.push_back({"factorisation_identity", factor_err, tol, factor_err < tol});
}

void run_pde_suite(const std::string& solution, double omega_param, double alpha,
                   double b, const std::string& out_dir, std::vector<Check>& checks) {
    const SolutionProfile q =
        solution == "planewave" ? plane_wave(alpha, b) : gi_soliton(omega_param);
    const auto rep = gi_residual(q, {0.1, 5.0, 0.0, 5.0}, 1e-3);
    const double threshold = solution == "planewave" ? 1e-8 : 1e-6;
    checks.push_back({"gi_residual_" + solution, rep.max_abs, threshold,
                      rep.max_abs < threshold});
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_profile_csv(out_dir + "/profile.csv", q, 0.0, 5.0, 101, 0.0, 5.0, 11);
    }
}

void run_lax_suite(double omega_param, unsigned seed, std::vector<Check>& checks) {
    const auto q = gi_soliton(omega_param);
    const auto bad = scaled_profile(q, 1.1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.3, 3.0), ut(0.0, 2.0), uk(-1.4, 1.4);
    double worst = 0.0, min_ratio = 1e300;
    for (int n = 0; n < 20; ++n) {
        const double x = ux(rng), t = ut(rng);
        const Complex k(uk(rng), uk(rng));
        const double good = zero_curvature_residual(q, x, t, k, 1e-3);
        const double worse = zero_curvature_residual(bad, x, t, k, 1e-3);
        worst = std::max(worst, good);
        min_ratio = std::min(min_ratio, worse / std::max(good, 1e-300));
    }
    checks.push_back({"zero_curvature_exact", worst, 1e-5, worst < 1e-5});
    checks.push_back({"zero_curvature_perturbed_ratio", min_ratio, 1e3,
                      min_ratio > 1e3});
}

void run_global_relation_suite(double omega_param, unsigned seed,
                               std::vector<Check>& checks) {
    const auto t = soliton_parameters(omega_param);
    const auto inv = derive_invariants(t);
    OmegaEvaluator ev(inv, build_branch_cuts(inv, CaseLabel::SolitonDiscZero));
    const auto q = gi_soliton(omega_param);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.15, 3.0), ua(0.02, kPi / 4.0 - 0.02);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Complex k = std::polar(ur(rng), ua(rng));
        worst = std::max(worst, global_relation_residual(t, ev, q, k));
    }
    checks.push_back({"global_relation", worst, 1e-6, worst < 1e-6});
}

int run_verify(const std::string& suite, const TripleFlags& flags,
               const std::string& solution, double b, int samples, unsigned seed,
               const std::string& out_dir) {
    std::vector<Check> checks;
    const double omega_param = flags.omega != 0.0 ? flags.omega : 1.0;
    if (suite == "identities" || suite == "all")
        run_identity_suite(flags.parse(), samples, seed, checks);
    if (suite == "pde" || suite == "all")
        run_pde_suite(solution, omega_param, flags.alpha, b, out_dir, checks);
    if (suite == "lax" || suite == "all") run_lax_suite(omega_param, seed, checks);
    if (suite == "global-relation" || suite == "all")
        run_global_relation_suite(omega_param, seed, checks);
    if (checks.empty()) throw DomainError("verify: unknown suite " + suite);

    std::string first_fail;
    for (const auto& c : checks)
        if (!c.pass && first_fail.empty()) first_fail = c.name;
    json result{{"suite", suite},
                {"checks", checks_json(checks)},
                {"pass", first_fail.empty()}};
    if (!first_fail.empty()) result["first_failing"] = first_fail;
    json diagnostics{{"seed", seed}, {"samples", samples}};
    emit(envelope("verify", triple_json(flags.parse()), result, diagnostics),
         out_dir, "verify.json");
    return first_fail.empty() ? kExitOk : kExitVerification;
}

int run_scatter(double omega_param, double kmax, int grid, unsigned seed,
                const std::string& out_dir) {
    const auto t = soliton_parameters(omega_param);
    const auto inv = derive_invariants(t);
    OmegaEvaluator ev(inv, build_branch_cuts(inv, CaseLabel::SolitonDiscZero));
    const auto q = gi_soliton(omega_param);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.15, kmax), ua(0.02, kPi / 4.0 - 0.02);
    json arr = json::array();
    double worst = 0.0;
    for (int n = 0; n < grid; ++n) {
        const Complex k = std::polar(ur(rng), ua(rng));
        const auto data = scattering_data(t, ev, q, k);
        arr.push_back(json::parse(to_json(data)));
        worst = std::max(worst, data.residual_global);
    }
    json result{{"points", arr}, {"max_residual_global", worst}};
    emit(envelope("scatter", triple_json(t), result, {{"seed", seed}}), out_dir,
         "scatter.json");
    return kExitOk;
}

int run_report(const TripleFlags& flags, double bounds, int resolution,
               unsigned seed, const std::string& out_dir) {
    const int rc1 = run_classify(flags, 1e-9, true, bounds, resolution, out_dir);
    const int rc2 = run_contour(flags, bounds, resolution, out_dir, "csv,svg");
    std::vector<Check> checks;
    run_identity_suite(flags.parse(), 200, seed, checks);
    std::string first_fail;
    for (const auto& c : checks)
        if (!c.pass && first_fail.empty()) first_fail = c.name;
    json result{{"checks", checks_json(checks)}, {"pass", first_fail.empty()}};
    emit(envelope("report", triple_json(flags.parse()), result, json::object()),
         out_dir, "report.json");
    if (rc1 != kExitOk) return rc1;
    if (rc2 != kExitOk) return rc2;
    return first_fail.empty() ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-parameter classification and spectral verification "
                 "for the Gerdjikov-Ivanov equation on the quarter plane"};
    app.require_subcommand(1);

    TripleFlags flags;
    double tol = 1e-9;
    double bounds = 0.0;
    int resolution = 512;
    unsigned seed = 20200813;
    std::string out_dir;
    std::string format = "csv,svg";
    bool geometry = false;
    std::string suite = "identities";
    std::string solution = "soliton";
    double b_param = -1.0;
    int samples = 1000;
    double kmax = 3.0;
    int grid = 50;

    auto* classify_cmd = app.add_subcommand("classify", "classify a boundary triple");
    add_triple_flags(classify_cmd, flags);
    classify_cmd->add_option("--tol", tol, "classification tolerance");
    classify_cmd->add_flag("--geometry", geometry,
                           "also run the branch-cut obstruction test");
    classify_cmd->add_option("--bounds", bounds, "half-width of the grid box");
    classify_cmd->add_option("--resolution", resolution, "grid resolution");
    classify_cmd->add_option("--out", out_dir, "output directory");

    auto* contour_cmd =
        app.add_subcommand("contour", "export the Im Omega = 0 contour and figure");
    add_triple_flags(contour_cmd, flags);
    contour_cmd->add_option("--bounds", bounds, "half-width of the grid box");
    contour_cmd->add_option("--resolution", resolution, "grid resolution");
    contour_cmd->add_option("--out", out_dir, "output directory")->required();
    contour_cmd->add_option("--format", format, "comma list from {csv,svg}");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    add_triple_flags(verify_cmd, flags);
    verify_cmd
        ->add_option("--suite", suite,
                     "one of identities|pde|lax|global-relation|all")
        ->required();
    verify_cmd->add_option("--solution", solution, "soliton|planewave (pde suite)");
    verify_cmd->add_option("--b", b_param, "plane-wave wavenumber (pde suite)");
    verify_cmd->add_option("--samples", samples, "sample count for identity sweeps");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--out", out_dir, "output directory");

    auto* scatter_cmd =
        app.add_subcommand("scatter", "spectral data sweep for the soliton family");
    scatter_cmd->add_option("--omega", flags.omega, "soliton parameter omega > 0");
    scatter_cmd->add_option("--kmax", kmax, "radius of the sampled sector");
    scatter_cmd->add_option("--grid", grid, "number of sample points");
    scatter_cmd->add_option("--seed", seed, "random seed");
    scatter_cmd->add_option("--out", out_dir, "output directory");

    auto* report_cmd =
        app.add_subcommand("report", "classification + figure + identity bundle");
    add_triple_flags(report_cmd, flags);
    report_cmd->add_option("--bounds", bounds, "half-width of the grid box");
    report_cmd->add_option("--resolution", resolution, "grid resolution");
    report_cmd->add_option("--seed", seed, "random seed");
    report_cmd->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify_cmd->parsed())
            return run_classify(flags, tol, geometry, bounds, resolution, out_dir);
        if (contour_cmd->parsed())
            return run_contour(flags, bounds, resolution, out_dir, format);
        if (verify_cmd->parsed())
            return run_verify(suite, flags, solution, b_param, samples, seed, out_dir);
        if (scatter_cmd->parsed())
            return run_scatter(flags.omega > 0.0 ? flags.omega : 1.0, kmax, grid,
                               seed, out_dir);
        if (report_cmd->parsed())
            return run_report(flags, bounds, resolution, seed, out_dir);
    } catch (const ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return kExitResolution;
    } catch (const AmbiguousCaseError& e) {
        std::cerr << "ambiguous: " << e.what() << "\n";
        return kExitAmbiguous;
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitAmbiguous;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
