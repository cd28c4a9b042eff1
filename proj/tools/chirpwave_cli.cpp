// Command-line front end: propagation, comparisons, alpha sweeps, figure
// reproduction, and a self-test suite. Exit codes: 0 success, 1 numerical
// guard failure, 2 argument errors.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "chirpwave/airy.hpp"
#include "chirpwave/bessel.hpp"
#include "chirpwave/errors.hpp"
#include "chirpwave/experiments.hpp"
#include "chirpwave/fft.hpp"
#include "chirpwave/propagators.hpp"
#include "chirpwave/sinc.hpp"

namespace {

using namespace chirpwave;

struct CliConfig {
    std::string state = "sinc:1";
    std::vector<double> alphas;
    std::vector<double> times;
    std::size_t n = 8192;
    double xmin = -80.0;
    double xmax = 80.0;
    std::string out;
    std::size_t jobs = 0;
    std::size_t quad_panels = 512;
    std::string figure_id;
    std::string method = "exact";
};

std::filesystem::path default_out() {
    if (const char* env = std::getenv("CHIRP_OUT_DIR")) return env;
    return "out";
}

Grid make_grid_checked(const CliConfig& cfg) { return Grid::make(cfg.n, cfg.xmin, cfg.xmax); }

QuadratureSpec quad_from(const CliConfig& cfg) {
    QuadratureSpec q;
    q.panel_count = cfg.quad_panels;
    q.validate();
    return q;
}

void print_kv(const std::string& key, double value) {
    std::printf("%s=%.12g\n", key.c_str(), value);
}

int cmd_propagate(const CliConfig& cfg) {
    const Grid grid = make_grid_checked(cfg);
    const InitialState state = parse_state(cfg.state);
    const double alpha = cfg.alphas.empty() ? 0.0 : cfg.alphas.front();
    const double t = cfg.times.empty() ? 0.0 : cfg.times.front();

    EvolvedField field = [&] {
        if (cfg.method == "oracle") return chirped_oracle(state, alpha, t, grid);
        if (cfg.method == "psi0") return psi0(state, alpha, t, grid);
        if (cfg.method == "psi1") return psi1_generic(state, alpha, t, grid);
        if (cfg.method == "exact") {
            auto exact = exact_evolution(state, alpha, t, grid);
            if (!exact)
                throw std::invalid_argument("no exact closed form for state " + cfg.state +
                                            " at alpha=" + std::to_string(alpha) +
                                            "; use --method oracle|psi0|psi1");
            return std::move(*exact);
        }
        throw std::invalid_argument("unknown --method '" + cfg.method +
                                    "' (expected exact|psi0|psi1|oracle)");
    }();

    const auto dir = std::filesystem::path(cfg.out) / "propagate";
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir / "field.csv", std::ios::binary);
        write_field_csv(field.field, os);
    }
    ComparisonReport report{"propagate", describe(state), grid, {}};
    CellReport cell;
    cell.alpha = alpha;
    cell.t = t;
    cell.method = method_name(field.method);
    cell.coeffs = field.coeffs;
    report.cells.push_back(std::move(cell));
    write_report_json(report, dir / "report.json");
    std::printf("wrote %s\n", (dir / "field.csv").string().c_str());
    print_kv("l2_norm", l2_norm(field.field));
    return 0;
}

int cmd_compare(const CliConfig& cfg) {
    const Grid grid = make_grid_checked(cfg);
    const InitialState state = parse_state(cfg.state);
    const double alpha = cfg.alphas.empty() ? 0.5 : cfg.alphas.front();
    const double t = cfg.times.empty() ? 5.0 : cfg.times.front();

    const auto exact = exact_evolution(state, alpha, t, grid);
    const EvolvedField oracle = chirped_oracle(state, alpha, t, grid);
    const WaveField& reference = exact ? exact->field : oracle.field;

    const EvolvedField p0 = psi0(state, alpha, t, grid);
    const EvolvedField p1 = [&] {
        if (const auto* s = std::get_if<SincState>(&state)) return sinc_psi1(s->b, alpha, t, grid);
        if (const auto* s = std::get_if<BesselState>(&state))
            return bessel_psi1(s->n, alpha, t, grid);
        return psi1_generic(state, alpha, t, grid);
    }();

    print_kv("err_psi0", rel_l2_error(p0.field, reference));
    print_kv("err_psi1", rel_l2_error(p1.field, reference));
    if (exact) print_kv("err_exact_vs_oracle", rel_l2_error(exact->field, oracle.field));
    return 0;
}

int cmd_sweep(const CliConfig& cfg) {
    ExperimentSpec spec;
    spec.id = "sweep";
    spec.state = parse_state(cfg.state);
    spec.alphas = cfg.alphas.empty() ? std::vector<double>{0.3, 1.0, 3.0, 10.0} : cfg.alphas;
    spec.times = cfg.times.empty() ? std::vector<double>{5.0} : cfg.times;
    spec.grid = make_grid_checked(cfg);
    spec.output_dir = std::filesystem::path(cfg.out) / "sweep";
    spec.jobs = cfg.jobs;
    spec.quad = quad_from(cfg);
    const auto report = run_experiment(spec);
    for (const auto& cell : report.cells) {
        std::printf("alpha=%.12g err_psi0=%.12g err_psi1=%.12g f4=%.12g\n", cell.alpha,
                    cell.errors.at("psi0_vs_exact"), cell.errors.at("psi1_vs_exact"),
                    cell.coeffs.f4);
    }
    return 0;
}

int cmd_figure(const CliConfig& cfg, const CLI::App* sub) {
    ExperimentSpec spec = figure_spec(cfg.figure_id, cfg.out);
    if (sub->count("--n") || sub->count("--xmin") || sub->count("--xmax"))
        spec.grid = make_grid_checked(cfg);
    if (!cfg.alphas.empty()) spec.alphas = cfg.alphas;
    if (!cfg.times.empty() && cfg.figure_id != "fig2") spec.times = cfg.times;
    if (sub->count("--state")) spec.state = parse_state(cfg.state);
    spec.jobs = cfg.jobs;
    spec.quad = quad_from(cfg);
    run_experiment(spec);
    std::printf("wrote %s\n", spec.output_dir.string().c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// selftest: the fast invariants, deterministic output, one line per check.

int failures = 0;

void check(const std::string& name, bool ok, double detail = 0.0) {
    if (ok) {
        std::printf("PASS %s\n", name.c_str());
    } else {
        std::printf("FAIL %s (%.3g)\n", name.c_str(), detail);
        ++failures;
    }
}

int cmd_selftest(const CliConfig& cfg) {
    failures = 0;

    {
        const Grid g = Grid::make(4, 0.0, 4.0);
        check("grid.dx", g.dx == 1.0);
        check("grid.points", g.x(0) == 0.0 && g.x(3) == 3.0);
        check("grid.nyquist", std::abs(Grid::make(8, -16.0, 16.0).nyquist() - M_PI / 4.0) < 1e-15);
    }
    {
        const Grid g = Grid::make(1024, -20.0, 20.0);
        WaveField f(g);
        for (std::size_t j = 0; j < g.n; ++j) {
            const double x = g.x(j);
            f[j] = std::exp(-0.5 * x * x);
        }
        const double before = l2_norm(f);
        auto data = fft(std::vector<cplx>(f.values().begin(), f.values().end()), false);
        data = fft(std::move(data), true);
        double diff = 0.0;
        for (std::size_t j = 0; j < g.n; ++j) diff += std::norm(data[j] - f[j]);
        check("fft.parseval_roundtrip", std::sqrt(diff * g.dx) / before < 1e-12,
              std::sqrt(diff * g.dx) / before);
    }
    {
        const double ai0 = airy_ai(0.0);
        check("airy.value_at_zero", std::abs(ai0 - 0.3550280538878172) < 1e-14, ai0);
        const double h = 1e-4;
        const double x = -3.0;
        const double lhs = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        check("airy.ode_residual", std::abs(lhs - x * airy_ai(x)) < 1e-6,
              std::abs(lhs - x * airy_ai(x)));
    }
    {
        const QuadratureSpec q = quad_from(cfg);
        check("bessel.j0_at_zero", bessel_jn(0, 0.0, q) == 1.0);
        const auto g0 = generalized_bessel(0, 2.5, 0.0, q);
        check("bessel.generalized_reduction", g0.real() == bessel_jn(0, 2.5, q));
        check("sinc.value_at_zero", paper_sinc(1.0, 0.0) == 2.0);
    }
    {
        const FactorCoeffs c = factor_coeffs(0.5, 1.0);
        check("factor.example", c.s == 2.0 && c.f1 == 0.25 && c.f4 == -0.25);
        check("factor.f2_identity", std::abs(std::exp(-2.0 * c.f2) - c.s) < 1e-14 * c.s);
        const FactorCoeffs c0 = factor_coeffs(3.0, 0.0);
        check("factor.t_zero", c0.f1 == 3.0 && c0.f2 == 0.0 && c0.f4 == 0.0 && c0.s == 1.0);
    }
    {
        const Grid g = Grid::make(4096, -40.0, 40.0);
        const InitialState state = AiryGaussState{0.0, 0.5};  // gaussian profile
        WaveField phi = sample(state, g);
        const double n0 = l2_norm(phi);
        const double n1 = l2_norm(apply_chirp(phi, 2.0));
        check("chirp.norm_preserved", std::abs(n1 / n0 - 1.0) < 1e-14, std::abs(n1 / n0 - 1.0));

        const WaveField lhs = spectral_free_step(apply_chirp(phi, 0.5), 1.0);
        const WaveField rhs = factored_evolution(phi, 0.5, 1.0);
        const double err = rel_l2_error(rhs, lhs);
        check("factorization.identity", err < 1e-8, err);

        const WaveField half = spectral_free_step(spectral_free_step(phi, 0.5), 0.5);
        const WaveField full = spectral_free_step(phi, 1.0);
        check("free_step.semigroup", rel_l2_error(half, full) < 1e-12, rel_l2_error(half, full));
    }
    {
        const InitialState state = SincState{1.0};
        double max_dev = 0.0;
        for (const double t : {0.0, 1.0, 5.0}) {
            const FactorCoeffs c = factor_coeffs(1.0, t);
            for (int i = 0; i < 20; ++i) {
                const double x0 = -9.5 + i;
                const double v = c.s * std::norm(psi0_at(state, 1.0, t, c.s * x0));
                const double ref = std::norm(evaluate(state, x0));
                max_dev = std::max(max_dev, std::abs(v - ref));
            }
        }
        check("psi0.density_invariance", max_dev < 1e-12, max_dev);
    }
    {
        double worst = 0.0;
        for (const double alpha : {0.005, 0.01, 0.02})
            for (const double t : {0.5, 1.0, 2.0}) {
                const double f4 = factor_coeffs(alpha, t).f4;
                const double dev = std::abs(f4 - f4_asymptotics(alpha, t).small_alpha);
                const double bound = 8.0 * t * t * t * t * alpha * alpha * alpha;
                worst = std::max(worst, dev / bound);
            }
        check("f4.small_alpha_bound", worst <= 1.0, worst);
    }

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structure-invariant chirped wave packets: propagation, comparisons, figures"};
    app.set_config("--config");
    app.require_subcommand(1);

    CliConfig cfg;
    cfg.out = default_out().string();

    auto add_common = [&](CLI::App* sub, bool with_method) {
        sub->add_option("--state", cfg.state,
                        "initial profile: airy:<eps>|airygauss:<eps>,<beta>|sinc:<b>|bessel:<n>");
        sub->add_option("--alpha", cfg.alphas, "chirp strength(s)");
        sub->add_option("--t", cfg.times, "evolution time(s)");
        sub->add_option("--n", cfg.n, "grid points (power of two)");
        sub->add_option("--xmin", cfg.xmin, "left edge of the grid");
        sub->add_option("--xmax", cfg.xmax, "right edge of the grid");
        sub->add_option("--out", cfg.out, "output directory (env CHIRP_OUT_DIR overrides default)");
        sub->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");
        sub->add_option("--quad-panels", cfg.quad_panels, "starting quadrature panel count");
        if (with_method)
            sub->add_option("--method", cfg.method, "exact|psi0|psi1|oracle (default exact)");
    };

    auto* propagate = app.add_subcommand("propagate", "evolve one state and dump the field");
    add_common(propagate, true);
    auto* compare = app.add_subcommand("compare", "errors of psi0/psi1 against exact and oracle");
    add_common(compare, false);
    auto* sweep = app.add_subcommand("sweep", "approximation error as a function of alpha");
    add_common(sweep, false);
    auto* figure = app.add_subcommand("figure", "reproduce a figure's data files");
    add_common(figure, false);
    figure->add_option("--id", cfg.figure_id, "fig1|fig2|fig3|fig4")->required();
    auto* selftest = app.add_subcommand("selftest", "run the fast invariant suite");
    add_common(selftest, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(propagate)) return cmd_propagate(cfg);
        if (app.got_subcommand(compare)) return cmd_compare(cfg);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
        if (app.got_subcommand(figure)) return cmd_figure(cfg, figure);
        if (app.got_subcommand(selftest)) return cmd_selftest(cfg);
    } catch (const numerical_guard_error& e) {
        std::fprintf(stderr, "numerical guard: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
