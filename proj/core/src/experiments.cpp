#include "chirpwave/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "chirpwave/errors.hpp"
#include "chirpwave/fft.hpp"

namespace chirpwave {

namespace {

Grid default_grid() { return Grid::make(8192, -80.0, 80.0); }

void ensure_dir(const std::filesystem::path& p) { std::filesystem::create_directories(p); }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + p.string());
    return os;
}

void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns) {
    auto os = open_out(path);
    for (std::size_t c = 0; c < headers.size(); ++c)
        os << headers[c] << (c + 1 < headers.size() ? ',' : '\n');
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << format_double(columns[c][r]) << (c + 1 < columns.size() ? ',' : '\n');
    }
}

struct CellFields {
    CellReport report;
    std::optional<EvolvedField> exact;
    std::optional<EvolvedField> fld_psi0;
    std::optional<EvolvedField> fld_psi1;
};

CellFields compare_cell(const InitialState& state, double alpha, double t, const Grid& grid,
                        const QuadratureSpec& quad, const OraclePlanLimits& limits,
                        bool want_oracle) {
    CellFields out;
    CellReport& rep = out.report;
    rep.alpha = alpha;
    rep.t = t;
    rep.coeffs = factor_coeffs(alpha, t);
    rep.method = method_name(Method::exact_closed_form);

    out.exact = exact_evolution(state, alpha, t, grid);
    out.fld_psi0 = psi0(state, alpha, t, grid);
    if (const auto* s = std::get_if<SincState>(&state))
        out.fld_psi1 = sinc_psi1(s->b, alpha, t, grid);
    else if (const auto* s = std::get_if<BesselState>(&state))
        out.fld_psi1 = bessel_psi1(s->n, alpha, t, grid);
    else
        out.fld_psi1 = psi1_generic(state, alpha, t, grid);

    if (out.exact) {
        rep.errors["psi0_vs_exact"] = rel_l2_error(out.fld_psi0->field, out.exact->field);
        rep.errors["psi1_vs_exact"] = rel_l2_error(out.fld_psi1->field, out.exact->field);
        rep.errors["density_sup_psi0_vs_exact"] =
            sup_norm_diff(density(out.fld_psi0->field), density(out.exact->field));
        if (want_oracle) {
            try {
                const EvolvedField oracle = chirped_oracle(state, alpha, t, grid, limits);
                rep.errors["exact_vs_oracle"] = rel_l2_error(out.exact->field, oracle.field);
            } catch (const numerical_guard_error& e) {
                rep.oracle_skipped = e.what();
            }
        }
    }
    (void)quad;
    return out;
}

void append_cell(ComparisonReport& report, CellReport cell) {
    for (const auto& [key, value] : cell.errors)
        if (!(value >= 0.0) || !std::isfinite(value))
            throw numerical_guard_error("experiment cell (alpha=" + std::to_string(cell.alpha) +
                                        ", t=" + std::to_string(cell.t) + "): error metric '" +
                                        key + "' is not finite and nonnegative");
    report.cells.push_back(std::move(cell));
}

const char* panel_letter(std::size_t i) {
    static const char* letters[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    return letters[i];
}

ComparisonReport run_fig1(const ExperimentSpec& spec) {
    ComparisonReport report{spec.id, describe(spec.state), spec.grid, {}};
    const auto* s = std::get_if<AiryGaussState>(&spec.state);
    if (!s) throw std::invalid_argument("fig1 requires an airygauss state");
    std::vector<CellFields> cells(spec.times.size());
    detail::parallel_for(spec.times.size(), spec.jobs, [&](std::size_t i) {
        cells[i] = compare_cell(spec.state, 0.0, spec.times[i], spec.grid, spec.quad,
                                spec.oracle_limits, true);
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto dens = density(cells[i].exact->field);
        write_columns_csv(spec.output_dir / (std::string(panel_letter(i)) + ".csv"),
                          {"x", "density"}, {spec.grid.xs(), dens});
        append_cell(report, std::move(cells[i].report));
    }
    return report;
}

ComparisonReport run_fig2(const ExperimentSpec& spec) {
    ComparisonReport report{spec.id, describe(spec.state), spec.grid, {}};
    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
        const double alpha = spec.alphas[i];
        std::vector<double> t_col, exact_col, small_col, large_col;
        for (const double t : spec.times) {
            const FactorCoeffs c = factor_coeffs(alpha, t);
            const F4Asymptotics a = f4_asymptotics(alpha, t);
            t_col.push_back(t);
            exact_col.push_back(c.f4);
            small_col.push_back(a.small_alpha);
            large_col.push_back(a.large_alpha);
        }
        write_columns_csv(spec.output_dir / (std::string(panel_letter(i)) + ".csv"),
                          {"t", "f4_exact", "f4_small_alpha", "f4_large_alpha"},
                          {t_col, exact_col, small_col, large_col});
        CellReport cell;
        cell.alpha = alpha;
        cell.t = spec.times.back();
        cell.method = "f4_sweep";
        cell.coeffs = factor_coeffs(alpha, spec.times.back());
        double max_dev_small = 0.0;
        for (const double t : spec.times) {
            const FactorCoeffs c = factor_coeffs(alpha, t);
            max_dev_small = std::max(max_dev_small,
                                     std::abs(c.f4 - f4_asymptotics(alpha, t).small_alpha));
        }
        cell.errors["f4_minus_small_alpha_max"] = max_dev_small;
        append_cell(report, std::move(cell));
    }
    return report;
}

// fig3/fig4 comparison panels: (x, density_exact, density_approx) for the
// headline panels; fig3 additionally emits (x, density_psi0,
// density_psi1_minus_psi0), which is the quantity panel (b)/(d) plot.
ComparisonReport run_fig34(const ExperimentSpec& spec, bool sinc_layout) {
    ComparisonReport report{spec.id, describe(spec.state), spec.grid, {}};
    const double t = spec.times.front();
    std::vector<CellFields> cells(spec.alphas.size());
    detail::parallel_for(spec.alphas.size(), spec.jobs, [&](std::size_t i) {
        cells[i] = compare_cell(spec.state, spec.alphas[i], t, spec.grid, spec.quad,
                                spec.oracle_limits, true);
    });
    std::size_t panel = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& cf = cells[i];
        const auto dens_exact = density(cf.exact->field);
        if (sinc_layout) {
            const auto dens0 = density(cf.fld_psi0->field);
            write_columns_csv(spec.output_dir / (std::string(panel_letter(panel++)) + ".csv"),
                              {"x", "density_exact", "density_psi0"},
                              {spec.grid.xs(), dens_exact, dens0});
            std::vector<double> diff(spec.grid.n);
            for (std::size_t j = 0; j < spec.grid.n; ++j)
                diff[j] = std::norm(cf.fld_psi1->field[j] - cf.fld_psi0->field[j]);
            write_columns_csv(spec.output_dir / (std::string(panel_letter(panel++)) + ".csv"),
                              {"x", "density_psi0", "density_psi1_minus_psi0"},
                              {spec.grid.xs(), dens0, diff});
        } else {
            const auto dens1 = density(cf.fld_psi1->field);
            write_columns_csv(spec.output_dir / (std::string(panel_letter(panel++)) + ".csv"),
                              {"x", "density_exact", "density_psi1"},
                              {spec.grid.xs(), dens_exact, dens1});
        }
        append_cell(report, std::move(cf.report));
    }
    return report;
}

ComparisonReport run_sweep(const ExperimentSpec& spec) {
    ComparisonReport report{spec.id, describe(spec.state), spec.grid, {}};
    const double t = spec.times.front();
    const auto rows = alpha_error_curve(spec.state, spec.alphas, t, spec.grid, spec.jobs);
    std::vector<double> a_col, e0_col, e1_col, f4_col;
    for (const auto& r : rows) {
        a_col.push_back(r.alpha);
        e0_col.push_back(r.err_psi0);
        e1_col.push_back(r.err_psi1);
        f4_col.push_back(r.f4);
        CellReport cell;
        cell.alpha = r.alpha;
        cell.t = t;
        cell.method = "sweep";
        cell.coeffs = factor_coeffs(r.alpha, t);
        cell.errors["psi0_vs_exact"] = r.err_psi0;
        cell.errors["psi1_vs_exact"] = r.err_psi1;
        append_cell(report, std::move(cell));
    }
    write_columns_csv(spec.output_dir / "curve.csv", {"alpha", "err_psi0", "err_psi1", "f4"},
                      {a_col, e0_col, e1_col, f4_col});
    return report;
}

ComparisonReport run_invariance(const ExperimentSpec& spec) {
    ComparisonReport report{spec.id, describe(spec.state), spec.grid, {}};
    const double alpha = spec.alphas.front();
    // 20 probe coordinates spread over the window interior
    std::vector<double> probes;
    const double span = 0.45 * (spec.grid.x_max - spec.grid.x_min);
    for (int i = 0; i < 20; ++i)
        probes.push_back(-0.5 * span + span * static_cast<double>(i) / 19.0);

    std::vector<double> x0_col, t_col, val_col;
    std::vector<double> reference(probes.size(), 0.0);
    double max_dev = 0.0;
    for (std::size_t ti = 0; ti < spec.times.size(); ++ti) {
        const double t = spec.times[ti];
        const FactorCoeffs c = factor_coeffs(alpha, t);
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const double x0 = probes[p];
            const cplx v = psi0_at(spec.state, alpha, t, c.s * x0);
            const double scaled = c.s * std::norm(v);
            x0_col.push_back(x0);
            t_col.push_back(t);
            val_col.push_back(scaled);
            if (ti == 0)
                reference[p] = scaled;
            else
                max_dev = std::max(max_dev, std::abs(scaled - reference[p]));
        }
    }
    write_columns_csv(spec.output_dir / "probes.csv", {"x0", "t", "scaled_density"},
                      {x0_col, t_col, val_col});
    CellReport cell;
    cell.alpha = alpha;
    cell.t = spec.times.back();
    cell.method = "invariance";
    cell.coeffs = factor_coeffs(alpha, spec.times.back());
    cell.errors["invariance_max_abs_dev"] = max_dev;
    append_cell(report, std::move(cell));
    return report;
}

}  // namespace

void ExperimentSpec::validate() const {
    static const char* known[] = {"fig1", "fig2", "fig3", "fig4", "sweep", "invariance"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return id == k; }) == std::end(known))
        throw std::invalid_argument("unknown experiment id '" + id + "'");
    if (alphas.empty()) throw std::invalid_argument("experiment needs at least one alpha");
    if (times.empty()) throw std::invalid_argument("experiment needs at least one time");
    if (grid.n == 0) throw std::invalid_argument("experiment needs a grid");
    validate_state(state);
    quad.validate();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ComparisonReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ensure_dir(spec.output_dir);
    ComparisonReport report;
    if (spec.id == "fig1") report = run_fig1(spec);
    else if (spec.id == "fig2") report = run_fig2(spec);
    else if (spec.id == "fig3") report = run_fig34(spec, true);
    else if (spec.id == "fig4") report = run_fig34(spec, false);
    else if (spec.id == "sweep") report = run_sweep(spec);
    else report = run_invariance(spec);
    write_report_json(report, spec.output_dir / "report.json");
    return report;
}

std::vector<AlphaErrorRow> alpha_error_curve(const InitialState& state,
                                             std::vector<double> alphas, double t,
                                             const Grid& grid, std::size_t jobs) {
    std::sort(alphas.begin(), alphas.end());
    std::vector<AlphaErrorRow> rows(alphas.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    detail::parallel_for(alphas.size(), jobs, [&](std::size_t i) {
        try {
            const double alpha = alphas[i];
            const auto exact = exact_evolution(state, alpha, t, grid);
            if (!exact)
                throw std::invalid_argument("alpha_error_curve: no exact closed form for state " +
                                            describe(state));
            EvolvedField p0 = psi0(state, alpha, t, grid);
            EvolvedField p1 = [&] {
                if (const auto* s = std::get_if<SincState>(&state))
                    return sinc_psi1(s->b, alpha, t, grid);
                if (const auto* s = std::get_if<BesselState>(&state))
                    return bessel_psi1(s->n, alpha, t, grid);
                return psi1_generic(state, alpha, t, grid);
            }();
            rows[i] = AlphaErrorRow{alpha, rel_l2_error(p0.field, exact->field),
                                    rel_l2_error(p1.field, exact->field),
                                    factor_coeffs(alpha, t).f4};
        } catch (...) {
            std::lock_guard<std::mutex> g(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return rows;
}

ExperimentSpec figure_spec(const std::string& id, const std::filesystem::path& out_root) {
    ExperimentSpec spec;
    spec.id = id;
    spec.grid = default_grid();
    spec.output_dir = out_root / id;
    if (id == "fig1") {
        spec.state = AiryGaussState{1.0, 0.01};
        spec.alphas = {0.0};
        spec.times = {0.0, 1.0, 2.0};
    } else if (id == "fig2") {
        spec.state = SincState{1.0};  // unused by the sweep itself
        spec.alphas = {10.0, 5.0, 0.5};
        spec.times.resize(500);
        // 500 uniform samples of (0, 5]; t = 0 is excluded because the
        // large-alpha series carries a 1/t term.
        for (std::size_t i = 0; i < 500; ++i)
            spec.times[i] = 5.0 * static_cast<double>(i + 1) / 500.0;
    } else if (id == "fig3") {
        spec.state = SincState{1.0};
        spec.alphas = {0.3, 3.0};
        spec.times = {5.0};
    } else if (id == "fig4") {
        spec.state = BesselState{0};
        spec.alphas = {10.0, 5.0, 0.5};
        spec.times = {5.0};
    } else if (id == "sweep") {
        spec.state = SincState{1.0};
        spec.alphas = {0.3, 1.0, 3.0, 10.0};
        spec.times = {5.0};
    } else if (id == "invariance") {
        spec.state = SincState{1.0};
        spec.alphas = {1.0};
        spec.times = {0.0, 1.0, 5.0};
    } else {
        throw std::invalid_argument("unknown experiment id '" + id + "'");
    }
    return spec;
}

void write_report_json(const ComparisonReport& report, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["experiment"] = report.experiment;
    j["state"] = report.state;
    j["grid"] = {{"n", report.grid.n}, {"x_min", report.grid.x_min}, {"x_max", report.grid.x_max}};
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& cell : report.cells) {
        nlohmann::ordered_json c;
        c["alpha"] = cell.alpha;
        c["t"] = cell.t;
        c["method"] = cell.method;
        c["f1"] = cell.coeffs.f1;
        c["f2"] = cell.coeffs.f2;
        c["f3"] = cell.coeffs.f3;
        c["f4"] = cell.coeffs.f4;
        c["s"] = cell.coeffs.s;
        nlohmann::ordered_json errs = nlohmann::ordered_json::object();
        for (const auto& [key, value] : cell.errors) errs[key] = value;
        c["errors"] = errs;
        if (cell.oracle_skipped) c["oracle_skipped"] = *cell.oracle_skipped;
        j["cells"].push_back(std::move(c));
    }
    auto os = open_out(path);
    os << j.dump(2) << '\n';
}

}  // namespace chirpwave
