// spinscat: command-line front end for the spinor step/barrier library.
//
// Exit codes: 0 ok, 2 invalid input, 3 a check flagged violations (report
// still written), 4 I/O failure.

#include "spinscat/spinscat.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace spinscat;

enum Exit { kOk = 0, kInvalid = 2, kFlagged = 3, kIo = 4 };

struct Config {
    std::string rep = "dirac";
    std::string from = "dirac";
    double m = 1.0;
    double v0 = 0.0;
    double width = 1.0;
    double energy = 2.0;
    double emin = 0.0, emax = 0.0;
    int steps = 100;
    unsigned threads = 1;
    SpinLabel spin = SpinLabel::up;
    Units units = Units::natural;
    DirectionConvention convention = DirectionConvention::flux;
    SpinBasis basis = SpinBasis::echelon;
    std::string output;
    std::string format = "csv";
    std::string figure;
    std::string spin_s = "up", units_s = "natural", convention_s = "flux", basis_s = "echelon";
};

class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 2) throw validation_error("--steps must be >= 2");
    if (!(hi > lo)) throw validation_error("--emax must exceed --emin");
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
    return g;
}

/// Natural-unit (m, V0, grid) from the configured units.
struct Natural {
    double m, v0;
    std::vector<double> grid;
};

Natural to_natural(const Config& c) {
    const double s = unit_scale(c.units);
    Natural n{c.m / s, c.v0 / s, {}};
    if (!(c.m > 0.0)) throw validation_error("--m must be > 0");
    if (!(c.emin > c.m))
        throw validation_error("--emin must exceed m (" + format_sig12(c.m) + " " + std::string(to_string(c.units)) +
                               ")");
    for (double e : linear_grid(c.emin, c.emax, c.steps)) n.grid.push_back(e / s);
    return n;
}

ScatterOptions options(const Config& c) {
    ScatterOptions o;
    o.convention = c.convention;
    o.basis = c.basis;
    return o;
}

CsvMetadata metadata(const Config& c) { return {c.rep, c.m, c.v0, c.spin, c.units, c.convention}; }

std::string render_rows(const std::vector<SweepRow>& rows, const Config& c) {
    if (c.format == "json") return dump(to_json(rows, metadata(c)));
    return csv_string(rows, metadata(c));
}

int cmd_algebra(const Config& c) {
    std::vector<AlgebraReport> reports;
    if (c.rep == "all") {
        reports = full_algebra_report();
    } else {
        reports.push_back(check_gamma_basis(build_gamma_basis()));
        reports.push_back(validate_representation(registry_lookup(c.rep)));
    }
    json out{{"reports", json::array()}, {"flags", json::array()}};
    for (const auto& r : reports) {
        out["reports"].push_back(to_json(r));
        for (const auto& v : r.violations()) out["flags"].push_back(r.subject + ": " + v);
    }
    emit(dump(out), c.output);
    return out["flags"].empty() ? kOk : kFlagged;
}

int cmd_equiv(const Config& c) {
    const auto& from = registry_lookup(c.from);
    const auto& to = registry_lookup(c.rep);
    json out = to_json(compare_representations(from, to));
    out = json{{"from", c.from}, {"to", c.rep}, {"report", out}};
    out["reality_residual"] = num(reality_check(to, 2.0, 1.0));
    emit(dump(out), c.output);
    return kOk;
}

int cmd_scatter(const Config& c) {
    const auto n = to_natural(c);
    const auto rows = sweep(registry_lookup(c.rep), n.m, n.v0, n.grid, c.spin, options(c), c.threads);
    emit(render_rows(rows, c), c.output);
    return kOk;
}

int cmd_barrier(const Config& c) {
    if (!(c.width > 0.0)) throw validation_error("--width must be > 0");
    const auto n = to_natural(c);
    const auto& rep = registry_lookup(c.rep);
    std::vector<SweepRow> rows;
    for (double E : n.grid) {
        SweepRow row;
        row.E = E;
        try {
            row.result = solve_barrier(rep, E, n.m, n.v0, c.width, c.spin, options(c));
        } catch (const threshold_error& e) {
            row.flag = e.what();
        } catch (const defective_modes_error& e) {
            row.flag = e.what();
        }
        rows.push_back(std::move(row));
    }
    emit(render_rows(rows, c), c.output);
    return kOk;
}

std::vector<std::array<double, 3>> default_audit_points() {
    std::vector<std::array<double, 3>> pts;
    for (double E : {1.5, 2.0, 2.5, 3.0, 4.0})
        for (double V0 : {0.0, 0.1, 0.25, 0.5})
            if ((E - V0) > 1.0 + 1e-6) pts.push_back({E, 1.0, V0});
    return pts;
}

int cmd_audit(const Config& c) {
    const auto report = audit_closed_forms(default_audit_points(), std::pair{2.0, 1.0});
    emit(dump(to_json(report)), c.output);
    return report.flagged() ? kFlagged : kOk;
}

int cmd_klein(const Config& c) {
    const double s = unit_scale(c.units);
    const double m = c.m / s, E = c.energy / s;
    if (!(E > m)) throw validation_error("--energy must exceed m");
    const auto grid = geometric_grid(10.0 * E, 1e6 * std::max(m, E), 25);
    const auto k = klein_probe(registry_lookup(c.rep), E, m, grid, c.convention);
    emit(dump(to_json(k)), c.output);
    return kOk;
}

int cmd_figure(const Config& c) {
    const std::filesystem::path dir = c.output.empty() ? std::filesystem::path(".") : std::filesystem::path(c.output);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create '" + dir.string() + "': " + ec.message());

    if (c.figure == "fig2") {
        // electron units, 1 keV step, spin-up incident
        Config f = c;
        f.rep = "ajaib";
        f.units = Units::keV;
        f.m = kElectronMassKeV;
        f.v0 = 1.0;
        f.emin = 512.05;
        f.emax = 530.0;
        f.steps = c.steps;
        f.spin = SpinLabel::up;
        f.format = "csv";
        f.output = (dir / "fig2_ajaib.csv").string();
        return cmd_scatter(f);
    }
    if (c.figure == "fig3") {
        Config f = c;
        f.rep = "xi";
        f.units = Units::natural;
        f.m = 1.0;
        f.v0 = 2.0;
        f.spin = SpinLabel::up;
        f.format = "csv";
        f.emin = 1.05 * 3.0;
        f.emax = 10.0 * 3.0;
        f.output = (dir / "fig3_decomposition.csv").string();
        if (int rc = cmd_scatter(f); rc != kOk) return rc;
        f.emin = 1.05;
        f.output = (dir / "fig3_conservation.csv").string();
        return cmd_scatter(f);
    }
    throw validation_error("figure must be fig2 or fig3");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spinor scattering off potential steps and barriers in several matrix representations"};
    app.require_subcommand(1);
    Config cfg;

    const std::map<std::string, SpinLabel> spins{{"up", SpinLabel::up}, {"down", SpinLabel::down}};
    const std::map<std::string, Units> units{{"natural", Units::natural}, {"keV", Units::keV}};
    const std::map<std::string, DirectionConvention> conventions{{"flux", DirectionConvention::flux},
                                                                 {"momentum", DirectionConvention::momentum}};
    const std::map<std::string, SpinBasis> bases{{"echelon", SpinBasis::echelon},
                                                 {"sigma3", SpinBasis::projected_sigma3}};

    auto keys = [](const auto& map) {
        std::vector<std::string> k;
        for (const auto& [name, value] : map) k.push_back(name);
        return CLI::IsMember(k);
    };

    auto common = [&](CLI::App* s) {
        s->add_option("--rep", cfg.rep, "representation: dirac, ajaib, xi");
        s->add_option("--output,-o", cfg.output, "output path (stdout if omitted)");
    };
    auto physics = [&](CLI::App* s) {
        common(s);
        s->add_option("--m", cfg.m, "rest mass (keV units: defaults to 511)");
        s->add_option("--v0", cfg.v0, "step height");
        s->add_option("--emin", cfg.emin, "lowest energy")->required();
        s->add_option("--emax", cfg.emax, "highest energy")->required();
        s->add_option("--steps", cfg.steps, "grid points (>= 2)");
        s->add_option("--spin", cfg.spin_s, "incident spin: up or down")->check(keys(spins));
        s->add_option("--units", cfg.units_s, "natural or keV")->check(keys(units));
        s->add_option("--klein-convention", cfg.convention_s, "direction convention: flux or momentum")
            ->check(keys(conventions));
        s->add_option("--spin-basis", cfg.basis_s, "spin labels: echelon or sigma3")->check(keys(bases));
        s->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--threads", cfg.threads, "worker threads for sweeps");
    };

    auto* algebra = app.add_subcommand("algebra", "check the matrix identities (JSON)");
    common(algebra);

    auto* equiv = app.add_subcommand("equiv", "intertwiner and metric between two representations (JSON)");
    common(equiv);
    equiv->add_option("--from", cfg.from, "source representation");

    auto* scatter = app.add_subcommand("scatter", "step scattering sweep");
    physics(scatter);
    auto* barrier = app.add_subcommand("barrier", "square barrier sweep");
    physics(barrier);
    barrier->add_option("--width", cfg.width, "barrier width in units of 1/m");

    auto* audit = app.add_subcommand("audit", "compare the printed closed forms with the numeric matcher (JSON)");
    audit->add_option("--output,-o", cfg.output, "output path (stdout if omitted)");

    auto* klein = app.add_subcommand("klein", "large-step limits (JSON)");
    common(klein);
    klein->add_option("--m", cfg.m, "rest mass");
    klein->add_option("--energy,-E", cfg.energy, "incident energy");
    klein->add_option("--units", cfg.units_s, "natural or keV")->check(keys(units));
    klein->add_option("--klein-convention", cfg.convention_s, "flux or momentum")->check(keys(conventions));

    auto* figure = app.add_subcommand("figure", "figure data: fig2 (spin-resolved) or fig3 (interference)");
    figure->add_option("name", cfg.figure, "fig2 or fig3")->required()->check(CLI::IsMember({"fig2", "fig3"}));
    figure->add_option("--output,-o", cfg.output, "output directory");
    figure->add_option("--steps", cfg.steps, "grid points (>= 2)");
    figure->add_option("--threads", cfg.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    cfg.spin = spins.at(cfg.spin_s);
    cfg.units = units.at(cfg.units_s);
    cfg.convention = conventions.at(cfg.convention_s);
    cfg.basis = bases.at(cfg.basis_s);
    if (algebra->parsed() && algebra->get_option("--rep")->count() == 0) cfg.rep = "all";
    for (auto* s : {scatter, barrier, klein}) {
        if (s->parsed() && cfg.units == Units::keV && s->get_option("--m")->count() == 0) cfg.m = kElectronMassKeV;
    }
    if (klein->parsed() && klein->get_option("--rep")->count() == 0) cfg.rep = "ajaib";
    if (klein->parsed() && klein->get_option("--klein-convention")->count() == 0)
        cfg.convention = DirectionConvention::momentum;

    try {
        if (algebra->parsed()) return cmd_algebra(cfg);
        if (equiv->parsed()) return cmd_equiv(cfg);
        if (scatter->parsed()) return cmd_scatter(cfg);
        if (barrier->parsed()) return cmd_barrier(cfg);
        if (audit->parsed()) return cmd_audit(cfg);
        if (klein->parsed()) return cmd_klein(cfg);
        if (figure->parsed()) return cmd_figure(cfg);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const threshold_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
