// Command-line front end for the dimensional-orbital mass model.
//
// Exit codes: 0 success, 1 usage error, 2 data/calibration error,
// 3 tolerance failure under `compare --check`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dimass/dimass.hpp>

namespace {

using namespace dimass;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_tolerance = 3;

struct CliConfig
{
    std::optional<double> alpha;
    std::optional<double> m_electron_mev;
    std::optional<double> m_z_gev;
    std::optional<double> theta_w_deg;
    std::string format = "markdown";
    int precision = default_significant_digits;
    std::string calibration;
    std::string observed;
};

ModelConstants constants_from(CliConfig const& cfg)
{
    ModelConstants c;
    if (cfg.alpha)
        c = c.with_alpha_e(*cfg.alpha);
    if (cfg.m_electron_mev)
        c = c.with_m_electron(MassValue::mev(*cfg.m_electron_mev));
    if (cfg.m_z_gev)
        c = c.with_m_z(MassValue::gev(*cfg.m_z_gev));
    if (cfg.theta_w_deg)
        c = c.with_theta_w_deg(*cfg.theta_w_deg);
    return c;
}

OutputFormat format_of(CliConfig const& cfg)
{
    return *parse_output_format(cfg.format);
}

std::string read_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw DataError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush())
    {
        throw DataError("cannot write '" + path + "'");
    }
}

//! Bases from --calibration, or an in-memory fit when \c allow_fit is set.
std::optional<AuxBaseSet> load_bases(CliConfig const& cfg,
                                     ModelConstants const& c,
                                     bool allow_fit,
                                     std::vector<std::string> const& anchors)
{
    if (!cfg.calibration.empty())
    {
        try
        {
            return read_calibration(read_file(cfg.calibration)).bases(c);
        }
        catch (ParseError const& e)
        {
            throw DataError(cfg.calibration + ": " + e.what());
        }
    }
    if (allow_fit)
    {
        return calibrate(c, anchors).bases;
    }
    return std::nullopt;
}

//! Spectrum rows; quark rows only when quark constants are available.
std::vector<SpectrumEntry> spectrum_for(ModelConstants const& c, AuxBaseSet const& bases)
{
    if (bases.quark_base_7() && bases.top_lump_8())
    {
        return full_spectrum(c, bases);
    }
    std::vector<SpectrumEntry> out;
    for (auto const& row : fermion_table())
    {
        if (row.composition.family == Family::Lepton)
        {
            out.push_back({row.composition.name,
                           row.composition.symbol,
                           Family::Lepton,
                           fermion_mass(row.composition, bases, c),
                           row.given});
        }
    }
    return out;
}

std::vector<ComputedQuantity> compute_all(ModelConstants const& c, AuxBaseSet const& bases)
{
    return collect_computed(
        spectrum_for(c, bases), boson_ladder(c), electroweak_mix(c), baryon_fractions());
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//

int cmd_bosons(CliConfig const& cfg, bool eq1)
{
    auto const c = constants_from(cfg);
    Table t;
    t.columns = {"D", "boson", "rule", "mass_gev", "gauge_boson", "interaction"};
    if (eq1)
        t.columns.push_back("eq1_gev");
    for (auto const& row : boson_ladder(c))
    {
        auto const info = boson_orbital_info(row.orbital);
        std::vector<Cell> cells{std::int64_t{row.orbital.value()},
                                "B_" + std::to_string(row.orbital.value()),
                                std::string(info.rule),
                                row.mass.in_gev(),
                                std::string(to_string(row.gauge_label)),
                                std::string(row.symmetry_label)};
        if (eq1)
            cells.emplace_back(eq1_mass(row.orbital, c).in_gev());
        t.add_row(std::move(cells));
    }
    std::cout << render(t, format_of(cfg), cfg.precision);
    return exit_ok;
}

int cmd_calibrate(CliConfig const& cfg,
                  std::vector<std::string> const& anchors,
                  std::string output)
{
    auto const c = constants_from(cfg);
    auto const result = calibrate(c, anchors);
    if (output.empty())
        output = cfg.calibration.empty() ? "dimass_calibration.txt" : cfg.calibration;
    write_file(output, write_calibration(CalibrationFile::from(result.bases)));
    std::cerr << "wrote " << output << "\n";

    Table t;
    t.columns = {"kind", "name", "value", "unit", "reference", "rel_error"};
    t.add_row({"constant", "lepton_base_7", result.bases.lepton_base_7().in_mev(), "MeV",
               Null{}, Null{}});
    t.add_row({"constant", "quark_base_7", result.bases.quark_base_7()->in_mev(), "MeV",
               Null{}, Null{}});
    t.add_row({"constant", "top_lump_8", result.bases.top_lump_8()->in_gev(), "GeV",
               Null{}, Null{}});
    auto add = [&](Residual const& r, char const* kind) {
        auto const& row = find_fermion(r.name);
        auto const unit = row.reference.unit();
        t.add_row({kind, r.name, fermion_mass(row.composition, result.bases, c).in(unit),
                   std::string(to_string(unit)), row.reference.magnitude(), r.rel_error});
    };
    for (auto const& r : result.residuals)
        add(r, "anchor");
    for (auto const& r : result.non_anchor_residuals)
        add(r, "held_out");
    std::cout << render(t, format_of(cfg), cfg.precision);
    return exit_ok;
}

int cmd_fermions(CliConfig const& cfg, bool fit, std::vector<std::string> const& anchors)
{
    auto const c = constants_from(cfg);
    auto const bases = load_bases(cfg, c, fit, anchors);
    if (!bases)
    {
        std::cerr << "error: quark constants are not calibrated; pass --calibration "
                     "<file> or --calibrate\n";
        return exit_data;
    }
    Table t;
    t.columns = {"name", "symbol", "family", "D_a", "composition", "mass_mev", "mass",
                 "note"};
    auto const spectrum = full_spectrum(c, *bases);
    for (std::size_t i = 0; i < spectrum.size(); ++i)
    {
        auto const& e = spectrum[i];
        auto const& comp = fermion_table()[i].composition;
        auto const shown = adaptive(e.mass);
        Cell note = Null{};
        if (e.given)
            note = "given";
        else if (e.mass.in_mev() == 0)
            note = "0";
        t.add_row({e.name, e.symbol, std::string(to_string(e.family)), comp.d_a,
                   comp.constituents, e.mass.in_mev(),
                   format_significant(shown.magnitude(), cfg.precision) + " "
                       + std::string(to_string(shown.unit())),
                   note});
    }
    std::cout << render(t, format_of(cfg), cfg.precision);
    return exit_ok;
}

struct CompareOptions
{
    std::string dataset = "default";
    std::vector<std::string> select;
    bool check = false;
    double tol = 0.005;
    std::vector<std::string> anchors{"d"};
};

int cmd_compare(CliConfig const& cfg, CompareOptions const& opt)
{
    auto const c = constants_from(cfg);
    if (cfg.calibration.empty())
        std::cerr << "note: no --calibration file; calibrating in memory\n";
    auto const bases = *load_bases(cfg, c, true, opt.anchors);

    std::vector<ObservedRecord> observed;
    if (!cfg.observed.empty())
    {
        try
        {
            observed = parse_observed(read_file(cfg.observed));
        }
        catch (ParseError const& e)
        {
            throw DataError(cfg.observed + ": " + e.what());
        }
    }
    else if (opt.dataset == "reference")
        observed = reference_table_records();
    else
        observed = parse_observed(default_observed_csv());

    auto computed = compute_all(c, bases);
    if (!opt.select.empty())
    {
        std::vector<QuantityGroup> groups;
        for (auto const& s : opt.select)
            groups.push_back(*parse_quantity_group(s));
        auto selected = [&](ComputedQuantity const& q) {
            return std::find(groups.begin(), groups.end(), q.group) != groups.end();
        };
        // Observed names that belong to a deselected group are excluded, not skipped.
        std::erase_if(observed, [&](ObservedRecord const& r) {
            auto it = std::find_if(computed.begin(), computed.end(), [&](auto const& q) {
                return q.name == r.name;
            });
            return it != computed.end() && !selected(*it);
        });
        std::erase_if(computed, [&](auto const& q) { return !selected(q); });
    }

    auto const report = compare_all(computed, observed);
    auto const format = format_of(cfg);
    std::cout << render(report, format, cfg.precision);
    if (format != OutputFormat::markdown)
    {
        for (auto const& n : report.observed_only)
            std::cerr << "skipped (observed only): " << n << "\n";
        for (auto const& n : report.computed_only)
            std::cerr << "skipped (computed only): " << n << "\n";
    }

    if (opt.check)
    {
        int breaches = 0;
        for (auto const& row : report.rows)
        {
            if (row.rel_error > opt.tol)
            {
                std::cerr << "tolerance breach: " << row.name << " rel_error "
                          << format_significant(row.rel_error) << " > "
                          << format_shortest(opt.tol) << "\n";
                ++breaches;
            }
        }
        if (breaches)
            return exit_tolerance;
    }
    return exit_ok;
}

struct SweepOptions
{
    std::string param;
    double from = 0;
    double to = 0;
    int steps = 1;
    std::vector<std::string> outputs{"muon", "tau", "B6", "B11", "alpha_w"};
};

int cmd_sweep(CliConfig const& cfg, SweepOptions const& opt)
{
    auto const base = constants_from(cfg);
    auto const known = compute_all(base, calibrate(base).bases);
    bool need_quarks = false;
    Table t;
    t.columns = {opt.param};
    for (auto const& name : opt.outputs)
    {
        auto it = std::find_if(known.begin(), known.end(), [&](auto const& q) {
            return q.name == name;
        });
        if (it == known.end())
            throw InvalidInput("unknown sweep output '" + name + "'");
        need_quarks = need_quarks || it->group == QuantityGroup::quarks;
        t.columns.push_back(it->kind == QuantityKind::mass ? name + "_mev" : name);
    }
    for (int i = 0; i < opt.steps; ++i)
    {
        double const v =
            opt.steps == 1 ? opt.from
                           : opt.from + (opt.to - opt.from) * i / (opt.steps - 1);
        ModelConstants c = base;
        if (opt.param == "alpha")
            c = c.with_alpha_e(v);
        else if (opt.param == "m-electron-mev")
            c = c.with_m_electron(MassValue::mev(v));
        else if (opt.param == "m-z-gev")
            c = c.with_m_z(MassValue::gev(v));
        else
            c = c.with_theta_w_deg(v);
        auto const bases = need_quarks ? calibrate(c).bases : AuxBaseSet(c);
        auto const q = compute_all(c, bases);
        std::vector<Cell> row{v};
        for (auto const& name : opt.outputs)
        {
            auto it = std::find_if(q.begin(), q.end(), [&](auto const& x) {
                return x.name == name;
            });
            row.emplace_back(it->value);
        }
        t.add_row(std::move(row));
    }
    std::cout << render(t, format_of(cfg), cfg.precision);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dimensional-orbital particle mass calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read key=value options from a file")
        ->envname("DIMASS_CONFIG");

    CliConfig cfg;
    app.add_option("--alpha", cfg.alpha, "Fine-structure constant alpha_e");
    app.add_option("--m-electron-mev", cfg.m_electron_mev, "Electron mass in MeV");
    app.add_option("--m-z-gev", cfg.m_z_gev, "Z boson mass in GeV");
    app.add_option("--theta-w-deg", cfg.theta_w_deg, "Weak mixing angle in degrees");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"markdown", "md", "csv", "json"}));
    app.add_option("--precision", cfg.precision, "Significant digits in output")
        ->check(CLI::Range(1, 17));
    app.add_option("--calibration", cfg.calibration, "Calibration file (key=value)");
    app.add_option("--observed", cfg.observed, "Observed-values CSV");

    auto* bosons = app.add_subcommand("bosons", "Main-orbital boson mass ladder");
    bool eq1 = false;
    bosons->add_flag("--eq1", eq1, "Add the approximate closed-form column");

    auto* calib = app.add_subcommand("calibrate", "Fit quark constants, write a file");
    std::vector<std::string> anchors{"d"};
    std::string output;
    calib->add_option("--anchors", anchors, "Quark anchor rows (u,d,s,c,b)")
        ->delimiter(',')
        ->check(CLI::IsMember({"u", "d", "s", "c", "b"}));
    calib->add_option("--output,-o", output, "Calibration file to write");

    auto* fermions = app.add_subcommand("fermions", "Lepton and quark masses");
    bool fit = false;
    fermions->add_flag("--calibrate", fit, "Calibrate in memory instead of reading a file");

    auto* compare = app.add_subcommand("compare", "Compare computed and observed values");
    CompareOptions copt;
    compare->add_option("--dataset", copt.dataset, "Built-in dataset when no --observed")
        ->check(CLI::IsMember({"default", "reference"}));
    compare->add_option("--select", copt.select, "Restrict to quantity groups")
        ->delimiter(',')
        ->check(CLI::IsMember({"leptons", "quarks", "bosons", "electroweak", "cosmology"}));
    compare->add_flag("--check", copt.check, "Exit 3 if any rel_error exceeds --tol");
    compare->add_option("--tol", copt.tol, "Relative tolerance for --check")
        ->check(CLI::NonNegativeNumber);
    compare->add_flag("--calibrate", "Calibrate in memory (the default without a file)");

    auto* sweep = app.add_subcommand("sweep", "Sweep one constant and tabulate outputs");
    SweepOptions sopt;
    sweep->add_option("--param", sopt.param, "Constant to vary")
        ->required()
        ->check(CLI::IsMember({"alpha", "m-electron-mev", "m-z-gev", "theta-w-deg"}));
    sweep->add_option("--from", sopt.from, "Start value")->required();
    sweep->add_option("--to", sopt.to, "End value")->required();
    sweep->add_option("--steps", sopt.steps, "Number of points")
        ->required()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--outputs", sopt.outputs, "Output quantities")->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        // Constants are validated before any subcommand runs.
        constants_from(cfg);
        if (*bosons)
            return cmd_bosons(cfg, eq1);
        if (*calib)
            return cmd_calibrate(cfg, anchors, output);
        if (*fermions)
            return cmd_fermions(cfg, fit, anchors);
        if (*compare)
            return cmd_compare(cfg, copt);
        if (*sweep)
            return cmd_sweep(cfg, sopt);
    }
    catch (InvalidInput const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
