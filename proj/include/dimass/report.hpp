#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "boson_ladder.hpp"
#include "error.hpp"
#include "fermion_spectrum.hpp"
#include "format.hpp"
#include "quantities.hpp"
#include "table.hpp"

namespace dimass {

//---------------------------------------------------------------------------//
// Baryon fraction
//---------------------------------------------------------------------------//

struct MatterFractions
{
    double baryonic;
    double dark;
};

//! One of seven equal-mass brane types is ordinary matter.
constexpr MatterFractions baryon_fractions() noexcept
{
    return {1.0 / 7.0, 6.0 / 7.0};
}

//---------------------------------------------------------------------------//
// Observed records
//---------------------------------------------------------------------------//

enum class ObservedUnit
{
    MeV,
    GeV,
    dimensionless,
    degree
};

enum class QuantityKind
{
    mass,
    dimensionless,
    angle
};

constexpr std::string_view to_string(ObservedUnit u) noexcept
{
    switch (u)
    {
        case ObservedUnit::MeV:
            return "MeV";
        case ObservedUnit::GeV:
            return "GeV";
        case ObservedUnit::dimensionless:
            return "dimensionless";
        case ObservedUnit::degree:
            return "degree";
    }
    return "?";
}

constexpr QuantityKind kind_of(ObservedUnit u) noexcept
{
    switch (u)
    {
        case ObservedUnit::MeV:
        case ObservedUnit::GeV:
            return QuantityKind::mass;
        case ObservedUnit::dimensionless:
            return QuantityKind::dimensionless;
        case ObservedUnit::degree:
            return QuantityKind::angle;
    }
    return QuantityKind::dimensionless;
}

inline std::optional<ObservedUnit> parse_observed_unit(std::string_view s) noexcept
{
    for (auto u : {ObservedUnit::MeV,
                   ObservedUnit::GeV,
                   ObservedUnit::dimensionless,
                   ObservedUnit::degree})
    {
        if (s == to_string(u))
        {
            return u;
        }
    }
    return std::nullopt;
}

struct ObservedRecord
{
    std::string name;
    double value;
    ObservedUnit unit;
    std::optional<double> uncertainty;
    std::string source;

    friend bool operator==(ObservedRecord const&, ObservedRecord const&) = default;
};

inline constexpr std::string_view observed_header = "name,value,unit,uncertainty,source";

/*!
 * Parse the observed-values CSV.
 *
 * The first line is the fixed header. After it, blank lines and lines
 * starting with '#' are skipped. Fields are unquoted; the uncertainty field
 * may be empty.
 */
inline std::vector<ObservedRecord> parse_observed(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF"))
    {
        text.remove_prefix(3);
    }
    std::vector<ObservedRecord> records;
    std::set<std::string, std::less<>> names;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (!text.empty())
    {
        auto const nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
        {
            line.remove_suffix(1);
        }
        if (!saw_header)
        {
            if (line != observed_header)
            {
                throw ParseError(line_no, 1,
                                 "expected header '" + std::string(observed_header) + "'");
            }
            saw_header = true;
            continue;
        }
        if (line.empty() || line.front() == '#')
        {
            continue;
        }

        std::vector<std::string_view> fields;
        std::vector<std::size_t> starts;
        std::size_t pos = 0;
        while (true)
        {
            auto const comma = line.find(',', pos);
            starts.push_back(pos + 1);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
        if (fields.size() != 5)
        {
            throw ParseError(line_no,
                             fields.size() > 5 ? starts[5] : line.size() + 1,
                             "expected 5 fields, found " + std::to_string(fields.size()));
        }

        ObservedRecord rec{std::string(fields[0]), 0, ObservedUnit::dimensionless, {},
                           std::string(fields[4])};
        if (rec.name.empty())
        {
            throw ParseError(line_no, starts[0], "empty name");
        }
        auto const value = parse_double(fields[1]);
        if (!value || !std::isfinite(*value))
        {
            throw ParseError(line_no, starts[1],
                             "invalid value '" + std::string(fields[1]) + "'");
        }
        rec.value = *value;
        auto const unit = parse_observed_unit(fields[2]);
        if (!unit)
        {
            throw ParseError(line_no, starts[2],
                             "unknown unit '" + std::string(fields[2]) + "'");
        }
        rec.unit = *unit;
        if (!fields[3].empty())
        {
            auto const u = parse_double(fields[3]);
            if (!u || !std::isfinite(*u) || *u < 0)
            {
                throw ParseError(line_no, starts[3],
                                 "invalid uncertainty '" + std::string(fields[3]) + "'");
            }
            rec.uncertainty = *u;
        }
        if (!names.insert(rec.name).second)
        {
            throw ParseError(line_no, starts[0], "duplicate name '" + rec.name + "'");
        }
        records.push_back(std::move(rec));
    }
    if (!saw_header)
    {
        throw ParseError(1, 1, "missing header");
    }
    return records;
}

//! Inverse of \c parse_observed; numbers use the shortest exact form.
inline std::string write_observed(std::vector<ObservedRecord> const& records)
{
    std::string out(observed_header);
    out += '\n';
    for (auto const& r : records)
    {
        for (auto const* field : {&r.name, &r.source})
        {
            if (field->find_first_of(",\n\r") != std::string::npos)
            {
                throw InvalidInput("observed field '" + *field
                                   + "' cannot contain commas or newlines");
            }
        }
        if (r.name.empty() || r.name.front() == '#')
        {
            throw InvalidInput("observed name must be non-empty and not start with '#'");
        }
        out += r.name + "," + format_shortest(r.value) + "," + std::string(to_string(r.unit))
               + "," + (r.uncertainty ? format_shortest(*r.uncertainty) : std::string{})
               + "," + r.source + "\n";
    }
    return out;
}

//! The observed values cited alongside the model's predictions.
inline std::string default_observed_csv()
{
    return std::string(observed_header)
           + "\n"
             "top_quark,176,GeV,13,CDF\n"
             "theta_w,28.7,degree,,ref9\n"
             "baryon_fraction,0.13,dimensionless,,primordial deuterium abundance\n"
             "planck_mass,1.2e+19,GeV,,Planck mass\n";
}

//! Printed lepton and quark table masses as a reference dataset (no neutrinos).
inline std::vector<ObservedRecord> reference_table_records()
{
    std::vector<ObservedRecord> out;
    for (auto const& row : fermion_table())
    {
        if (row.reference.in_mev() == 0)
        {
            continue;
        }
        bool const gev = row.reference.unit() == MassUnit::GeV;
        out.push_back({row.composition.name,
                       row.reference.magnitude(),
                       gev ? ObservedUnit::GeV : ObservedUnit::MeV,
                       std::nullopt,
                       "reference table"});
    }
    return out;
}

//---------------------------------------------------------------------------//
// Computed quantities
//---------------------------------------------------------------------------//

enum class QuantityGroup
{
    leptons,
    quarks,
    bosons,
    electroweak,
    cosmology
};

constexpr std::string_view to_string(QuantityGroup g) noexcept
{
    switch (g)
    {
        case QuantityGroup::leptons:
            return "leptons";
        case QuantityGroup::quarks:
            return "quarks";
        case QuantityGroup::bosons:
            return "bosons";
        case QuantityGroup::electroweak:
            return "electroweak";
        case QuantityGroup::cosmology:
            return "cosmology";
    }
    return "?";
}

inline std::optional<QuantityGroup> parse_quantity_group(std::string_view s) noexcept
{
    for (auto g : {QuantityGroup::leptons,
                   QuantityGroup::quarks,
                   QuantityGroup::bosons,
                   QuantityGroup::electroweak,
                   QuantityGroup::cosmology})
    {
        if (s == to_string(g))
            return g;
    }
    return std::nullopt;
}

//! A model output; masses are stored in MeV.
struct ComputedQuantity
{
    std::string name;
    double value;
    QuantityKind kind;
    QuantityGroup group;
};

//! Flatten every model output into named quantities, in model order.
inline std::vector<ComputedQuantity> collect_computed(std::vector<SpectrumEntry> const& spectrum,
                                                      BosonLadder const& ladder,
                                                      ElectroweakMix const& mix,
                                                      MatterFractions const& fractions)
{
    std::vector<ComputedQuantity> out;
    for (auto const& e : spectrum)
    {
        out.push_back({e.name,
                       e.mass.in_mev(),
                       QuantityKind::mass,
                       e.family == Family::Lepton ? QuantityGroup::leptons
                                                  : QuantityGroup::quarks});
    }
    for (auto const& row : ladder)
    {
        out.push_back({"B" + std::to_string(row.orbital.value()),
                       row.mass.in_mev(),
                       QuantityKind::mass,
                       QuantityGroup::bosons});
    }
    out.push_back(
        {"planck_mass", ladder.mass(11).in_mev(), QuantityKind::mass, QuantityGroup::bosons});
    out.push_back(
        {"theta_w", mix.theta_w_deg, QuantityKind::angle, QuantityGroup::electroweak});
    out.push_back({"sin2_theta_w",
                   mix.sin2_theta_w,
                   QuantityKind::dimensionless,
                   QuantityGroup::electroweak});
    out.push_back(
        {"alpha_w", mix.alpha_w, QuantityKind::dimensionless, QuantityGroup::electroweak});
    out.push_back({"baryon_fraction",
                   fractions.baryonic,
                   QuantityKind::dimensionless,
                   QuantityGroup::cosmology});
    out.push_back({"dark_fraction",
                   fractions.dark,
                   QuantityKind::dimensionless,
                   QuantityGroup::cosmology});
    return out;
}

//---------------------------------------------------------------------------//
// Comparison
//---------------------------------------------------------------------------//

struct ComparisonRow
{
    std::string name;
    double computed;  //!< expressed in \c unit
    double observed;
    ObservedUnit unit;
    double rel_error;
    std::optional<bool> within_uncertainty;
};

struct ComparisonReport
{
    std::vector<ComparisonRow> rows;
    std::vector<std::string> computed_only;
    std::vector<std::string> observed_only;
};

/*!
 * Compare every name present in both sets, in observed-dataset order.
 *
 * Names present on one side only are listed in the report, never dropped.
 */
inline ComparisonReport compare_all(std::vector<ComputedQuantity> const& computed,
                                    std::vector<ObservedRecord> const& observed)
{
    ComparisonReport report;
    std::set<std::string, std::less<>> matched;
    for (auto const& obs : observed)
    {
        auto it = std::find_if(computed.begin(), computed.end(), [&](auto const& q) {
            return q.name == obs.name;
        });
        if (it == computed.end())
        {
            report.observed_only.push_back(obs.name);
            continue;
        }
        if (it->kind != kind_of(obs.unit))
        {
            throw DataError("unit-kind mismatch for '" + obs.name + "': observed in "
                            + std::string(to_string(obs.unit)));
        }
        double value = it->value;
        if (obs.unit == ObservedUnit::GeV)
        {
            value = MassValue::mev(value).in_gev();
        }
        ComparisonRow row{obs.name, value, obs.value, obs.unit, 0, std::nullopt};
        if (it->kind == QuantityKind::mass)
        {
            auto const mu = obs.unit == ObservedUnit::GeV ? MassUnit::GeV : MassUnit::MeV;
            if (obs.value < 0)
            {
                throw DataError("observed mass '" + obs.name + "' is negative");
            }
            row.rel_error =
                relative_error(MassValue::mev(it->value), MassValue(obs.value, mu));
        }
        else
        {
            row.rel_error = relative_error(value, obs.value);
        }
        if (obs.uncertainty)
        {
            row.within_uncertainty = std::abs(value - obs.value) <= *obs.uncertainty;
        }
        matched.insert(obs.name);
        report.rows.push_back(std::move(row));
    }
    for (auto const& q : computed)
    {
        if (!matched.contains(q.name))
        {
            report.computed_only.push_back(q.name);
        }
    }
    return report;
}

//! Rows as a table. JSON output carries exactly the five record keys.
inline Table to_table(std::vector<ComparisonRow> const& rows, bool with_unit = true)
{
    Table t;
    t.columns = {"name", "computed", "observed"};
    if (with_unit)
        t.columns.push_back("unit");
    t.columns.push_back("rel_error");
    t.columns.push_back("within_uncertainty");
    for (auto const& r : rows)
    {
        std::vector<Cell> cells{r.name, r.computed, r.observed};
        if (with_unit)
            cells.emplace_back(std::string(to_string(r.unit)));
        cells.emplace_back(r.rel_error);
        cells.push_back(r.within_uncertainty ? Cell{*r.within_uncertainty} : Cell{Null{}});
        t.add_row(std::move(cells));
    }
    return t;
}

inline std::string render(std::vector<ComparisonRow> const& rows,
                          OutputFormat format,
                          int digits = default_significant_digits)
{
    return render(to_table(rows, format != OutputFormat::json), format, digits);
}

namespace detail {
inline std::string join(std::vector<std::string> const& names)
{
    std::string out;
    for (auto const& n : names)
    {
        out += (out.empty() ? "" : ", ") + n;
    }
    return out;
}
}  // namespace detail

//! Markdown carries the skipped-names section; csv and json carry rows only.
inline std::string render(ComparisonReport const& report,
                          OutputFormat format,
                          int digits = default_significant_digits)
{
    std::string out = render(report.rows, format, digits);
    if (format == OutputFormat::markdown)
    {
        if (!report.observed_only.empty())
        {
            out += "\nSkipped (observed only): " + detail::join(report.observed_only) + "\n";
        }
        if (!report.computed_only.empty())
        {
            out += "\nSkipped (computed only): " + detail::join(report.computed_only) + "\n";
        }
    }
    return out;
}

}  // namespace dimass
