#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boson_ladder.hpp"
#include "error.hpp"
#include "format.hpp"
#include "quantities.hpp"

namespace dimass {

//---------------------------------------------------------------------------//
// Composition data
//---------------------------------------------------------------------------//

enum class Family
{
    Lepton,
    Quark
};

constexpr std::string_view to_string(Family f) noexcept
{
    return f == Family::Lepton ? "lepton" : "quark";
}

//! Zero-auxiliary constituents of a composition.
enum class BaseTerm
{
    NeutrinoZero,   //!< l_5, l_7, l_8: massless
    Electron,       //!< l_6 = e
    ThreeNeutrino,  //!< q_5 = u_5 = 3 nu_e (massless)
    ThreeElectron,  //!< q_6 = d_6 = 3e
    ThreeMuon,      //!< q_7 = 3 mu, with mu the computed muon
    LumpedD8        //!< q_8 + t_8 of the top quark, calibrated as one constant
};

//! One occupied auxiliary cell (D, a) with a >= 1.
class AuxTerm
{
  public:
    AuxTerm(OrbitalIndex orbital, AuxIndex a, Family family)
        : orbital_(orbital), a_(a), family_(family)
    {
        int const max_a = orbital.value() == 7 ? 5 : orbital.value() == 8 ? 2 : 0;
        if (max_a == 0)
        {
            throw InvalidInput("auxiliary terms live on orbitals 7 and 8 only");
        }
        if (a.value() < 1 || a.value() > max_a)
        {
            throw InvalidInput("auxiliary index " + std::to_string(a.value())
                               + " is not an occupied cell of orbital "
                               + std::to_string(orbital.value()));
        }
    }

    OrbitalIndex orbital() const noexcept { return orbital_; }
    AuxIndex a() const noexcept { return a_; }
    Family family() const noexcept { return family_; }

  private:
    OrbitalIndex orbital_;
    AuxIndex a_;
    Family family_;
};

struct FermionComposition
{
    std::string name;     //!< e.g. "muon", "top_quark"
    std::string symbol;   //!< e.g. "mu", "t"
    Family family;
    std::vector<BaseTerm> base_terms;
    std::vector<AuxTerm> aux_terms;
    std::string d_a;           //!< orbital notation, e.g. "6_0 + 7_0 + 7_1"
    std::string constituents;  //!< e.g. "e + nu_mu + mu_7"
};

//! Throws InvalidInput unless the composition is internally consistent.
inline void validate(FermionComposition const& comp)
{
    std::set<int> orbitals;
    for (auto const& t : comp.aux_terms)
    {
        if (t.family() != comp.family)
        {
            throw InvalidInput(comp.name + ": auxiliary term family mismatch");
        }
        if (!orbitals.insert(t.orbital().value()).second)
        {
            throw InvalidInput(comp.name + ": more than one auxiliary term on orbital "
                               + std::to_string(t.orbital().value()));
        }
    }
    auto has = [&](BaseTerm b) {
        return std::find(comp.base_terms.begin(), comp.base_terms.end(), b)
               != comp.base_terms.end();
    };
    bool const quark_only = has(BaseTerm::ThreeNeutrino) || has(BaseTerm::ThreeElectron)
                            || has(BaseTerm::ThreeMuon) || has(BaseTerm::LumpedD8);
    if (quark_only && comp.family != Family::Quark)
    {
        throw InvalidInput(comp.name + ": quark base term in a lepton composition");
    }
    if (comp.family == Family::Quark && has(BaseTerm::LumpedD8) && orbitals.count(8))
    {
        throw InvalidInput(comp.name + ": D = 8 both lumped and explicit");
    }
}

/*!
 * Distinct auxiliary cells occupied by quarks across a composition table.
 *
 * The lumped D = 8 top contribution occupies the (8, 2) cell.
 */
inline std::size_t quark_aux_cells(std::span<FermionComposition const> table)
{
    std::set<std::pair<int, int>> cells;
    for (auto const& comp : table)
    {
        if (comp.family != Family::Quark)
        {
            continue;
        }
        for (auto const& t : comp.aux_terms)
        {
            cells.emplace(t.orbital().value(), t.a().value());
        }
        if (std::find(comp.base_terms.begin(), comp.base_terms.end(), BaseTerm::LumpedD8)
            != comp.base_terms.end())
        {
            cells.emplace(8, 2);
        }
    }
    return cells.size();
}

//! Validate every row and check that the quarks fit the seven auxiliary orbitals.
inline void validate_table(std::span<FermionComposition const> table,
                           int n_aux_orbitals = ModelConstants::required_orbitals)
{
    std::set<std::string> names;
    for (auto const& comp : table)
    {
        validate(comp);
        if (!names.insert(comp.name).second)
        {
            throw InvalidInput("duplicate composition name " + comp.name);
        }
    }
    if (quark_aux_cells(table) > static_cast<std::size_t>(n_aux_orbitals))
    {
        throw InvalidInput("quark compositions need more than "
                           + std::to_string(n_aux_orbitals)
                           + " auxiliary orbitals");
    }
}

//! A built-in composition row plus the printed reference mass used as anchor.
struct ReferenceRow
{
    FermionComposition composition;
    MassValue reference;  //!< printed mass, as a calibration target
    int printed_digits;   //!< significant figures of the printed value
    bool given;           //!< the row echoes an input rather than computing
};

//! Lepton and quark compositions, in reference-table order.
inline std::vector<ReferenceRow> const& fermion_table()
{
    using B = BaseTerm;
    auto lep = [](int d, int a) {
        return AuxTerm(OrbitalIndex(d), AuxIndex(a), Family::Lepton);
    };
    auto qrk = [](int d, int a) {
        return AuxTerm(OrbitalIndex(d), AuxIndex(a), Family::Quark);
    };
    auto const L = Family::Lepton;
    auto const Q = Family::Quark;
    static std::vector<ReferenceRow> const rows = [&] {
        std::vector<ReferenceRow> r{
            {{"nu_e", "nu_e", L, {B::NeutrinoZero}, {}, "5_0", "nu_e"},
             MassValue::mev(0), 1, false},
            {{"electron", "e", L, {B::Electron}, {}, "6_0", "e"},
             MassValue::mev(0.51), 2, true},
            {{"nu_mu", "nu_mu", L, {B::NeutrinoZero}, {}, "7_0", "nu_mu"},
             MassValue::mev(0), 1, false},
            {{"nu_tau", "nu_tau", L, {B::NeutrinoZero}, {}, "8_0", "nu_tau"},
             MassValue::mev(0), 1, false},
            {{"muon", "mu", L, {B::Electron, B::NeutrinoZero}, {lep(7, 1)},
              "6_0 + 7_0 + 7_1", "e + nu_mu + mu_7"},
             MassValue::mev(105.6), 4, false},
            {{"tau", "tau", L, {B::Electron, B::NeutrinoZero}, {lep(7, 2)},
              "6_0 + 7_0 + 7_2", "e + nu_mu + tau_7"},
             MassValue::mev(1786), 4, false},
            {{"up_quark", "u", Q, {B::ThreeNeutrino, B::ThreeMuon}, {qrk(7, 1)},
              "5_0 + 7_0 + 7_1", "u_5 + q_7 + u_7"},
             MassValue::mev(330.8), 4, false},
            {{"down_quark", "d", Q, {B::ThreeElectron, B::ThreeMuon}, {qrk(7, 1)},
              "6_0 + 7_0 + 7_1", "d_6 + q_7 + d_7"},
             MassValue::mev(332.3), 4, false},
            {{"strange_quark", "s", Q, {B::ThreeElectron, B::ThreeMuon}, {qrk(7, 2)},
              "6_0 + 7_0 + 7_2", "d_6 + q_7 + s_7"},
             MassValue::mev(558), 3, false},
            {{"charm_quark", "c", Q, {B::ThreeNeutrino, B::ThreeMuon}, {qrk(7, 3)},
              "5_0 + 7_0 + 7_3", "u_5 + q_7 + c_7"},
             MassValue::mev(1701), 4, false},
            {{"bottom_quark", "b", Q, {B::ThreeElectron, B::ThreeMuon}, {qrk(7, 4)},
              "6_0 + 7_0 + 7_4", "d_6 + q_7 + b_7"},
             MassValue::mev(5318), 4, false},
            {{"top_quark", "t", Q, {B::ThreeNeutrino, B::ThreeMuon, B::LumpedD8},
              {qrk(7, 5)}, "5_0 + 7_0 + 7_5 + 8_0 + 8_2",
              "u_5 + q_7 + t_7 + q_8 + t_8"},
             MassValue::gev(176.5), 4, false},
        };
        std::vector<FermionComposition> comps;
        for (auto const& row : r)
        {
            comps.push_back(row.composition);
        }
        validate_table(comps);
        return r;
    }();
    return rows;
}

//! Look up a built-in row by name or symbol.
inline ReferenceRow const& find_fermion(std::string_view key)
{
    for (auto const& row : fermion_table())
    {
        if (row.composition.name == key || row.composition.symbol == key)
        {
            return row;
        }
    }
    throw InvalidInput("unknown fermion '" + std::string(key) + "'");
}

//---------------------------------------------------------------------------//
// Auxiliary bases
//---------------------------------------------------------------------------//

//! Lepton auxiliary base (3/2) B_6 = (3/2) M_e / alpha_e.
inline MassValue lepton_aux_base(ModelConstants const& c)
{
    return 1.5 * b6_mass(c);
}

/*!
 * The three per-(orbital, family) constants multiplying the quartic sum.
 *
 * The lepton base always follows from the constants; the quark base and the
 * lumped top contribution are absent until calibrated.
 */
class AuxBaseSet
{
  public:
    explicit AuxBaseSet(ModelConstants const& c,
                        std::optional<MassValue> quark_base_7 = {},
                        std::optional<MassValue> top_lump_8 = {})
        : lepton_base_7_(lepton_aux_base(c))
        , quark_base_7_(quark_base_7)
        , top_lump_8_(top_lump_8)
    {
        if (quark_base_7 && !(quark_base_7->in_mev() > 0))
        {
            throw InvalidInput("quark auxiliary base must be positive");
        }
        if (top_lump_8 && !(top_lump_8->in_mev() > 0))
        {
            throw InvalidInput("lumped D = 8 top contribution must be positive");
        }
    }

    MassValue const& lepton_base_7() const noexcept { return lepton_base_7_; }
    std::optional<MassValue> const& quark_base_7() const noexcept
    {
        return quark_base_7_;
    }
    std::optional<MassValue> const& top_lump_8() const noexcept { return top_lump_8_; }

    //! Base multiplying the quartic sum of an auxiliary term.
    MassValue base_for(AuxTerm const& t) const
    {
        if (t.orbital().value() == 7)
        {
            if (t.family() == Family::Lepton)
            {
                return lepton_base_7_;
            }
            if (quark_base_7_)
            {
                return *quark_base_7_;
            }
        }
        throw DataError("uncalibrated base for " + std::string(to_string(t.family()))
                        + " auxiliary orbital "
                        + std::to_string(t.orbital().value()));
    }

  private:
    MassValue lepton_base_7_;
    std::optional<MassValue> quark_base_7_;
    std::optional<MassValue> top_lump_8_;
};

//---------------------------------------------------------------------------//
// Mass formula
//---------------------------------------------------------------------------//

inline MassValue fermion_mass(FermionComposition const& comp,
                       AuxBaseSet const& bases,
                       ModelConstants const& c);

//! Mass of the muon from its composition; never uses a printed value.
inline MassValue computed_muon(AuxBaseSet const& bases, ModelConstants const& c)
{
    return fermion_mass(find_fermion("muon").composition, bases, c);
}

inline MassValue resolve(BaseTerm term, AuxBaseSet const& bases, ModelConstants const& c)
{
    switch (term)
    {
        case BaseTerm::NeutrinoZero:
        case BaseTerm::ThreeNeutrino:
            return MassValue::mev(0);
        case BaseTerm::Electron:
            return c.m_electron();
        case BaseTerm::ThreeElectron:
            return 3 * c.m_electron();
        case BaseTerm::ThreeMuon:
            return 3 * computed_muon(bases, c);
        case BaseTerm::LumpedD8:
            if (!bases.top_lump_8())
            {
                throw DataError("uncalibrated base: lumped D = 8 top contribution");
            }
            return *bases.top_lump_8();
    }
    throw InvalidInput("unknown base term");
}

//! Sum of base terms plus base(D, family) * sum_{k<=a} k^4 for each aux term.
inline MassValue fermion_mass(FermionComposition const& comp,
                              AuxBaseSet const& bases,
                              ModelConstants const& c)
{
    validate(comp);
    double total = 0;
    for (auto term : comp.base_terms)
    {
        total += resolve(term, bases, c).in_mev();
    }
    for (auto const& t : comp.aux_terms)
    {
        auto const q = quartic_sum<std::uint64_t>(t.a().value());
        total += bases.base_for(t).in_mev() * static_cast<double>(q);
    }
    return MassValue::mev(total);
}

//---------------------------------------------------------------------------//
// Calibration
//---------------------------------------------------------------------------//

namespace detail {
//! Fixed part and quartic multiplier of a row whose only aux term is (7, a).
inline std::pair<double, double>
quark_row_split(FermionComposition const& comp, ModelConstants const& c)
{
    if (comp.family != Family::Quark || comp.aux_terms.size() != 1
        || comp.aux_terms.front().orbital().value() != 7
        || std::find(comp.base_terms.begin(), comp.base_terms.end(), BaseTerm::LumpedD8)
               != comp.base_terms.end())
    {
        throw InvalidInput("'" + comp.symbol
                           + "' cannot anchor the quark base (need u, d, s, c or b)");
    }
    AuxBaseSet const leptons(c);
    double fixed = 0;
    for (auto term : comp.base_terms)
    {
        fixed += resolve(term, leptons, c).in_mev();
    }
    auto const q = quartic_sum<std::uint64_t>(comp.aux_terms.front().a().value());
    return {fixed, static_cast<double>(q)};
}
}  // namespace detail

/*!
 * Fit the quark auxiliary base on the given anchor rows.
 *
 * A single anchor is solved exactly: base = (target - fixed) / quartic_sum(a).
 * Several anchors are combined by least squares on relative residuals,
 * minimizing sum(((fixed_i + q_i base) - T_i) / T_i)^2.
 */
inline MassValue calibrate_quark_base_7(ModelConstants const& c,
                                        std::span<std::string const> anchors)
{
    if (anchors.empty())
    {
        throw InvalidInput("at least one anchor row is required");
    }
    std::set<std::string> seen;
    double num = 0;
    double den = 0;
    for (auto const& key : anchors)
    {
        auto const& row = find_fermion(key);
        if (!seen.insert(row.composition.name).second)
        {
            throw InvalidInput("anchor '" + key + "' given twice");
        }
        auto [fixed, q] = detail::quark_row_split(row.composition, c);
        double const target = row.reference.in_mev();
        double const w = 1 / (target * target);
        num += w * q * (target - fixed);
        den += w * q * q;
    }
    double const base = num / den;
    if (!(base > 0))
    {
        throw DataError("inconsistent calibration: non-positive quark base");
    }
    return MassValue::mev(base);
}

inline MassValue calibrate_quark_base_7(ModelConstants const& c)
{
    std::string const d[] = {"d"};
    return calibrate_quark_base_7(c, d);
}

//! Solve the top row for the lumped q_8 + t_8 contribution.
inline MassValue calibrate_top_lump(ModelConstants const& c, MassValue quark_base_7)
{
    auto const& top = find_fermion("top_quark");
    AuxBaseSet const partial(c, quark_base_7);
    double rest = 0;
    for (auto term : top.composition.base_terms)
    {
        if (term != BaseTerm::LumpedD8)
        {
            rest += resolve(term, partial, c).in_mev();
        }
    }
    for (auto const& t : top.composition.aux_terms)
    {
        rest += partial.base_for(t).in_mev()
                * static_cast<double>(quartic_sum<std::uint64_t>(t.a().value()));
    }
    double const lump = top.reference.in_mev() - rest;
    if (!(lump > 0))
    {
        throw DataError("inconsistent calibration: lumped D = 8 contribution is "
                        + format_shortest(lump) + " MeV");
    }
    return convert(MassValue::mev(lump), MassUnit::GeV);
}

struct Residual
{
    std::string name;
    double rel_error;
};

struct CalibrationResult
{
    AuxBaseSet bases;
    std::vector<std::string> anchors;          //!< quark anchor rows, by name
    std::vector<Residual> residuals;           //!< anchor rows, then the top row
    std::vector<Residual> non_anchor_residuals;  //!< held-out rows, table order
};

//! Calibrate the quark base on \c anchors, then the top lump; report residuals.
inline CalibrationResult calibrate(ModelConstants const& c,
                                   std::span<std::string const> anchors)
{
    auto const qb = calibrate_quark_base_7(c, anchors);
    auto const lump = calibrate_top_lump(c, qb);
    CalibrationResult result{AuxBaseSet(c, qb, lump), {}, {}, {}};
    for (auto const& key : anchors)
    {
        result.anchors.push_back(find_fermion(key).composition.name);
    }
    result.anchors.push_back("top_quark");
    for (auto const& name : result.anchors)
    {
        auto const& row = find_fermion(name);
        result.residuals.push_back(
            {name, relative_error(fermion_mass(row.composition, result.bases, c),
                                  row.reference)});
    }
    for (auto const& row : fermion_table())
    {
        auto const& name = row.composition.name;
        if (row.reference.in_mev() == 0
            || std::find(result.anchors.begin(), result.anchors.end(), name)
                   != result.anchors.end())
        {
            continue;
        }
        result.non_anchor_residuals.push_back(
            {name, relative_error(fermion_mass(row.composition, result.bases, c),
                                  row.reference)});
    }
    return result;
}

inline CalibrationResult calibrate(ModelConstants const& c)
{
    std::string const d[] = {"d"};
    return calibrate(c, d);
}

//---------------------------------------------------------------------------//
// Spectrum
//---------------------------------------------------------------------------//

struct SpectrumEntry
{
    std::string name;
    std::string symbol;
    Family family;
    MassValue mass;
    bool given;
};

//! Every built-in row evaluated with \c bases, in table order.
inline std::vector<SpectrumEntry>
full_spectrum(ModelConstants const& c, AuxBaseSet const& bases)
{
    std::vector<SpectrumEntry> out;
    for (auto const& row : fermion_table())
    {
        auto const& comp = row.composition;
        out.push_back({comp.name,
                       comp.symbol,
                       comp.family,
                       fermion_mass(comp, bases, c),
                       row.given});
    }
    return out;
}

//---------------------------------------------------------------------------//
// Calibration file
//---------------------------------------------------------------------------//

//! Contents of a calibration file: the two fitted constants.
struct CalibrationFile
{
    double quark_base_7_mev;
    double top_lump_8_gev;

    friend bool operator==(CalibrationFile const&, CalibrationFile const&) = default;

    static CalibrationFile from(AuxBaseSet const& bases)
    {
        if (!bases.quark_base_7() || !bases.top_lump_8())
        {
            throw DataError("uncalibrated base: nothing to export");
        }
        return {bases.quark_base_7()->in_mev(), bases.top_lump_8()->in_gev()};
    }

    AuxBaseSet bases(ModelConstants const& c) const
    {
        return AuxBaseSet(
            c, MassValue::mev(quark_base_7_mev), MassValue::gev(top_lump_8_gev));
    }
};

//! key=value text with 17 significant digits, so reading it back is lossless.
inline std::string write_calibration(CalibrationFile const& cal)
{
    std::string out = "# dimass calibration: quark auxiliary base (D = 7) and lumped"
                      " D = 8 top contribution\n";
    out += "quark_base_7_mev=" + format_exact(cal.quark_base_7_mev) + "\n";
    out += "top_lump_8_gev=" + format_exact(cal.top_lump_8_gev) + "\n";
    return out;
}

inline CalibrationFile read_calibration(std::string_view text)
{
    std::optional<double> quark;
    std::optional<double> lump;
    std::size_t line_no = 0;
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
        if (line.empty() || line.front() == '#')
        {
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            throw ParseError(line_no, 1, "expected key=value");
        }
        auto const key = line.substr(0, eq);
        auto const value = parse_double(line.substr(eq + 1));
        if (!value || !std::isfinite(*value))
        {
            throw ParseError(line_no, eq + 2, "expected a number");
        }
        std::optional<double>* slot = nullptr;
        if (key == "quark_base_7_mev")
        {
            slot = &quark;
        }
        else if (key == "top_lump_8_gev")
        {
            slot = &lump;
        }
        else
        {
            throw ParseError(line_no, 1, "unknown key '" + std::string(key) + "'");
        }
        if (*slot)
        {
            throw ParseError(line_no, 1, "duplicate key '" + std::string(key) + "'");
        }
        *slot = value;
    }
    if (!quark || !lump)
    {
        throw DataError("calibration file is missing "
                        + std::string(!quark ? "quark_base_7_mev" : "top_lump_8_gev"));
    }
    return {*quark, *lump};
}

}  // namespace dimass
